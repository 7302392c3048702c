"""Render verdict tables to a CSV file plus a PNG strip chart.

The CSV carries the exact rows the command printed; the PNG is a color
strip with one cell per row so long scans can be eyeballed at a glance.
matplotlib is imported lazily so library users without it only pay when
they ask for a rendering.
"""

from __future__ import annotations

import csv
from typing import Sequence

VERDICT_COLORS = {
    "MDS": "#2f9e44",
    "NMDS": "#f08c00",
    "neither": "#adb5bd",
    "MDS-eligible": "#2f9e44",
    "NMDS-eligible": "#f08c00",
    "ineligible": "#adb5bd",
    "collision": "#e03131",
}
_FALLBACK_COLOR = "#74c0fc"


def write_csv(path: str, fieldnames: Sequence[str], rows: Sequence[dict]) -> None:
    with open(path, "w", newline="") as handle:
        writer = csv.DictWriter(handle, fieldnames=list(fieldnames))
        writer.writeheader()
        for row in rows:
            writer.writerow(row)


def write_verdict_strip(
    path: str,
    labels: Sequence[str],
    verdicts: Sequence[str],
    title: str,
) -> None:
    if len(labels) != len(verdicts):
        raise ValueError("need one verdict per label")
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
    from matplotlib.patches import Patch

    count = max(len(labels), 1)
    fig, ax = plt.subplots(figsize=(max(4.0, 0.4 * count + 1.5), 2.0))
    for i, verdict in enumerate(verdicts):
        color = VERDICT_COLORS.get(verdict, _FALLBACK_COLOR)
        ax.add_patch(plt.Rectangle((i, 0), 1, 1, facecolor=color, edgecolor="white"))
    ax.set_xlim(0, count)
    ax.set_ylim(0, 1)
    ax.set_yticks([])
    step = max(1, count // 24)
    ax.set_xticks([i + 0.5 for i in range(0, count, step)])
    ax.set_xticklabels(
        [str(labels[i]) for i in range(0, count, step)], fontsize=8, rotation=90
    )
    ax.set_title(title, fontsize=10)
    seen: list[str] = []
    for verdict in verdicts:
        if verdict not in seen:
            seen.append(verdict)
    ax.legend(
        handles=[
            Patch(facecolor=VERDICT_COLORS.get(v, _FALLBACK_COLOR), label=v)
            for v in seen
        ],
        loc="upper left",
        bbox_to_anchor=(1.01, 1.0),
        fontsize=8,
        frameon=False,
    )
    fig.savefig(path, dpi=120, bbox_inches="tight")
    plt.close(fig)


def write_report(
    base: str,
    fieldnames: Sequence[str],
    rows: Sequence[dict],
    label_key: str,
    verdict_key: str,
    title: str,
) -> dict:
    """Write BASE.csv and BASE.png; returns {"csv": ..., "png": ...}."""
    csv_path = base + ".csv"
    png_path = base + ".png"
    write_csv(csv_path, fieldnames, rows)
    write_verdict_strip(
        png_path,
        [row[label_key] for row in rows],
        [row[verdict_key] for row in rows],
        title,
    )
    return {"csv": csv_path, "png": png_path}
