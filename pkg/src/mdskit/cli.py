"""Command-line front end for constructing and checking MDS/NMDS matrices.

Exit codes: 0 success, 1 bad input (parse or validation), 2 construction
condition violated, 3 self-check failed, 4 a cap was exceeded, 5 verify
saw a verdict other than the expected one.
"""

from __future__ import annotations

import argparse
import json
import random
import re
import sys
from typing import Optional

from .codes import (
    DEFAULT_MAX_LENGTH,
    DEFAULT_MAX_ORDER,
    VERDICTS,
    LinearCode,
    classify,
    dr_profile,
    ghw,
    is_mds_matrix,
    is_nmds_matrix,
    standard_generator,
)
from .construct import (
    DISC_TOKENS,
    XYSpec,
    check_subset_sums,
    construct_involutory,
    construct_mds,
    construct_nmds,
)
from .errors import (
    ConditionViolated,
    ExponentCollision,
    OrderTooLarge,
    ParseError,
    SelfCheckFailed,
    TooLarge,
)
from .gf import Field
from .matrix import FieldMatrix
from .recursive import (
    DEFAULT_MAX_SCAN_STEPS,
    THETA_VARIANTS,
    construct_theta_family,
    is_recursive_mds,
    is_recursive_nmds,
    parse_poly,
    scan_exponents,
)
from .report import write_report
from .vandermonde import GVandSpec, det_gvand_formula, gvand

SCHEMA = 1

EXIT_OK = 0
EXIT_PARSE = 1
EXIT_CONDITION = 2
EXIT_SELF_CHECK = 3
EXIT_TOO_LARGE = 4
EXIT_MISMATCH = 5

_RANGE_RE = re.compile(r"^(\d+)(?:\.\.(\d+))?$")


class _Parser(argparse.ArgumentParser):
    """argparse that reports usage problems through the exit-code map."""

    def error(self, message):
        raise ParseError(message)


def _parse_elements(field: Field, text: str):
    tokens = [t for t in re.split(r"[,\s]+", text.strip()) if t]
    if not tokens:
        raise ParseError("empty element list")
    return tuple(field.parse_element(t) for t in tokens)


def _parse_range(text: str) -> tuple[int, int]:
    hit = _RANGE_RE.match(text)
    if not hit:
        raise ParseError(f"bad exponent range {text!r}; expected M or LO..HI")
    lo = int(hit.group(1))
    hi = int(hit.group(2)) if hit.group(2) else lo
    return lo, hi


def _read_matrix(field: Field, path: str) -> FieldMatrix:
    with open(path) as handle:
        return FieldMatrix.from_text(field, handle.read())


def _matrix_payload(a: FieldMatrix) -> dict:
    fmt = a.field.format_element
    return {
        "k": a.k,
        "n": a.n,
        "rows": [[fmt(e) for e in a.row(i)] for i in range(a.k)],
    }


def _emit(args, payload: dict, lines: list[str]) -> None:
    if args.json:
        body = {"schema": SCHEMA, "command": args.command}
        body.update(payload)
        print(json.dumps(body, sort_keys=True))
    else:
        for line in lines:
            print(line)


def _witness_lines(witnesses) -> list[str]:
    return [
        f"witness {w['clause']}: columns {w['columns']}"
        for w in witnesses
    ]


def cmd_construct(args) -> int:
    field = Field.parse(args.field)
    x = _parse_elements(field, args.x)
    verify = not args.no_verify
    if args.family == "gvand":
        y = _parse_elements(field, args.y)
        spec = XYSpec(x, y, args.disc)
        census = check_subset_sums(spec.pool, spec.mode)
        if args.target == "mds":
            a = construct_mds(spec, verify=verify, swap=args.swap)
        else:
            a = construct_nmds(spec, verify=verify, swap=args.swap)
        extra = {
            "disc": args.disc,
            "swap": args.swap,
            "x": [field.format_element(e) for e in x],
            "y": [field.format_element(e) for e in y],
        }
    else:
        l = field.parse_element(args.l)
        a = construct_involutory(x, l, target=args.target, verify=verify)
        census = check_subset_sums(x + tuple(l + xi for xi in x), "sum")
        extra = {
            "l": field.format_element(l),
            "x": [field.format_element(e) for e in x],
            "involutory": a.is_involutory(),
        }
    rep = classify(standard_generator(a))
    payload = {
        "family": args.family,
        "field": str(field),
        "target": args.target,
        "verified": verify,
        "matrix": _matrix_payload(a),
        "census": census.to_dict(),
        "report": rep.to_dict(),
    }
    payload.update(extra)
    lines = [a.to_text(style=args.style)]
    lines.append(f"verdict: {rep.verdict} (d1={rep.d1}, d2={rep.d2})")
    if "involutory" in extra:
        lines.append(f"A@A == I: {extra['involutory']}")
    _emit(args, payload, lines)
    return EXIT_OK


def cmd_recursive(args) -> int:
    field = Field.parse(args.field)
    theta = field.parse_element(args.theta)
    lo, hi = _parse_range(args.m)
    if hi < lo:
        raise ParseError(f"empty exponent range {args.m!r}")
    poly = None
    table: dict[int, str] = {}
    details: dict[str, dict] = {}
    for m in range(lo, hi + 1):
        try:
            g, rep = construct_theta_family(theta, args.n, m, args.variant)
        except ExponentCollision:
            table[m] = "collision"
            continue
        poly = g
        table[m] = rep.verdict
        details[str(m)] = rep.to_dict()
    checked: dict[str, str] = {}
    if args.verify and poly is not None:
        for m, verdict in table.items():
            if verdict == "collision":
                continue
            mds = is_recursive_mds(poly, m).ok
            nmds = is_recursive_nmds(poly, m).ok
            checked[str(m)] = "MDS" if mds else "NMDS" if nmds else "neither"
            ok = (
                (verdict == "MDS-eligible" and mds and not nmds)
                or (verdict == "NMDS-eligible" and nmds and not mds)
                or (verdict == "ineligible" and not mds)
            )
            if not ok:
                raise SelfCheckFailed(
                    f"family verdict {verdict} but m={m} checked {checked[str(m)]}"
                )
    payload = {
        "variant": args.variant,
        "field": str(field),
        "theta": field.format_element(theta),
        "n": args.n,
        "m_lo": lo,
        "m_hi": hi,
        "poly": poly.to_dict() if poly is not None else None,
        "table": {str(m): v for m, v in table.items()},
        "details": details,
    }
    if args.verify:
        payload["checked"] = checked
    lines = [f"g: {poly}" if poly is not None else "g: (all exponents collide)"]
    for m in sorted(table):
        suffix = f" (checked: {checked[str(m)]})" if str(m) in checked else ""
        lines.append(f"m={m}: {table[m]}{suffix}")
    _emit(args, payload, lines)
    return EXIT_OK


def _load_code(args, field: Field) -> tuple[FieldMatrix, LinearCode]:
    a = _read_matrix(field, args.matrix)
    if args.view == "block":
        return a, standard_generator(a)
    return a, LinearCode(a)


def _classify_payload(args, field: Field) -> tuple[dict, list[str]]:
    a, code = _load_code(args, field)
    rep = classify(code, max_length=args.max_length)
    payload = {
        "field": str(field),
        "view": args.view,
        "max_length": args.max_length,
        "report": rep.to_dict(),
    }
    lines = [
        f"[{rep.n},{rep.k}] code: d1={rep.d1}, d2={rep.d2}, verdict {rep.verdict}"
    ]
    lines += _witness_lines(rep.to_dict()["witnesses"])
    if args.view == "block" and a.k == a.n:
        mds = is_mds_matrix(a, max_order=args.max_order)
        nmds = is_nmds_matrix(a, max_order=args.max_order)
        payload["mds_check"] = {
            "ok": mds.ok,
            "witnesses": [w.to_dict() for w in mds.witnesses],
        }
        payload["nmds_check"] = {
            "ok": nmds.ok,
            "witnesses": [w.to_dict() for w in nmds.witnesses],
        }
        lines.append(f"mds check: {mds.ok}")
        lines += _witness_lines(payload["mds_check"]["witnesses"])
        lines.append(f"nmds check: {nmds.ok}")
        lines += _witness_lines(payload["nmds_check"]["witnesses"])
    return payload, lines


def cmd_classify(args) -> int:
    field = Field.parse(args.field)
    payload, lines = _classify_payload(args, field)
    _emit(args, payload, lines)
    return EXIT_OK


def cmd_verify(args) -> int:
    field = Field.parse(args.field)
    payload, lines = _classify_payload(args, field)
    match = payload["report"]["verdict"] == args.expect
    payload["expected"] = args.expect
    payload["match"] = match
    lines.append(
        f"expected {args.expect}: {'match' if match else 'MISMATCH'}"
    )
    _emit(args, payload, lines)
    return EXIT_OK if match else EXIT_MISMATCH


def cmd_ghw(args) -> int:
    field = Field.parse(args.field)
    _, code = _load_code(args, field)
    if args.profile:
        profile = dr_profile(code, max_length=args.max_length)
        payload = {
            "field": str(field),
            "max_length": args.max_length,
            "profile": list(profile),
        }
        lines = [" ".join(f"d_{r + 1}={w}" for r, w in enumerate(profile))]
    else:
        res = ghw(code, args.r, max_length=args.max_length)
        payload = {
            "field": str(field),
            "max_length": args.max_length,
            "r": args.r,
            "weight": res.weight,
            "columns": list(res.columns),
        }
        lines = [f"d_{args.r} = {res.weight} (columns {res.columns})"]
    _emit(args, payload, lines)
    return EXIT_OK


def cmd_det(args) -> int:
    field = Field.parse(args.field)
    spec = GVandSpec.from_text(field, args.spec)
    formula = det_gvand_formula(spec)
    elimination = gvand(spec).det()
    match = formula == elimination
    payload = {
        "field": str(field),
        "spec": spec.to_text(),
        "exponents": list(spec.exponents),
        "formula": field.format_element(formula),
        "elimination": field.format_element(elimination),
        "match": match,
    }
    lines = [
        f"formula: {payload['formula']}",
        f"elimination: {payload['elimination']}",
        f"match: {match}",
    ]
    _emit(args, payload, lines)
    if not match:
        print("error: formula disagrees with elimination", file=sys.stderr)
        return EXIT_SELF_CHECK
    return EXIT_OK


def cmd_scan(args) -> int:
    field = Field.parse(args.field)
    g = parse_poly(field, args.poly)
    lo, hi = _parse_range(args.m)
    table = scan_exponents(g, lo, hi, max_steps=args.max_steps)
    rows = [{"m": m, "verdict": table[m]} for m in sorted(table)]
    payload = {
        "field": str(field),
        "poly": g.to_dict(),
        "max_steps": args.max_steps,
        "table": {str(m): v for m, v in table.items()},
    }
    lines = [f"m={row['m']}: {row['verdict']}" for row in rows]
    if args.report:
        files = write_report(
            args.report, ("m", "verdict"), rows, "m", "verdict",
            title=f"powers of companion({g}) over {field}",
        )
        payload["files"] = files
        lines.append(f"wrote {files['csv']} and {files['png']}")
    _emit(args, payload, lines)
    return EXIT_OK


def cmd_search(args) -> int:
    field = Field.parse(args.field)
    if field.q - 2 > args.max_thetas:
        raise TooLarge(
            f"{field.q - 2} candidate thetas exceed max_thetas={args.max_thetas}"
        )
    wanted: Optional[str] = None
    if args.target:
        wanted = "MDS-eligible" if args.target == "mds" else "NMDS-eligible"
    gen = field.primitive_element()
    candidates = []
    for k in range(1, field.q - 1):
        theta = gen**k
        try:
            _, rep = construct_theta_family(theta, args.n, args.m, args.family)
        except ExponentCollision:
            continue
        if wanted is None:
            if rep.verdict == "ineligible":
                continue
        elif rep.verdict != wanted:
            continue
        witness = rep.census.first_zero
        candidates.append(
            {
                "theta": field.format_element(theta),
                "dlog": k,
                "verdict": rep.verdict,
                "witness": list(witness) if witness is not None else None,
            }
        )
    spot = {"seed": args.seed, "sample": [], "ok": True}
    if args.spot_check and candidates:
        rng = random.Random(args.seed)
        picked = rng.sample(candidates, min(args.spot_check, len(candidates)))
        for cand in sorted(picked, key=lambda c: c["dlog"]):
            g, _ = construct_theta_family(
                gen ** cand["dlog"], args.n, args.m, args.family
            )
            mds = is_recursive_mds(g, args.m).ok
            nmds = is_recursive_nmds(g, args.m).ok
            checked = "MDS" if mds else "NMDS" if nmds else "neither"
            expected = "MDS" if cand["verdict"] == "MDS-eligible" else "NMDS"
            spot["sample"].append({"dlog": cand["dlog"], "checked": checked})
            if checked != expected:
                raise SelfCheckFailed(
                    f"theta dlog {cand['dlog']}: family says {cand['verdict']}"
                    f" but the column oracles say {checked}"
                )
    payload = {
        "family": args.family,
        "field": str(field),
        "n": args.n,
        "m": args.m,
        "target": args.target,
        "max_thetas": args.max_thetas,
        "candidates": candidates,
        "spot_check": spot,
    }
    lines = [
        "{theta} (dlog {dlog}): {verdict} witness={witness}".format(**c)
        for c in candidates
    ] or ["no candidates"]
    if spot["sample"]:
        lines.append(
            f"spot check (seed {args.seed}): {len(spot['sample'])} sampled, ok"
        )
    if args.report:
        rows = [
            {
                "theta": c["theta"],
                "dlog": c["dlog"],
                "verdict": c["verdict"],
                "witness": " ".join(str(i) for i in c["witness"] or ()),
            }
            for c in candidates
        ]
        files = write_report(
            args.report, ("theta", "dlog", "verdict", "witness"), rows,
            "dlog", "verdict",
            title=f"{args.family} candidates (n={args.n}, m={args.m}) over {field}",
        )
        payload["files"] = files
        lines.append(f"wrote {files['csv']} and {files['png']}")
    _emit(args, payload, lines)
    return EXIT_OK


def build_parser() -> _Parser:
    parser = _Parser(prog="mdskit", description=__doc__)
    common = _Parser(add_help=False)
    common.add_argument("--field", required=True, help='e.g. "GF(2^4;0x13)"')
    common.add_argument("--json", action="store_true", help="machine-readable output")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    construct = sub.add_parser("construct", help="build a matrix from a pool")
    csub = construct.add_subparsers(dest="family", required=True, parser_class=_Parser)
    gvand = csub.add_parser("gvand", parents=[common])
    gvand.add_argument("--x", required=True, help="comma-separated pool half")
    gvand.add_argument("--y", required=True, help="comma-separated pool half")
    gvand.add_argument("--disc", required=True, choices=DISC_TOKENS)
    gvand.add_argument("--target", required=True, choices=("mds", "nmds"))
    gvand.add_argument("--swap", action="store_true", help="build the inverse-order quotient")
    gvand.add_argument("--no-verify", action="store_true")
    gvand.add_argument("--style", default="power", choices=("power", "hex"))
    gvand.set_defaults(func=cmd_construct)
    invol = csub.add_parser("involutory", parents=[common])
    invol.add_argument("--x", required=True)
    invol.add_argument("--l", required=True, help="nonzero shift element")
    invol.add_argument("--target", required=True, choices=("mds", "nmds"))
    invol.add_argument("--no-verify", action="store_true")
    invol.add_argument("--style", default="power", choices=("power", "hex"))
    invol.set_defaults(func=cmd_construct)

    recursive = sub.add_parser("recursive", help="theta-power companion families")
    rsub = recursive.add_subparsers(dest="variant", required=True, parser_class=_Parser)
    for variant in THETA_VARIANTS:
        rp = rsub.add_parser(variant, parents=[common])
        rp.add_argument("--theta", required=True)
        rp.add_argument("--n", required=True, type=int)
        rp.add_argument("--m", required=True, help="exponent M or range LO..HI")
        rp.add_argument("--verify", action="store_true",
                        help="cross-check each verdict with the column oracles")
        rp.set_defaults(func=cmd_recursive)

    cls = sub.add_parser("classify", parents=[common], help="full d1/d2 verdict")
    ver = sub.add_parser("verify", parents=[common], help="classify and compare")
    weights = sub.add_parser("ghw", parents=[common], help="generalized Hamming weights")
    for p, default_view in ((cls, "block"), (ver, "block"), (weights, "generator")):
        p.add_argument("--matrix", required=True, help="path to a matrix text file")
        p.add_argument("--view", default=default_view, choices=("block", "generator"),
                       help="treat the file as the A of [I|A] or as a full generator")
        p.add_argument("--max-length", type=int, default=DEFAULT_MAX_LENGTH)
    for p in (cls, ver):
        p.add_argument("--max-order", type=int, default=DEFAULT_MAX_ORDER,
                       help="cap on the square-block minor/column scans")
    ver.add_argument("--expect", required=True, choices=VERDICTS)
    wmode = weights.add_mutually_exclusive_group(required=True)
    wmode.add_argument("--r", type=int, help="which weight d_r to compute")
    wmode.add_argument("--profile", action="store_true", help="all of d_1..d_k")
    cls.set_defaults(func=cmd_classify)
    ver.set_defaults(func=cmd_verify)
    weights.set_defaults(func=cmd_ghw)

    det = sub.add_parser("det", parents=[common],
                         help="generalized Vandermonde determinant, both routes")
    det.add_argument("--spec", required=True,
                     help='e.g. "x=[1,a^1,a^2,a^3]; I={3}"')
    det.set_defaults(func=cmd_det)

    scan = sub.add_parser("scan", parents=[common], help="verdict per companion power")
    scan.add_argument("--poly", required=True,
                      help="coefficients a_1,...,a_n, constant term first")
    scan.add_argument("--m", required=True, help="exponent M or range LO..HI")
    scan.add_argument("--max-steps", type=int, default=DEFAULT_MAX_SCAN_STEPS)
    scan.add_argument("--report", metavar="BASE", help="write BASE.csv and BASE.png")
    scan.set_defaults(func=cmd_scan)

    search = sub.add_parser("search", parents=[common], help="eligible thetas for a family")
    search.add_argument("--family", required=True, choices=THETA_VARIANTS)
    search.add_argument("--n", required=True, type=int)
    search.add_argument("--m", required=True, type=int)
    search.add_argument("--target", choices=("mds", "nmds"))
    search.add_argument("--max-thetas", type=int, default=4096)
    search.add_argument("--spot-check", type=int, default=5, metavar="N",
                        help="oracle-check N random survivors (0 disables)")
    search.add_argument("--seed", type=int, default=0,
                        help="seed for the spot-check sample")
    search.add_argument("--report", metavar="BASE", help="write BASE.csv and BASE.png")
    search.set_defaults(func=cmd_search)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except ConditionViolated as exc:
        print(f"error: {exc}", file=sys.stderr)
        if exc.witness is not None:
            print(f"witness: {json.dumps(exc.witness, sort_keys=True)}", file=sys.stderr)
        return EXIT_CONDITION
    except SelfCheckFailed as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SELF_CHECK
    except (TooLarge, OrderTooLarge) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_TOO_LARGE
    except (ValueError, ZeroDivisionError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
