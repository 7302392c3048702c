"""Linear-code analysis: distances, weight hierarchy and MDS/NMDS verdicts.

Everything here is exhaustive and construction-agnostic on purpose: these
routines are the oracles that constructed matrices are checked against, so
they must not share logic with the constructions.  Two independent routes
exist for the minimum distance (dependent parity-check columns vs plain
codeword enumeration), and the matrix-level MDS/NMDS tests work on generator
columns rather than submatrix determinants.

Verdicts for a code of length n and dimension k:

    MDS        d1 = n - k + 1
    NMDS       d1 = n - k and d2 = n - k + 2
    AMDS_only  d1 = n - k but d2 = n - k + 1
    OTHER      d1 < n - k

Witnesses carry 0-based column index sets and are deterministic: subsets are
always enumerated in lexicographic order, sizes ascending.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Optional

from .errors import (
    NotSquare,
    NotStandardForm,
    OrderTooLarge,
    RankOutOfRange,
    TooLarge,
)
from .gf import Field, FieldElement
from .matrix import FieldMatrix, _kernel_raw, _rank_raw

VERDICTS = ("MDS", "NMDS", "AMDS_only", "OTHER")

DEFAULT_MAX_ORDER = 8
DEFAULT_MAX_CODEWORDS = 1 << 24
DEFAULT_MAX_LENGTH = 24


@dataclass(frozen=True)
class ClauseWitness:
    """A named clause outcome with the 0-based columns that decide it."""

    clause: str
    columns: tuple[int, ...]

    def to_dict(self) -> dict:
        return {"clause": self.clause, "columns": list(self.columns)}


@dataclass(frozen=True)
class CheckResult:
    ok: bool
    witnesses: tuple[ClauseWitness, ...] = ()


@dataclass(frozen=True)
class DistanceResult:
    distance: int
    codeword: tuple[FieldElement, ...]


@dataclass(frozen=True)
class GhwResult:
    weight: int
    columns: tuple[int, ...]


@dataclass(frozen=True)
class CodeReport:
    n: int
    k: int
    d1: int
    d2: Optional[int]
    verdict: str
    witnesses: tuple[ClauseWitness, ...] = ()

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "d1": self.d1,
            "d2": self.d2,
            "verdict": self.verdict,
            "witnesses": [w.to_dict() for w in self.witnesses],
        }


class LinearCode:
    """A linear block code given by a full-row-rank generator matrix."""

    def __init__(self, generator: FieldMatrix):
        if generator.rank() != generator.k:
            raise ValueError("generator matrix must have full row rank")
        self.generator = generator

    @property
    def field(self) -> Field:
        return self.generator.field

    @property
    def n(self) -> int:
        return self.generator.n

    @property
    def k(self) -> int:
        return self.generator.k

    def is_standard_form(self) -> bool:
        g = self.generator
        return all(
            g._v[i * g.n + j] == (1 if i == j else 0)
            for i in range(g.k)
            for j in range(g.k)
        )

    def dual(self) -> "LinearCode":
        """The dual code, generated by a kernel basis of the generator."""
        if self.k == self.n:
            raise ValueError("the full space has an empty dual")
        basis = _kernel_raw(self.field, list(self.generator._v), self.k, self.n)
        flat = [v for row in basis for v in row]
        h = FieldMatrix.from_packed(self.field, self.n - self.k, self.n, flat)
        return LinearCode(h)

    def __repr__(self) -> str:
        return f"<LinearCode [{self.n},{self.k}] over {self.field}>"


def standard_generator(a: FieldMatrix) -> LinearCode:
    """The code generated by [I | A]."""
    return LinearCode(FieldMatrix.identity(a.field, a.k).hstack(a))


def parity_check(code: LinearCode) -> FieldMatrix:
    """[-A^T | I] for a standard-form generator [I | A]."""
    if code.k == code.n:
        raise NotStandardForm("a full-space code has no parity-check matrix")
    if not code.is_standard_form():
        raise NotStandardForm("generator is not of the form [I | A]")
    g = code.generator
    n, k = code.n, code.k
    a_t_neg = [
        [code.field.neg_raw(g._v[i * n + k + j]) for i in range(k)]
        for j in range(n - k)
    ]
    left = FieldMatrix.from_packed(
        code.field, n - k, k, [v for row in a_t_neg for v in row]
    )
    return left.hstack(FieldMatrix.identity(code.field, n - k))


def _h_matrix(code: LinearCode) -> Optional[FieldMatrix]:
    """Some deterministic parity-check matrix; None for the full space."""
    if code.k == code.n:
        return None
    if code.is_standard_form():
        return parity_check(code)
    return code.dual().generator


def _cols_flat(m: FieldMatrix, cols: tuple[int, ...]) -> list[int]:
    n = m.n
    return [m._v[i * n + j] for i in range(m.k) for j in cols]


def _cols_rank(field: Field, m: Optional[FieldMatrix], cols: tuple[int, ...]) -> int:
    if m is None:
        return 0
    return _rank_raw(field, _cols_flat(m, cols), m.k, len(cols))


def min_distance(
    code: LinearCode,
    method: str = "columns",
    max_codewords: int = DEFAULT_MAX_CODEWORDS,
) -> DistanceResult:
    """Minimum distance plus a codeword attaining it.

    ``columns`` finds the smallest dependent set of parity-check columns;
    ``codewords`` enumerates all q**k codewords (capped); ``both`` runs the
    two and insists they agree.
    """
    if method == "both":
        a = min_distance(code, "columns")
        b = min_distance(code, "codewords", max_codewords)
        if a.distance != b.distance:
            raise RuntimeError(
                f"distance routes disagree: columns={a.distance} codewords={b.distance}"
            )
        return a
    if method == "columns":
        return _min_distance_columns(code)
    if method == "codewords":
        return _min_distance_codewords(code, max_codewords)
    raise ValueError(f"unknown method {method!r}")


def _min_distance_columns(code: LinearCode) -> DistanceResult:
    field = code.field
    h = _h_matrix(code)
    if h is None:
        cw = [0] * code.n
        cw[0] = 1
        return DistanceResult(1, tuple(FieldElement(field, v) for v in cw))
    for t in range(1, code.n - code.k + 2):
        for cols in combinations(range(code.n), t):
            flat = _cols_flat(h, cols)
            if _rank_raw(field, list(flat), h.k, t) < t:
                kern = _kernel_raw(field, flat, h.k, t)
                vec = kern[0]
                cw = [0] * code.n
                for j, c in zip(cols, vec):
                    cw[j] = c
                return DistanceResult(t, tuple(FieldElement(field, v) for v in cw))
    raise AssertionError("unreachable: some n-k+1 columns are always dependent")


def _min_distance_codewords(code: LinearCode, max_codewords: int) -> DistanceResult:
    field, g = code.field, code.generator
    k, n, q = code.k, code.n, field.q
    if q**k > max_codewords:
        raise TooLarge(
            f"codeword enumeration needs q^k = {q**k} > {max_codewords} words"
        )
    add = field.add_raw
    # scaled[i][s] is s times row i, so inner loops only add.
    scaled = [
        [[field.mul_raw(s, v) for v in g._v[i * n : (i + 1) * n]] for s in range(q)]
        for i in range(k)
    ]
    best_w = n + 1
    best_cw: Optional[tuple[int, ...]] = None

    def descend(i: int, partial: list[int]) -> None:
        nonlocal best_w, best_cw
        if i == k:
            w = sum(1 for v in partial if v)
            if 0 < w < best_w:
                best_w, best_cw = w, tuple(partial)
            return
        rows = scaled[i]
        descend(i + 1, partial)
        for s in range(1, q):
            row = rows[s]
            descend(i + 1, [add(partial[j], row[j]) for j in range(n)])

    descend(0, [0] * n)
    assert best_cw is not None
    return DistanceResult(best_w, tuple(FieldElement(field, v) for v in best_cw))


def ghw(
    code: LinearCode,
    r: int,
    max_length: int = DEFAULT_MAX_LENGTH,
    _start: Optional[int] = None,
) -> GhwResult:
    """r-th generalized Hamming weight: the smallest support of an
    r-dimensional subcode, found as the smallest column set whose size
    exceeds its parity-check rank by at least r."""
    if not 1 <= r <= code.k:
        raise RankOutOfRange(f"weight index {r} outside 1..{code.k}")
    if code.n > max_length:
        raise TooLarge(
            f"weight hierarchy scan over length {code.n} > {max_length} columns"
        )
    field = code.field
    h = _h_matrix(code)
    for t in range(max(r, _start or r), code.n + 1):
        for cols in combinations(range(code.n), t):
            if t - _cols_rank(field, h, cols) >= r:
                return GhwResult(t, cols)
    raise AssertionError("unreachable: the full support always has deficit k")


def dr_profile(code: LinearCode, max_length: int = DEFAULT_MAX_LENGTH) -> tuple[int, ...]:
    """The full weight hierarchy d_1 < d_2 < ... < d_k, invariants asserted."""
    out: list[int] = []
    prev = 0
    for r in range(1, code.k + 1):
        res = ghw(code, r, max_length, _start=prev + 1 if out else None)
        if res.weight <= prev:
            raise AssertionError("weight hierarchy must increase strictly")
        if res.weight > code.n - code.k + r:
            raise AssertionError("weight hierarchy exceeds the Singleton bound")
        prev = res.weight
        out.append(prev)
    return tuple(out)


def classify(
    code: LinearCode,
    max_length: int = DEFAULT_MAX_LENGTH,
) -> CodeReport:
    """Distance-based verdict with supporting column sets."""
    n, k = code.n, code.k
    d1res = _min_distance_columns(code)
    d1 = d1res.distance
    d1_cols = tuple(j for j, e in enumerate(d1res.codeword) if e.packed)
    witnesses = [ClauseWitness("d1_support", d1_cols)]
    d2 = None
    if k >= 2:
        d2res = ghw(code, 2, max_length, _start=d1 + 1)
        d2 = d2res.weight
        witnesses.append(ClauseWitness("d2_support", d2res.columns))
        if not d1 < d2 <= n - k + 2:
            raise AssertionError("weight hierarchy out of bounds")
    if d1 == n - k + 1:
        verdict = "MDS"
    elif d1 == n - k and k >= 2 and d2 == n - k + 2:
        verdict = "NMDS"
    elif d1 == n - k:
        verdict = "AMDS_only"
    else:
        verdict = "OTHER"
    return CodeReport(n, k, d1, d2, verdict, tuple(witnesses))


def is_mds_matrix(a: FieldMatrix, max_order: int = DEFAULT_MAX_ORDER) -> CheckResult:
    """MDS test through generator columns: every k columns of [I | A]
    must be independent.  Deliberately distinct from the submatrix scan."""
    if max(a.k, a.n) > max_order:
        raise OrderTooLarge(
            f"k-column scan for a {a.k}x{a.n} block exceeds max_order={max_order}"
        )
    field = a.field
    g = FieldMatrix.identity(field, a.k).hstack(a)
    k = a.k
    for cols in combinations(range(g.n), k):
        if _rank_raw(field, _cols_flat(g, cols), k, k) < k:
            return CheckResult(False, (ClauseWitness("dependent_k_columns", cols),))
    return CheckResult(True)


def _nmds_three_clauses(field: Field, m: FieldMatrix, k: int) -> CheckResult:
    for cols in combinations(range(m.n), k - 1):
        if _rank_raw(field, _cols_flat(m, cols), m.k, k - 1) < k - 1:
            return CheckResult(
                False, (ClauseWitness("dependent_k_minus_1_columns", cols),)
            )
    dep: Optional[tuple[int, ...]] = None
    for cols in combinations(range(m.n), k):
        if _rank_raw(field, _cols_flat(m, cols), m.k, k) < k:
            dep = cols
            break
    if dep is None:
        return CheckResult(False, (ClauseWitness("all_k_columns_independent", ()),))
    for cols in combinations(range(m.n), k + 1):
        if _rank_raw(field, _cols_flat(m, cols), m.k, k + 1) < k:
            return CheckResult(
                False, (ClauseWitness("deficient_k_plus_1_columns", cols),)
            )
    return CheckResult(True, (ClauseWitness("dependent_k_columns", dep),))


def is_nmds_matrix(
    a: FieldMatrix, side: str = "generator", max_order: int = DEFAULT_MAX_ORDER
) -> CheckResult:
    """Three-clause NMDS test on a square block.

    With M = [I | A] (side "generator") or M = [-A^T | I] (side "parity"),
    the code is NMDS iff every n-1 columns of M are independent, some n
    columns are dependent, and every n+1 columns have full rank n.  On
    success the witness is the first dependent n-column set; on failure it
    names the violated clause.
    """
    if a.k != a.n:
        raise NotSquare("the three-clause test applies to square blocks")
    if a.n > max_order:
        raise OrderTooLarge(
            f"three-clause scan at order {a.n} exceeds max_order={max_order}"
        )
    field = a.field
    n = a.n
    if side == "generator":
        m = FieldMatrix.identity(field, n).hstack(a)
    elif side == "parity":
        neg_at = [
            [field.neg_raw(a._v[i * n + j]) for i in range(n)] for j in range(n)
        ]
        left = FieldMatrix.from_packed(field, n, n, [v for row in neg_at for v in row])
        m = left.hstack(FieldMatrix.identity(field, n))
    else:
        raise ValueError(f"unknown side {side!r}")
    return _nmds_three_clauses(field, m, n)


def dual_transpose_check(
    a: FieldMatrix, max_length: int = DEFAULT_MAX_LENGTH
) -> dict:
    """Verdicts of [I | A], [I | A^T] and the dual code, plus agreement."""
    base = classify(standard_generator(a), max_length)
    transposed = classify(standard_generator(a.transpose()), max_length)
    dual = classify(standard_generator(a).dual(), max_length)
    return {
        "matrix": base.verdict,
        "transpose": transposed.verdict,
        "dual": dual.verdict,
        "agree": base.verdict == transposed.verdict == dual.verdict,
    }
