"""Plain and generalized Vandermonde matrices and their determinants.

A generalized Vandermonde matrix is determined by column entries
x = (x_1, ..., x_n) and a strictly increasing exponent sequence
T = (t_1, ..., t_n): its (i, j) entry is x_j ** t_i.  The complement of T
inside 0..max(T) is the set of skipped exponents ("gaps"); T recovers the
plain Vandermonde matrix exactly when there are no gaps.

The determinant factors as det(V(x)) * det(S) where V(x) is the plain
Vandermonde matrix and S is an s x s matrix of elementary symmetric
polynomials, s being the number of gaps.  Three gap patterns admit short
closed forms:

    gaps {n-1}    det(V) * (x_1 + ... + x_n)
    gaps {1}      det(V) * (prod x_i) * (sum 1/x_i)
    gaps {1, n}   det(V) * (prod x_i) * ((sum x_i) * (sum 1/x_i) - 1)

``det_gvand_formula`` evaluates whichever form applies; it never eliminates
the generalized matrix itself, which keeps it usable as an independent
cross-check against ``FieldMatrix.det``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Sequence

from .errors import DegreeOutOfRange, DivisionByZero, FieldMismatch, ParseError
from .gf import Field, FieldElement
from .matrix import FieldMatrix

_SPEC_RE = re.compile(
    r"^\s*x\s*=\s*\[([^\]]*)\]\s*(?:;\s*I\s*=\s*\{([^}]*)\}\s*)?$"
)


@dataclass(frozen=True)
class GVandSpec:
    """Column entries plus the exponent ladder of a generalized Vandermonde."""

    x: tuple[FieldElement, ...]
    exponents: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "x", tuple(self.x))
        object.__setattr__(self, "exponents", tuple(self.exponents))
        if not self.x:
            raise ValueError("need at least one column entry")
        field = self.x[0].field
        if any(e.field != field for e in self.x):
            raise FieldMismatch("column entries from different fields")
        t = self.exponents
        if len(t) != len(self.x):
            raise ValueError("need exactly one exponent per column entry")
        if t[0] < 0 or any(t[i] >= t[i + 1] for i in range(len(t) - 1)):
            raise ValueError("exponents must be strictly increasing and nonnegative")

    @classmethod
    def from_gaps(cls, x: Sequence[FieldElement], gaps: Sequence[int]) -> "GVandSpec":
        """Build the exponent ladder 0..n+s-1 with the given s exponents removed."""
        gap_set = set(gaps)
        if len(gap_set) != len(gaps):
            raise ValueError("gaps must be distinct")
        top = len(x) + len(gap_set)
        if any(not 0 <= g < top for g in gap_set):
            raise ValueError(f"gaps must lie in 0..{top - 1}")
        return cls(tuple(x), tuple(e for e in range(top) if e not in gap_set))

    @property
    def n(self) -> int:
        return len(self.x)

    @property
    def field(self) -> Field:
        return self.x[0].field

    @property
    def gaps(self) -> tuple[int, ...]:
        present = set(self.exponents)
        return tuple(e for e in range(self.exponents[-1] + 1) if e not in present)

    @classmethod
    def from_text(cls, field: Field, text: str) -> "GVandSpec":
        """Parse the spec grammar ``x=[e1,e2,...]; I={l1,l2}``.

        Entries use the element grammar of ``field``; the ``I={...}`` part
        lists skipped exponents and may be empty or absent.
        """
        hit = _SPEC_RE.match(text)
        if not hit:
            raise ParseError(f"bad spec {text!r}; expected 'x=[...]; I={{...}}'")
        entries = [t for t in re.split(r"[,\s]+", hit.group(1).strip()) if t]
        if not entries:
            raise ParseError("spec needs at least one column entry")
        x = tuple(field.parse_element(t) for t in entries)
        gap_tokens = [t for t in re.split(r"[,\s]+", (hit.group(2) or "").strip()) if t]
        try:
            gaps = tuple(int(t) for t in gap_tokens)
        except ValueError:
            raise ParseError(f"gaps must be integers, got {gap_tokens!r}") from None
        return cls.from_gaps(x, gaps)

    def to_text(self) -> str:
        fmt = self.field.format_element
        xs = ",".join(fmt(e) for e in self.x)
        gs = ",".join(str(g) for g in self.gaps)
        return f"x=[{xs}]; I={{{gs}}}"


def vand(x: Sequence[FieldElement]) -> FieldMatrix:
    """Plain Vandermonde matrix: row i holds x_j ** i for i in 0..n-1."""
    xs = tuple(x)
    return FieldMatrix(xs[0].field, [[xj**i for xj in xs] for i in range(len(xs))])


def gvand(spec: GVandSpec) -> FieldMatrix:
    """Generalized Vandermonde matrix: row i holds x_j ** t_i."""
    return FieldMatrix(
        spec.field, [[xj**t for xj in spec.x] for t in spec.exponents]
    )


def sigma(d: int, x: Sequence[FieldElement]) -> FieldElement:
    """Elementary symmetric polynomial of degree d in the entries of x."""
    xs = tuple(x)
    n = len(xs)
    if not 0 <= d <= n:
        raise DegreeOutOfRange(
            f"symmetric polynomial degree {d} outside 0..{n}"
        )
    field = xs[0].field
    # e[j] accumulates sigma_j of the prefix processed so far.
    e = [field.one] + [field.zero] * d
    for xi in xs:
        for j in range(min(d, n), 0, -1):
            e[j] = e[j] + e[j - 1] * xi
    return e[d]


def vand_det(x: Sequence[FieldElement]) -> FieldElement:
    """Product of pairwise differences; the plain Vandermonde determinant."""
    xs = tuple(x)
    out = xs[0].field.one
    for i in range(len(xs)):
        for j in range(i + 1, len(xs)):
            out = out * (xs[j] - xs[i])
    return out


def _sum(field: Field, items) -> FieldElement:
    acc = field.zero
    for it in items:
        acc = acc + it
    return acc


def _prod(field: Field, items) -> FieldElement:
    acc = field.one
    for it in items:
        acc = acc * it
    return acc


def det_gvand_formula(spec: GVandSpec) -> FieldElement:
    """Determinant of gvand(spec) via the factored form, not elimination.

    Repeated column entries short-circuit to zero.  The closed forms for
    gaps {1} and {1, n} divide by the entries, so a zero entry raises
    DivisionByZero there; every other gap pattern goes through the
    symmetric-polynomial matrix S, which tolerates zeros.
    """
    field = spec.field
    xs = spec.x
    n = spec.n
    if len({e.packed for e in xs}) != n:
        return field.zero
    base = vand_det(xs)
    gaps = spec.gaps
    if not gaps:
        return base
    if gaps == (n - 1,):
        return base * _sum(field, xs)
    if gaps == (1,):
        if any(e.packed == 0 for e in xs):
            raise DivisionByZero("closed form for gaps {1} inverts every entry")
        return _prod(field, xs) * base * _sum(field, (e.inv() for e in xs))
    if gaps == (1, n):
        if any(e.packed == 0 for e in xs):
            raise DivisionByZero("closed form for gaps {1, n} inverts every entry")
        s1 = _sum(field, xs)
        s1i = _sum(field, (e.inv() for e in xs))
        return base * _prod(field, xs) * (s1 * s1i - field.one)
    # General case: det(S) with S_ij = sigma_(n - l_i + j) over 0 <= i, j < s,
    # where degrees outside 0..n contribute zero.
    s = len(gaps)
    rows = []
    for li in gaps:
        row = []
        for j in range(s):
            d = n - li + j
            row.append(sigma(d, xs) if 0 <= d <= n else field.zero)
        rows.append(row)
    return base * FieldMatrix(field, rows).det()
