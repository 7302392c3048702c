"""Dense matrices over a finite field, with exact elimination kernels.

Entries are stored as packed integers in a flat row-major list; the
``FieldElement`` objects appear only at the API boundary.  Elimination,
determinants and rank run directly on the packed values.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Optional, Sequence, Union

from .errors import (
    DimensionMismatch,
    FieldMismatch,
    IndexOutOfRange,
    NotSquare,
    OrderTooLarge,
    Singular,
)
from .gf import Field, FieldElement

Entry = Union[int, FieldElement]


def _det_raw(field: Field, vals: list[int], t: int) -> int:
    """Determinant of a t x t packed matrix; destroys vals."""
    mul, sub, inv, neg = field.mul_raw, field.sub_raw, field.inv_raw, field.neg_raw
    det = 1
    for col in range(t):
        pivot = next((r for r in range(col, t) if vals[r * t + col]), -1)
        if pivot < 0:
            return 0
        base_p = col * t
        if pivot != col:
            base_s = pivot * t
            for j in range(col, t):
                vals[base_s + j], vals[base_p + j] = vals[base_p + j], vals[base_s + j]
            det = neg(det)
        pv = vals[base_p + col]
        det = mul(det, pv)
        pinv = inv(pv)
        for r in range(col + 1, t):
            base_r = r * t
            f = vals[base_r + col]
            if f:
                fm = mul(f, pinv)
                vals[base_r + col] = 0
                for j in range(col + 1, t):
                    pj = vals[base_p + j]
                    if pj:
                        vals[base_r + j] = sub(vals[base_r + j], mul(fm, pj))
    return det


def _rref_raw(field: Field, vals: list[int], k: int, n: int) -> list[int]:
    """Reduce a k x n packed matrix in place; returns the pivot columns."""
    mul, sub, inv = field.mul_raw, field.sub_raw, field.inv_raw
    pivots: list[int] = []
    row = 0
    for col in range(n):
        pivot = next((r for r in range(row, k) if vals[r * n + col]), -1)
        if pivot < 0:
            continue
        base_r = row * n
        if pivot != row:
            base_s = pivot * n
            for j in range(col, n):
                vals[base_s + j], vals[base_r + j] = vals[base_r + j], vals[base_s + j]
        pinv = inv(vals[base_r + col])
        if pinv != 1:
            for j in range(col, n):
                if vals[base_r + j]:
                    vals[base_r + j] = mul(vals[base_r + j], pinv)
        for r in range(k):
            base_o = r * n
            f = vals[base_o + col]
            if r != row and f:
                for j in range(col, n):
                    pj = vals[base_r + j]
                    if pj:
                        vals[base_o + j] = sub(vals[base_o + j], mul(f, pj))
        pivots.append(col)
        row += 1
        if row == k:
            break
    return pivots


def _rank_raw(field: Field, vals: list[int], k: int, n: int) -> int:
    mul, sub, inv = field.mul_raw, field.sub_raw, field.inv_raw
    row = 0
    for col in range(n):
        pivot = next((r for r in range(row, k) if vals[r * n + col]), -1)
        if pivot < 0:
            continue
        base_r = row * n
        if pivot != row:
            base_s = pivot * n
            for j in range(col, n):
                vals[base_s + j], vals[base_r + j] = vals[base_r + j], vals[base_s + j]
        pinv = inv(vals[base_r + col])
        for r in range(row + 1, k):
            base_o = r * n
            f = vals[base_o + col]
            if f:
                fm = mul(f, pinv)
                vals[base_o + col] = 0
                for j in range(col + 1, n):
                    pj = vals[base_r + j]
                    if pj:
                        vals[base_o + j] = sub(vals[base_o + j], mul(fm, pj))
        row += 1
        if row == k:
            break
    return row


def _kernel_raw(field: Field, vals: list[int], k: int, n: int) -> list[list[int]]:
    """Basis of the right kernel, one flat length-n vector per free column."""
    pivots = _rref_raw(field, vals, k, n)
    pivot_set = set(pivots)
    basis = []
    for free in range(n):
        if free in pivot_set:
            continue
        vec = [0] * n
        vec[free] = 1
        for i, pc in enumerate(pivots):
            vec[pc] = field.neg_raw(vals[i * n + free])
        basis.append(vec)
    return basis


class FieldMatrix:
    """A k x n matrix over a single finite field."""

    def __init__(self, field: Field, rows: Iterable[Iterable[Entry]]):
        vals: list[int] = []
        n = -1
        k = 0
        for row in rows:
            packed_row = [self._pack(field, e) for e in row]
            if n < 0:
                n = len(packed_row)
            elif len(packed_row) != n:
                raise DimensionMismatch("rows have differing lengths")
            vals.extend(packed_row)
            k += 1
        if k == 0 or n <= 0:
            raise ValueError("matrix needs at least one row and one column")
        self.field = field
        self.k = k
        self.n = n
        self._v = vals

    @staticmethod
    def _pack(field: Field, e: Entry) -> int:
        if isinstance(e, FieldElement):
            if e.field != field:
                raise FieldMismatch("entry belongs to a different field")
            return e.packed
        if isinstance(e, int):
            if not 0 <= e < field.q:
                raise ValueError(f"packed entry {e} outside [0, {field.q})")
            return e
        raise TypeError(f"cannot use {type(e).__name__} as a matrix entry")

    @classmethod
    def from_packed(cls, field: Field, k: int, n: int, flat: Sequence[int]) -> "FieldMatrix":
        if len(flat) != k * n:
            raise DimensionMismatch("flat data does not match the shape")
        out = cls.__new__(cls)
        out.field = field
        out.k = k
        out.n = n
        out._v = list(flat)
        return out

    @classmethod
    def identity(cls, field: Field, n: int) -> "FieldMatrix":
        flat = [0] * (n * n)
        for i in range(n):
            flat[i * n + i] = 1
        return cls.from_packed(field, n, n, flat)

    @classmethod
    def zeros(cls, field: Field, k: int, n: int) -> "FieldMatrix":
        return cls.from_packed(field, k, n, [0] * (k * n))

    # -- access -------------------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return (self.k, self.n)

    @property
    def packed(self) -> tuple[int, ...]:
        """Row-major packed entries; the low-level accessor."""
        return tuple(self._v)

    def __getitem__(self, idx: tuple[int, int]) -> FieldElement:
        i, j = idx
        if not (0 <= i < self.k and 0 <= j < self.n):
            raise IndexOutOfRange(f"entry ({i}, {j}) outside {self.k}x{self.n}")
        return FieldElement(self.field, self._v[i * self.n + j])

    def row(self, i: int) -> tuple[FieldElement, ...]:
        if not 0 <= i < self.k:
            raise IndexOutOfRange(f"row {i} outside 0..{self.k - 1}")
        return tuple(
            FieldElement(self.field, v)
            for v in self._v[i * self.n : (i + 1) * self.n]
        )

    def col(self, j: int) -> tuple[FieldElement, ...]:
        if not 0 <= j < self.n:
            raise IndexOutOfRange(f"column {j} outside 0..{self.n - 1}")
        return tuple(
            FieldElement(self.field, self._v[i * self.n + j]) for i in range(self.k)
        )

    @property
    def entries(self) -> tuple[tuple[FieldElement, ...], ...]:
        return tuple(self.row(i) for i in range(self.k))

    # -- algebra --------------------------------------------------------------

    def __matmul__(self, other: "FieldMatrix") -> "FieldMatrix":
        if not isinstance(other, FieldMatrix):
            return NotImplemented
        if self.field != other.field:
            raise FieldMismatch("cannot multiply matrices over different fields")
        if self.n != other.k:
            raise DimensionMismatch(
                f"cannot multiply {self.k}x{self.n} by {other.k}x{other.n}"
            )
        k, n, m = self.k, self.n, other.n
        add, mul = self.field.add_raw, self.field.mul_raw
        out = [0] * (k * m)
        for i in range(k):
            base_a = i * n
            base_o = i * m
            for t in range(n):
                a = self._v[base_a + t]
                if a:
                    base_b = t * m
                    for j in range(m):
                        b = other._v[base_b + j]
                        if b:
                            out[base_o + j] = add(out[base_o + j], mul(a, b))
        return FieldMatrix.from_packed(self.field, k, m, out)

    def __pow__(self, e: int) -> "FieldMatrix":
        if self.k != self.n:
            raise NotSquare("matrix power needs a square matrix")
        if e < 0:
            return self.inv() ** (-e)
        acc = FieldMatrix.identity(self.field, self.n)
        base = self
        while e:
            if e & 1:
                acc = acc @ base
            base = base @ base
            e >>= 1
        return acc

    def transpose(self) -> "FieldMatrix":
        k, n = self.k, self.n
        flat = [self._v[i * n + j] for j in range(n) for i in range(k)]
        return FieldMatrix.from_packed(self.field, n, k, flat)

    def det(self) -> FieldElement:
        if self.k != self.n:
            raise NotSquare(f"determinant of a {self.k}x{self.n} matrix")
        return FieldElement(self.field, _det_raw(self.field, list(self._v), self.n))

    def rank(self) -> int:
        return _rank_raw(self.field, list(self._v), self.k, self.n)

    def inv(self) -> "FieldMatrix":
        if self.k != self.n:
            raise NotSquare(f"inverse of a {self.k}x{self.n} matrix")
        t = self.n
        aug = [0] * (t * 2 * t)
        for i in range(t):
            aug[i * 2 * t : i * 2 * t + t] = self._v[i * t : (i + 1) * t]
            aug[i * 2 * t + t + i] = 1
        pivots = _rref_raw(self.field, aug, t, 2 * t)
        if pivots != list(range(t)):
            raise Singular("matrix is singular")
        flat = []
        for i in range(t):
            flat.extend(aug[i * 2 * t + t : (i + 1) * 2 * t])
        return FieldMatrix.from_packed(self.field, t, t, flat)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "FieldMatrix":
        """Select rows and columns, kept in the order given."""
        if len(set(rows)) != len(rows) or len(set(cols)) != len(cols):
            raise ValueError("row and column selections must be duplicate-free")
        for i in rows:
            if not 0 <= i < self.k:
                raise IndexOutOfRange(f"row {i} outside 0..{self.k - 1}")
        for j in cols:
            if not 0 <= j < self.n:
                raise IndexOutOfRange(f"column {j} outside 0..{self.n - 1}")
        flat = [self._v[i * self.n + j] for i in rows for j in cols]
        return FieldMatrix.from_packed(self.field, len(rows), len(cols), flat)

    def hstack(self, other: "FieldMatrix") -> "FieldMatrix":
        if self.field != other.field:
            raise FieldMismatch("cannot stack matrices over different fields")
        if self.k != other.k:
            raise DimensionMismatch("row counts differ")
        flat = []
        for i in range(self.k):
            flat.extend(self._v[i * self.n : (i + 1) * self.n])
            flat.extend(other._v[i * other.n : (i + 1) * other.n])
        return FieldMatrix.from_packed(self.field, self.k, self.n + other.n, flat)

    def is_involutory(self) -> bool:
        if self.k != self.n:
            return False
        return (self @ self) == FieldMatrix.identity(self.field, self.n)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FieldMatrix):
            return NotImplemented
        return (
            self.field == other.field
            and self.k == other.k
            and self.n == other.n
            and self._v == other._v
        )

    def __hash__(self) -> int:
        return hash((self.field, self.k, self.n, tuple(self._v)))

    # -- text -----------------------------------------------------------------

    def to_text(self, style: str = "power", sep: str = " ") -> str:
        fmt = self.field.format_element
        return "\n".join(
            sep.join(fmt(e, style) for e in self.row(i)) for i in range(self.k)
        )

    @classmethod
    def from_text(cls, field: Field, text: str) -> "FieldMatrix":
        rows = []
        for line in text.splitlines():
            line = line.strip()
            if not line:
                continue
            rows.append([field.parse_element(tok) for tok in re.split(r"[,\s]+", line)])
        return cls(field, rows)

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        return f"<FieldMatrix {self.k}x{self.n} over {self.field}>"


@dataclass(frozen=True)
class MinorScanResult:
    """Outcome of the exhaustive square-submatrix scan."""

    all_nonsingular: bool
    witness_rows: Optional[tuple[int, ...]]
    witness_cols: Optional[tuple[int, ...]]
    census: Optional[dict[int, tuple[int, int]]] = None


def all_square_submatrices_nonsingular(
    a: FieldMatrix, max_order: int = 8, census: bool = False
) -> MinorScanResult:
    """Check every square submatrix of ``a`` for nonsingularity.

    Submatrices are enumerated by ascending order, then lexicographically by
    row and column sets, so the reported witness is deterministic.  With
    ``census=True`` the scan runs to completion and counts singular minors
    per order instead of stopping at the first hit.  The cost grows like
    binomial(2t, t); ``max_order`` guards against accidental blowups and can
    be raised explicitly.
    """
    t_max = min(a.k, a.n)
    if t_max > max_order:
        raise OrderTooLarge(
            f"minor scan of a {a.k}x{a.n} matrix exceeds max_order={max_order}; "
            "pass a larger max_order to force it"
        )
    field = a.field
    flat, n = a._v, a.n
    counts: dict[int, tuple[int, int]] = {}
    first: Optional[tuple[tuple[int, ...], tuple[int, ...]]] = None
    ok = True
    for t in range(1, t_max + 1):
        checked = singular = 0
        for rows in combinations(range(a.k), t):
            bases = [i * n for i in rows]
            for cols in combinations(range(a.n), t):
                checked += 1
                sub = [flat[b + j] for b in bases for j in cols]
                if _det_raw(field, sub, t) == 0:
                    singular += 1
                    ok = False
                    if first is None:
                        first = (rows, cols)
                    if not census:
                        return MinorScanResult(False, rows, cols)
        counts[t] = (checked, singular)
    if first is None:
        return MinorScanResult(True, None, None, counts if census else None)
    return MinorScanResult(False, first[0], first[1], counts)
