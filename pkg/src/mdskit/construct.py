"""MDS and NMDS matrices as quotients of generalized Vandermonde factors.

Take 2n pairwise distinct field elements, split them as x (first n) and y
(last n), build the generalized Vandermonde matrices V1 = V(x), V2 = V(y)
with a common gap pattern, and form A = V1^-1 V2.  Whether A is MDS or NMDS
is decided entirely by a family of subset functionals over the pool, one
functional per gap pattern:

    gap "n-1"   sum of the subset
    gap "1"     sum of inverses of the subset
    gap "1,n"   (sum) * (sum of inverses) - 1

A is MDS when the functional is nonzero on every n-subset of the pool, and
(for gaps "n-1" and "1") NMDS when the two designated halves x and y are
nonzero but some other n-subset vanishes.  ``check_subset_sums`` scans all
binomial(2n, n) subsets with running partial aggregates; the constructors
consult it first and then re-verify their output against the column-level
oracles in ``codes``, which share no logic with this module.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Optional, Sequence

from .codes import is_mds_matrix, is_nmds_matrix
from .errors import (
    ConditionViolated,
    DivisionByZero,
    NotCharTwo,
    OddOrder,
    SelfCheckFailed,
    Singular,
    SingularFactor,
)
from .gf import Field, FieldElement
from .matrix import FieldMatrix
from .vandermonde import GVandSpec, gvand

DISC_TOKENS = ("n-1", "1", "1,n")

MODE_SUM = "sum"
MODE_INV_SUM = "inv_sum"
MODE_PRODUCT_FORM = "product_form"
MODES = (MODE_SUM, MODE_INV_SUM, MODE_PRODUCT_FORM)

_DISC_TO_MODE = {"n-1": MODE_SUM, "1": MODE_INV_SUM, "1,n": MODE_PRODUCT_FORM}


def disc_gaps(disc: str, n: int) -> tuple[int, ...]:
    """The skipped exponents selected by a disc token, for order n."""
    if disc == "n-1":
        return (n - 1,)
    if disc == "1":
        return (1,)
    if disc == "1,n":
        return (1, n)
    raise ValueError(f"unknown disc token {disc!r}; expected one of {DISC_TOKENS}")


@dataclass(frozen=True)
class XYSpec:
    """The two element tuples and the gap pattern of a quotient construction."""

    x: tuple[FieldElement, ...]
    y: tuple[FieldElement, ...]
    disc: str

    def __post_init__(self):
        object.__setattr__(self, "x", tuple(self.x))
        object.__setattr__(self, "y", tuple(self.y))
        if self.disc not in DISC_TOKENS:
            raise ValueError(f"unknown disc token {self.disc!r}; expected one of {DISC_TOKENS}")
        if len(self.x) != len(self.y):
            raise ValueError("x and y must have the same length")
        if len(self.x) < 2:
            raise ValueError("need order n >= 2")
        field = self.x[0].field
        if any(e.field != field for e in self.x + self.y):
            raise ValueError("all pool elements must come from one field")
        packed = [e.packed for e in self.x + self.y]
        if len(set(packed)) != len(packed):
            raise ValueError("the 2n pool elements must be pairwise distinct")
        if self.disc != "n-1" and any(v == 0 for v in packed):
            raise ValueError(f"disc {self.disc!r} inverts pool elements; zero not allowed")

    @property
    def n(self) -> int:
        return len(self.x)

    @property
    def field(self) -> Field:
        return self.x[0].field

    @property
    def pool(self) -> tuple[FieldElement, ...]:
        return self.x + self.y

    @property
    def mode(self) -> str:
        return _DISC_TO_MODE[self.disc]

    @property
    def gaps(self) -> tuple[int, ...]:
        return disc_gaps(self.disc, self.n)


@dataclass(frozen=True)
class ConditionReport:
    """Census of the subset functional over all n-subsets of the pool."""

    mode: str
    n: int
    total_subsets: int
    zero_count: int
    first_zero: Optional[tuple[int, ...]]
    first_zero_elements: Optional[tuple[str, ...]]
    designated_nonzero: bool

    @property
    def mds_eligible(self) -> bool:
        return self.zero_count == 0

    @property
    def nmds_eligible(self) -> bool:
        return self.designated_nonzero and self.zero_count > 0

    def to_dict(self) -> dict:
        return {
            "mode": self.mode,
            "n": self.n,
            "total_subsets": self.total_subsets,
            "zero_count": self.zero_count,
            "first_zero": list(self.first_zero) if self.first_zero else None,
            "first_zero_elements": (
                list(self.first_zero_elements) if self.first_zero_elements else None
            ),
            "designated_nonzero": self.designated_nonzero,
            "mds_eligible": self.mds_eligible,
            "nmds_eligible": self.nmds_eligible,
        }


def check_subset_sums(pool: Sequence[FieldElement], mode: str) -> ConditionReport:
    """Evaluate the mode's functional on every n-subset of a 2n pool.

    Subsets are visited in lexicographic index order with running partial
    aggregates, so nothing is re-summed from scratch.  The first vanishing
    subset is reported as the witness.
    """
    elements = tuple(pool)
    if len(elements) % 2 or len(elements) < 4:
        raise ValueError("pool must hold 2n elements with n >= 2")
    n = len(elements) // 2
    field = elements[0].field
    packed = [e.packed for e in elements]
    if len(set(packed)) != len(packed):
        raise ValueError("pool elements must be pairwise distinct")
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}; expected one of {MODES}")

    add = field.add_raw
    if mode == MODE_SUM:
        sums = packed
        invs = None
    else:
        if any(v == 0 for v in packed):
            raise DivisionByZero(f"mode {mode!r} inverts a zero pool element")
        invs = [field.inv_raw(v) for v in packed]
        sums = packed if mode == MODE_PRODUCT_FORM else invs

    if mode == MODE_PRODUCT_FORM:
        mul = field.mul_raw
        one = 1

        def value(state):
            return field.sub_raw(mul(state[0], state[1]), one)

        def step(state, i):
            return (add(state[0], sums[i]), add(state[1], invs[i]))

        init = (0, 0)
    else:

        def value(state):
            return state

        def step(state, i):
            return add(state, sums[i])

        init = 0

    zero_count = 0
    first_zero: Optional[tuple[int, ...]] = None
    chosen: list[int] = []

    def walk(start: int, depth: int, state) -> None:
        nonlocal zero_count, first_zero
        if depth == n:
            if value(state) == 0:
                zero_count += 1
                if first_zero is None:
                    first_zero = tuple(chosen)
            return
        # keep enough indices in reserve to finish the subset
        for i in range(start, 2 * n - (n - depth) + 1):
            chosen.append(i)
            walk(i + 1, depth + 1, step(state, i))
            chosen.pop()

    walk(0, 0, init)

    half1 = _fold(step, init, range(n))
    half2 = _fold(step, init, range(n, 2 * n))
    designated = value(half1) != 0 and value(half2) != 0
    fmt = field.format_element
    return ConditionReport(
        mode=mode,
        n=n,
        total_subsets=comb(2 * n, n),
        zero_count=zero_count,
        first_zero=first_zero,
        first_zero_elements=(
            tuple(fmt(elements[i]) for i in first_zero) if first_zero else None
        ),
        designated_nonzero=designated,
    )


def _fold(step, init, indices):
    state = init
    for i in indices:
        state = step(state, i)
    return state


def build_quotient(spec: XYSpec, swap: bool = False) -> FieldMatrix:
    """V1^-1 V2 (or V2^-1 V1 with swap=True) for the spec's gap pattern."""
    gaps = spec.gaps
    v1 = gvand(GVandSpec.from_gaps(spec.x, gaps))
    v2 = gvand(GVandSpec.from_gaps(spec.y, gaps))
    if swap:
        v1, v2 = v2, v1
    try:
        left_inv = v1.inv()
    except Singular as exc:
        raise SingularFactor(
            "the factor to invert is singular; its designated subset value is zero"
        ) from exc
    return left_inv @ v2


def _zero_witness(report: ConditionReport) -> dict:
    return {
        "indices": list(report.first_zero or ()),
        "elements": list(report.first_zero_elements or ()),
    }


def construct_mds(spec: XYSpec, verify: bool = True, swap: bool = False) -> FieldMatrix:
    """Quotient matrix whose every square submatrix is nonsingular.

    Raises ConditionViolated when some n-subset functional vanishes, and
    SelfCheckFailed if the independent column oracle rejects the output.
    """
    report = check_subset_sums(spec.pool, spec.mode)
    if not report.mds_eligible:
        raise ConditionViolated(
            f"{report.zero_count} of {report.total_subsets} subsets vanish under "
            f"mode {report.mode!r}; first witness {report.first_zero_elements}",
            witness=_zero_witness(report),
        )
    a = build_quotient(spec, swap)
    if verify:
        res = is_mds_matrix(a)
        if not res.ok:
            raise SelfCheckFailed(
                f"constructed matrix failed the MDS column oracle at {res.witnesses}"
            )
    return a


def construct_nmds(spec: XYSpec, verify: bool = True, swap: bool = False) -> FieldMatrix:
    """Quotient matrix generating a near-MDS code.

    Only gap patterns "n-1" and "1" support an NMDS target.  The pool must
    keep both designated halves nonzero while some other n-subset vanishes;
    otherwise ConditionViolated explains which part failed.
    """
    if spec.disc == "1,n":
        raise ValueError('disc "1,n" has no NMDS form; use target mds')
    report = check_subset_sums(spec.pool, spec.mode)
    if not report.nmds_eligible:
        if not report.designated_nonzero:
            raise ConditionViolated(
                "a designated half of the pool has functional value zero; "
                "the corresponding factor is singular"
            )
        raise ConditionViolated(
            f"no n-subset vanishes under mode {report.mode!r}; "
            "the pool is MDS-eligible instead"
        )
    a = build_quotient(spec, swap)
    if verify:
        res = is_nmds_matrix(a)
        if not res.ok:
            raise SelfCheckFailed(
                f"constructed matrix failed the NMDS three-clause oracle at {res.witnesses}"
            )
    return a


def construct_involutory(
    x: Sequence[FieldElement],
    l: FieldElement,
    target: str = "mds",
    verify: bool = True,
) -> FieldMatrix:
    """Involutory quotient over characteristic two via the shift y = l + x.

    Uses the gap pattern "n-1" with y_i = l + x_i, which forces A^2 = I.
    Requires even order and characteristic two; the shift must keep the
    pool duplicate-free.
    """
    xs = tuple(x)
    if not xs:
        raise ValueError("need at least one element")
    field = xs[0].field
    if field.p != 2:
        raise NotCharTwo("the involutory construction needs characteristic two")
    if len(xs) % 2:
        raise OddOrder(f"the involutory construction needs even order, got {len(xs)}")
    if l.packed == 0:
        raise ValueError("the shift l must be nonzero")
    ys = tuple(l + xi for xi in xs)
    spec = XYSpec(xs, ys, "n-1")
    if target == "mds":
        a = construct_mds(spec, verify=verify)
    elif target == "nmds":
        a = construct_nmds(spec, verify=verify)
    else:
        raise ValueError(f"unknown target {target!r}; expected mds or nmds")
    if verify and not a.is_involutory():
        raise SelfCheckFailed("constructed matrix is not involutory")
    return a
