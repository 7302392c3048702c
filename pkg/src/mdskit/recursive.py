"""Companion-matrix powers that yield MDS and NMDS matrices.

A monic polynomial g with distinct nonzero roots gives a companion matrix
C_g = V D V^-1.  Whether C_g^m is MDS or NMDS can be read off the n x 2n
matrix G' whose rows are root powers lambda_i^e over the exponent set
E = {0..n-1, m..m+n-1}: G' generates the same code as [I | (C_g^T)^m], so
the column tests from ``codes`` apply to either route.  Root families of
the form theta^e turn those column tests into the same subset-sum
functionals used by the quotient constructions.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Optional, Sequence, Union

from .codes import (
    DEFAULT_MAX_ORDER,
    CheckResult,
    ClauseWitness,
    _cols_rank,
    _nmds_three_clauses,
    is_mds_matrix,
    is_nmds_matrix,
)
from .construct import ConditionReport, check_subset_sums
from .errors import (
    ExponentCollision,
    ExponentTooSmall,
    FieldMismatch,
    OrderTooLarge,
    RepeatedRoot,
    RootMismatch,
    TooLarge,
)
from .gf import Field, FieldElement
from .matrix import FieldMatrix
from .vandermonde import vand

THETA_VARIANTS = ("theta-ib", "theta-ic", "new-mds")
PROVENANCES = ("explicit",) + THETA_VARIANTS
THETA_VERDICTS = ("MDS-eligible", "NMDS-eligible", "ineligible")

_VARIANT_MODES = {
    "theta-ib": "sum",
    "theta-ic": "inv_sum",
    "new-mds": "product_form",
}

DEFAULT_MAX_SCAN_STEPS = 4096


@dataclass(frozen=True)
class MonicPoly:
    """Monic polynomial x^n + a_n x^(n-1) + ... + a_2 x + a_1.

    ``coeffs`` stores (a_1, ..., a_n) ascending with the constant term
    first; the leading 1 is implicit.
    """

    coeffs: tuple[FieldElement, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(self.coeffs))
        if not self.coeffs:
            raise ValueError("a monic polynomial needs degree at least 1")
        field = self.coeffs[0].field
        if any(c.field != field for c in self.coeffs):
            raise FieldMismatch("coefficients from different fields")

    @property
    def field(self) -> Field:
        return self.coeffs[0].field

    @property
    def degree(self) -> int:
        return len(self.coeffs)

    def __call__(self, x: FieldElement) -> FieldElement:
        acc = self.field.one
        for k in range(self.degree, 0, -1):
            acc = acc * x + self.coeffs[k - 1]
        return acc

    def __str__(self) -> str:
        n = self.degree
        parts = ["x" if n == 1 else f"x^{n}"]
        for k in range(n, 0, -1):
            c = self.coeffs[k - 1]
            if c.packed == 0:
                continue
            text = self.field.format_element(c)
            if k == 1:
                parts.append(text)
            else:
                xpow = "x" if k == 2 else f"x^{k - 1}"
                parts.append(xpow if c.packed == 1 else f"{text}*{xpow}")
        return " + ".join(parts)

    def to_dict(self) -> dict:
        return {
            "degree": self.degree,
            "coeffs": [self.field.format_element(c) for c in self.coeffs],
            "text": str(self),
        }


def parse_poly(field: Field, text: str) -> MonicPoly:
    """Parse comma-separated coefficients a_1,...,a_n (constant term first)."""
    tokens = [t for t in (s.strip() for s in text.split(",")) if t]
    if not tokens:
        raise ValueError("empty coefficient list")
    return MonicPoly(tuple(field.parse_element(t) for t in tokens))


@dataclass(frozen=True)
class RootFamily:
    """Distinct nonzero roots, tagged with how they were chosen."""

    lambdas: tuple[FieldElement, ...]
    provenance: str = "explicit"
    theta: Optional[FieldElement] = None
    scale: Optional[FieldElement] = None

    def __post_init__(self):
        object.__setattr__(self, "lambdas", tuple(self.lambdas))
        if not self.lambdas:
            raise ValueError("need at least one root")
        field = self.lambdas[0].field
        if any(e.field != field for e in self.lambdas):
            raise FieldMismatch("roots from different fields")
        if any(e.packed == 0 for e in self.lambdas):
            raise ValueError("roots must be nonzero")
        if len(set(e.packed for e in self.lambdas)) != len(self.lambdas):
            raise RepeatedRoot("roots must be pairwise distinct")
        if self.provenance not in PROVENANCES:
            raise ValueError(f"unknown provenance {self.provenance!r}")

    @property
    def n(self) -> int:
        return len(self.lambdas)

    @property
    def field(self) -> Field:
        return self.lambdas[0].field


def poly_from_roots(fam: Union[RootFamily, Sequence[FieldElement]]) -> MonicPoly:
    """Expand prod(x - lambda_i) into a MonicPoly."""
    roots = fam.lambdas if isinstance(fam, RootFamily) else tuple(fam)
    if not roots:
        raise ValueError("need at least one root")
    field = roots[0].field
    full = [field.one]
    for lam in roots:
        nxt = [field.zero] * (len(full) + 1)
        for i, c in enumerate(full):
            nxt[i + 1] = nxt[i + 1] + c
            nxt[i] = nxt[i] - lam * c
        full = nxt
    return MonicPoly(tuple(full[:-1]))


def companion(g: MonicPoly) -> FieldMatrix:
    """Companion matrix: superdiagonal 1s, last row (-a_1, ..., -a_n)."""
    n = g.degree
    rows: list[list] = [
        [1 if j == i + 1 else 0 for j in range(n)] for i in range(n - 1)
    ]
    rows.append([-c for c in g.coeffs])
    return FieldMatrix(g.field, rows)


def _diag(entries: Sequence[FieldElement]) -> FieldMatrix:
    field = entries[0].field
    return FieldMatrix(
        field,
        [[entries[i] if i == j else 0 for j in range(len(entries))]
         for i in range(len(entries))],
    )


def diagonalize_companion(
    g: MonicPoly, fam: RootFamily
) -> tuple[FieldMatrix, FieldMatrix]:
    """Factors (V, D) with companion(g) = V D V^-1 and V = vand(roots)."""
    if fam.field != g.field:
        raise FieldMismatch("roots and polynomial from different fields")
    if fam.n != g.degree:
        raise RootMismatch(f"expected {g.degree} roots, got {fam.n}")
    for lam in fam.lambdas:
        if g(lam).packed != 0:
            raise RootMismatch(f"{lam!r} is not a root of {g}")
    return vand(fam.lambdas), _diag(fam.lambdas)


def exponent_set(n: int, m: int) -> tuple[int, ...]:
    """The 2n exponents {0..n-1, m..m+n-1}; needs m >= n to stay disjoint."""
    if m < n:
        raise ExponentTooSmall(f"need m >= n = {n}, got m = {m}")
    return tuple(range(n)) + tuple(range(m, m + n))


def gprime(fam: RootFamily, m: int) -> FieldMatrix:
    """The n x 2n matrix with row i = (lambda_i^e) over e in exponent_set."""
    exps = exponent_set(fam.n, m)
    return FieldMatrix(fam.field, [[lam**e for e in exps] for lam in fam.lambdas])


def _check_gprime_mds(gp: FieldMatrix, max_order: int) -> CheckResult:
    n = gp.k
    if n > max_order:
        raise OrderTooLarge(
            f"n-column scan at order {n} exceeds max_order={max_order}"
        )
    for cols in combinations(range(gp.n), n):
        if _cols_rank(gp.field, gp, cols) < n:
            return CheckResult(False, (ClauseWitness("dependent_k_columns", cols),))
    return CheckResult(True)


def is_recursive_mds(
    g: MonicPoly,
    m: int,
    method: str = "direct",
    fam: Optional[RootFamily] = None,
    max_order: int = DEFAULT_MAX_ORDER,
) -> CheckResult:
    """Is companion(g)**m an MDS matrix?

    The direct method powers the companion matrix and runs the k-column
    oracle on [I | B].  The gprime method never powers a matrix: it scans
    the n-column subsets of the root-power matrix G', which generates the
    same code up to transposition.  Witness columns refer to the matrix
    the chosen route scanned.
    """
    if m < 0:
        raise ExponentTooSmall(f"need m >= 0, got m = {m}")
    if method == "direct":
        return is_mds_matrix(companion(g) ** m, max_order=max_order)
    if method == "gprime":
        if fam is None:
            raise ValueError("the gprime method needs the root family")
        return _check_gprime_mds(gprime(fam, m), max_order)
    raise ValueError(f"unknown method {method!r}; expected direct or gprime")


def is_recursive_nmds(
    g: MonicPoly,
    m: int,
    method: str = "direct",
    fam: Optional[RootFamily] = None,
    max_order: int = DEFAULT_MAX_ORDER,
) -> CheckResult:
    """Is companion(g)**m an NMDS matrix?  Routes as in is_recursive_mds."""
    if m < 0:
        raise ExponentTooSmall(f"need m >= 0, got m = {m}")
    if method == "direct":
        return is_nmds_matrix(companion(g) ** m, max_order=max_order)
    if method == "gprime":
        if fam is None:
            raise ValueError("the gprime method needs the root family")
        gp = gprime(fam, m)
        if gp.k > max_order:
            raise OrderTooLarge(
                f"three-clause scan at order {gp.k} exceeds max_order={max_order}"
            )
        return _nmds_three_clauses(gp.field, gp, gp.k)
    raise ValueError(f"unknown method {method!r}; expected direct or gprime")


def scale_poly(g: MonicPoly, c: FieldElement) -> MonicPoly:
    """c^n g(x/c): multiplies every root by c, preserving MDS/NMDS verdicts."""
    if c.field != g.field:
        raise FieldMismatch("scale factor from a different field")
    if c.packed == 0:
        raise ValueError("the scale factor must be nonzero")
    n = g.degree
    return MonicPoly(
        tuple(a * c ** (n - k + 1) for k, a in enumerate(g.coeffs, start=1))
    )


@dataclass(frozen=True)
class ThetaReport:
    """Eligibility scan of a theta-power root family at a fixed exponent m."""

    variant: str
    theta: FieldElement
    n: int
    m: int
    exponents: tuple[int, ...]
    roots: tuple[FieldElement, ...]
    census: ConditionReport
    verdict: str

    @property
    def family(self) -> RootFamily:
        return RootFamily(self.roots, provenance=self.variant, theta=self.theta)

    def to_dict(self) -> dict:
        field = self.theta.field
        return {
            "variant": self.variant,
            "theta": field.format_element(self.theta),
            "n": self.n,
            "m": self.m,
            "exponents": list(self.exponents),
            "roots": [field.format_element(r) for r in self.roots],
            "verdict": self.verdict,
            "census": self.census.to_dict(),
        }


def _root_exponents(variant: str, n: int) -> tuple[int, ...]:
    if variant == "theta-ib":
        return tuple(range(n - 1)) + (n,)
    if variant == "theta-ic":
        return (0,) + tuple(range(2, n + 1))
    if variant == "new-mds":
        return (0,) + tuple(range(2, n)) + (n + 1,)
    raise ValueError(f"unknown variant {variant!r}; expected one of {THETA_VARIANTS}")


def construct_theta_family(
    theta: FieldElement, n: int, m: int, variant: str
) -> tuple[MonicPoly, ThetaReport]:
    """Root family from powers of theta, plus its eligibility verdict.

    Roots are theta^l with l = (0..n-2, n) for "theta-ib", (0, 2..n) for
    "theta-ic" and (0, 2..n-1, n+1) for "new-mds".  The verdict comes from
    the matching subset functional over the pool theta^E: sums for ib,
    inverse sums for ic, and (sum)(inverse sum) - 1 for new-mds.  No
    vanishing subset means MDS-eligible; a vanishing subset makes ib/ic
    NMDS-eligible and new-mds ineligible.  "ineligible" only negates the
    family's MDS criterion: the companion power may still turn out NMDS,
    which the column oracles decide.
    """
    exps = _root_exponents(variant, n)
    if n < 2:
        raise ValueError("theta families need order at least 2")
    if theta.packed == 0:
        raise ValueError("theta must be nonzero")
    e_set = exponent_set(n, m)
    order = theta.multiplicative_order()
    seen: dict[int, int] = {}
    for e in e_set:
        r = e % order
        if r in seen:
            raise ExponentCollision(
                f"theta^{seen[r]} = theta^{e} since ord(theta) = {order}"
            )
        seen[r] = e
    pool = tuple(theta**e for e in e_set)
    census = check_subset_sums(pool, _VARIANT_MODES[variant])
    if census.mds_eligible:
        verdict = "MDS-eligible"
    elif variant != "new-mds" and census.nmds_eligible:
        verdict = "NMDS-eligible"
    else:
        verdict = "ineligible"
    roots = tuple(theta**e for e in exps)
    fam = RootFamily(roots, provenance=variant, theta=theta)
    report = ThetaReport(
        variant=variant,
        theta=theta,
        n=n,
        m=m,
        exponents=e_set,
        roots=roots,
        census=census,
        verdict=verdict,
    )
    return poly_from_roots(fam), report


def scan_exponents(
    g: MonicPoly,
    m_lo: int,
    m_hi: int,
    max_order: int = DEFAULT_MAX_ORDER,
    max_steps: int = DEFAULT_MAX_SCAN_STEPS,
) -> dict[int, str]:
    """Verdict per exponent in [m_lo, m_hi]: "MDS", "NMDS" or "neither".

    Powers are built incrementally (one multiplication per step) and each
    power goes through the column oracles; exponents below the degree come
    out "neither" for n >= 3 because the power still contains a unit row.
    """
    if m_lo < 0:
        raise ExponentTooSmall(f"need m >= 0, got m = {m_lo}")
    if m_hi < m_lo:
        raise ValueError(f"empty exponent range {m_lo}..{m_hi}")
    if m_hi - m_lo + 1 > max_steps:
        raise TooLarge(
            f"range {m_lo}..{m_hi} exceeds max_steps={max_steps}"
        )
    b = companion(g)
    a = b**m_lo
    verdicts: dict[int, str] = {}
    for m in range(m_lo, m_hi + 1):
        if is_mds_matrix(a, max_order=max_order).ok:
            verdicts[m] = "MDS"
        elif is_nmds_matrix(a, max_order=max_order).ok:
            verdicts[m] = "NMDS"
        else:
            verdicts[m] = "neither"
        if m < m_hi:
            a = a @ b
    return verdicts
