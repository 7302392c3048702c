"""Generalized Vandermonde construction and the factored determinant."""

import random
from itertools import combinations

import pytest

from mdskit.errors import DegreeOutOfRange, DivisionByZero, FieldMismatch
from mdskit.gf import Field
from mdskit.matrix import FieldMatrix
from mdskit.vandermonde import (
    GVandSpec,
    det_gvand_formula,
    gvand,
    sigma,
    vand,
    vand_det,
)


@pytest.fixture(scope="module")
def f16():
    return Field(2, 4, 0x13)


def sigma_oracle(d, xs):
    """Brute-force subset expansion of the elementary symmetric polynomial."""
    field = xs[0].field
    acc = field.zero
    for combo in combinations(xs, d):
        term = field.one
        for e in combo:
            term = term * e
        acc = acc + term
    return acc


def test_vand_rows_are_powers(f16):
    a = f16.primitive_element()
    v = vand((f16.one, a, a**2, a**3))
    assert v.shape == (4, 4)
    assert v.row(0) == (f16.one,) * 4
    assert v.row(3) == (f16.one, a**3, a**6, a**9)
    single = vand((a,))
    assert single.entries == ((f16.one,),)


def test_gvand_without_gaps_is_vand(f16):
    a = f16.primitive_element()
    xs = (f16.one, a, a**2)
    spec = GVandSpec(xs, (0, 1, 2))
    assert spec.gaps == ()
    assert gvand(spec) == vand(xs)


def test_gvand_skips_exponents(f16):
    a = f16.primitive_element()
    xs = (f16.one, a, a**2, a**5)
    spec = GVandSpec.from_gaps(xs, (3,))
    assert spec.exponents == (0, 1, 2, 4)
    m = gvand(spec)
    assert m.row(3) == tuple(x**4 for x in xs)
    spec2 = GVandSpec.from_gaps((f16.one, a, a**5, a**10), (1,))
    assert spec2.exponents == (0, 2, 3, 4)


def test_gvand_spec_validation(f16):
    a = f16.primitive_element()
    xs = (f16.one, a)
    with pytest.raises(ValueError):
        GVandSpec(xs, (2, 1))  # not increasing
    with pytest.raises(ValueError):
        GVandSpec(xs, (0, 1, 2))  # length mismatch
    with pytest.raises(ValueError):
        GVandSpec(xs, (-1, 0))
    with pytest.raises(ValueError):
        GVandSpec.from_gaps(xs, (3,))  # gap beyond the ladder 0..2
    with pytest.raises(ValueError):
        GVandSpec.from_gaps(xs, (1, 1))
    f256 = Field(2, 8, 0x1C3)
    with pytest.raises(FieldMismatch):
        GVandSpec((f16.one, f256.one), (0, 1))


def test_gaps_roundtrip(f16):
    a = f16.primitive_element()
    xs = tuple(a**i for i in range(4))
    for gaps in ((), (3,), (1,), (1, 4), (0, 2), (2, 3, 5)):
        assert GVandSpec.from_gaps(xs, gaps).gaps == gaps


def test_sigma_values(f16):
    a = f16.primitive_element()
    xs = (f16.one, a, a**2)
    assert sigma(0, xs) == f16.one
    assert sigma(3, xs) == f16.one * a * a**2
    assert sigma(2, xs).packed == 14  # a + a^2 + a^3, hand-reduced
    assert sigma(1, (f16.zero, a)) == a


def test_sigma_degree_range(f16):
    xs = (f16.one, f16.primitive_element())
    for d in (-1, 3, 17):
        with pytest.raises(DegreeOutOfRange):
            sigma(d, xs)


def test_sigma_matches_subset_oracle():
    rng = random.Random(0x51)
    for field in (Field(2, 4, 0x13), Field(3, 2, [2, 2, 1])):
        for _ in range(40):
            n = rng.randint(1, 5)
            xs = tuple(field.element(rng.randrange(field.q)) for _ in range(n))
            for d in range(n + 1):
                assert sigma(d, xs) == sigma_oracle(d, xs)


def test_vand_det_matches_elimination(f16):
    rng = random.Random(0x7A)
    for _ in range(40):
        n = rng.randint(1, 5)
        xs = tuple(f16.element(rng.randrange(16)) for _ in range(n))
        assert vand_det(xs) == vand(xs).det()


def test_formula_no_gaps(f16):
    a = f16.primitive_element()
    xs = (f16.one, a, a**3)
    spec = GVandSpec(xs, (0, 1, 2))
    assert det_gvand_formula(spec) == vand(xs).det()


def test_formula_top_gap_equals_sum_form(f16):
    a = f16.primitive_element()
    xs = (f16.one, a, a**2, a**3)
    spec = GVandSpec.from_gaps(xs, (3,))
    total = f16.zero
    for x in xs:
        total = total + x
    assert det_gvand_formula(spec) == vand_det(xs) * total
    assert det_gvand_formula(spec) == gvand(spec).det()
    assert det_gvand_formula(spec).packed != 0


def test_formula_top_gap_vanishing_sum(f16):
    a = f16.primitive_element()
    xs = (f16.one, a, a**3, a**7)  # 1 + a + a^3 + a^7 = 0
    spec = GVandSpec.from_gaps(xs, (3,))
    assert det_gvand_formula(spec) == f16.zero
    assert gvand(spec).det() == f16.zero


def test_formula_low_gap(f16):
    a = f16.primitive_element()
    xs = (a, a**2, a**5, a**7)
    spec = GVandSpec.from_gaps(xs, (1,))
    assert det_gvand_formula(spec) == gvand(spec).det()
    zero_in = GVandSpec.from_gaps((f16.zero, a, a**2, a**3), (1,))
    with pytest.raises(DivisionByZero):
        det_gvand_formula(zero_in)


def test_formula_low_and_high_gap(f16):
    a = f16.primitive_element()
    xs = (f16.one, a, a**2, a**3)
    spec = GVandSpec.from_gaps(xs, (1, 4))
    assert spec.exponents == (0, 2, 3, 5)
    assert det_gvand_formula(spec) == gvand(spec).det()
    zero_in = GVandSpec.from_gaps((f16.zero, a, a**2, a**3), (1, 4))
    with pytest.raises(DivisionByZero):
        det_gvand_formula(zero_in)


def test_formula_repeated_entries_zero(f16):
    a = f16.primitive_element()
    spec = GVandSpec.from_gaps((a, a, a**2), (1,))
    assert det_gvand_formula(spec) == f16.zero
    assert gvand(spec).det() == f16.zero


def test_formula_general_gaps_match_elimination():
    """Gap patterns without a closed form go through the sigma matrix."""
    rng = random.Random(0x6D5)
    f16 = Field(2, 4, 0x13)
    f9 = Field(3, 2, [2, 2, 1])
    for field in (f16, f9):
        for _ in range(60):
            n = rng.randint(1, 5)
            xs = tuple(
                field.element(v)
                for v in rng.sample(range(field.q), n)
            )
            s = rng.randint(0, 3)
            gaps = tuple(sorted(rng.sample(range(n + s), s)))
            spec = GVandSpec.from_gaps(xs, gaps)
            # trailing gaps normalize away, so test the effective pattern
            if spec.gaps in ((1,), (1, n)) and any(e.packed == 0 for e in xs):
                with pytest.raises(DivisionByZero):
                    det_gvand_formula(spec)
                continue
            assert det_gvand_formula(spec) == gvand(spec).det(), (
                f"{field} x={xs} gaps={gaps}"
            )


def test_formula_general_gaps_with_zero_entry(f16):
    a = f16.primitive_element()
    xs = (f16.zero, f16.one, a, a**2)
    for gaps in ((0,), (2,), (0, 3), (2, 4), (3,)):
        spec = GVandSpec.from_gaps(xs, gaps)
        assert det_gvand_formula(spec) == gvand(spec).det()


def test_spec_text_round_trip(f16):
    a = f16.primitive_element()
    spec = GVandSpec.from_text(f16, "x=[1,a^1,a^3,a^7]; I={3}")
    assert spec.x == (f16.one, a, a**3, a**7)
    assert spec.exponents == (0, 1, 2, 4)
    assert spec.gaps == (3,)
    assert spec.to_text() == "x=[1,a^1,a^3,a^7]; I={3}"
    assert GVandSpec.from_text(f16, spec.to_text()) == spec


def test_spec_text_optional_gaps(f16):
    assert GVandSpec.from_text(f16, "x=[1, a^1]").gaps == ()
    assert GVandSpec.from_text(f16, "x=[1,a^1]; I={}").gaps == ()
    assert GVandSpec.from_text(f16, " x = [ 1 , a^1 ] ; I = { 1 , 2 } ").gaps == (1, 2)


def test_spec_text_rejects_garbage(f16):
    from mdskit.errors import ParseError

    for bad in ("x=1,2", "x=[]; I={}", "x=[1]; I={b}", "y=[1]", "x=[1]; I={9}"):
        with pytest.raises((ParseError, ValueError)):
            GVandSpec.from_text(f16, bad)
