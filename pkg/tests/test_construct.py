"""Quotient constructions: subset conditions, fixtures and self-checks."""

import random
from itertools import combinations

import pytest

from mdskit.codes import is_mds_matrix, is_nmds_matrix
from mdskit.errors import (
    ConditionViolated,
    DivisionByZero,
    NotCharTwo,
    OddOrder,
    SelfCheckFailed,
    SingularFactor,
)
from mdskit.gf import Field
from mdskit.matrix import FieldMatrix
from mdskit.construct import (
    XYSpec,
    build_quotient,
    check_subset_sums,
    construct_involutory,
    construct_mds,
    construct_nmds,
    disc_gaps,
)

F16 = Field(2, 4, 0x13)
F256 = Field(2, 8, 0x1C3)
A16 = F16.primitive_element()
A256 = F256.primitive_element()

X16 = tuple(A16**i for i in range(4))
Y16 = tuple(A16**i for i in range(4, 8))
X256 = tuple(A256**i for i in range(4))
Y256 = tuple(A256**i for i in range(4, 8))

GF256_SUM_MDS = (
    "a^7 a^234 a^57 a^156\n"
    "a^37 a^66 a^55 a^211\n"
    "a^205 a^100 a^30 a^86\n"
    "a^227 a^50 a^149 a^40"
)
GF256_SUM_MDS_SWAP = (
    "a^136 a^49 a^235 a^30\n"
    "a^210 a^77 a^201 a^198\n"
    "a^144 a^72 a^52 a^220\n"
    "a^42 a^228 a^23 a^248"
)
GF16_SUM_NMDS = "a^7 a^9 a^9 1\na^14 a^14 a^3 1\na^10 a^5 a^5 0\na^2 a^2 a^8 1"
GF16_SUM_NMDS_SWAP = "0 a^7 1 a^7\n1 a^14 0 a^3\n1 a^5 1 a^10\n1 a^8 1 a^8"
GF256_INV_MDS = (
    "a^9 a^43 a^252 a^70\n"
    "a^232 a^68 a^92 a^168\n"
    "a^206 a^213 a^93 a^230\n"
    "a^34 a^243 a^61 a^152"
)
GF256_INV_MDS_SWAP = (
    "a^24 a^137 a^42 a^223\n"
    "a^66 a^14 a^88 a^197\n"
    "a^187 a^35 a^50 a^25\n"
    "a^128 a^33 a^214 a^246"
)
GF16_INV_NMDS = "a^9 a^5 a^2 a^13\na^7 a^1 a^10 a^9\na^11 0 1 a^5\na^11 a^8 a^4 0"
GF16_INV_NMDS_SWAP = (
    "a^14 a^11 a^9 a^13\n0 a^4 a^8 a^2\na^6 a^13 a^13 a^2\na^2 1 a^4 a^6"
)
GF16_PROD_MDS = "a^10 a^2 a^2 a^14\na^12 a^2 a^10 a^5\na^1 a^9 1 1\na^7 a^7 a^4 a^12"
GF16_PROD_MDS_SWAP = (
    "a^7 a^4 a^12 a^2\na^5 a^10 a^9 a^6\na^5 1 a^12 a^12\na^9 a^2 a^7 a^5"
)


def subset_oracle(pool, mode):
    """Independent re-evaluation of the subset functional, no partial sums."""
    field = pool[0].field
    n = len(pool) // 2
    zeros = []
    for idx in combinations(range(2 * n), n):
        s = field.zero
        si = field.zero
        for i in idx:
            s = s + pool[i]
            if mode != "sum":
                si = si + pool[i].inv()
        if mode == "sum":
            val = s
        elif mode == "inv_sum":
            val = si
        else:
            val = s * si - field.one
        if val.packed == 0:
            zeros.append(idx)
    return zeros


def test_disc_gaps_tokens():
    assert disc_gaps("n-1", 4) == (3,)
    assert disc_gaps("1", 4) == (1,)
    assert disc_gaps("1,n", 4) == (1, 4)
    with pytest.raises(ValueError):
        disc_gaps("2", 4)


def test_xyspec_validation():
    with pytest.raises(ValueError):
        XYSpec(X16, X16, "n-1")  # pool not distinct
    with pytest.raises(ValueError):
        XYSpec(X16[:3], Y16, "n-1")  # length mismatch
    with pytest.raises(ValueError):
        XYSpec((A16,), (A16**2,), "n-1")  # n < 2
    with pytest.raises(ValueError):
        XYSpec(X16, Y16, "3")  # unknown token
    with_zero = (F16.zero,) + X16[:3]
    XYSpec(with_zero, Y16, "n-1")  # sum mode tolerates one zero
    with pytest.raises(ValueError):
        XYSpec(with_zero, Y16, "1")
    with pytest.raises(ValueError):
        XYSpec(with_zero, Y16, "1,n")


def test_check_subset_sums_census_gf16_sum():
    rep = check_subset_sums(X16 + Y16, "sum")
    assert rep.total_subsets == 70
    assert rep.zero_count == 5
    assert rep.first_zero == (0, 1, 3, 7)
    assert rep.first_zero_elements == ("1", "a^1", "a^3", "a^7")
    assert rep.designated_nonzero
    assert rep.nmds_eligible and not rep.mds_eligible


def test_check_subset_sums_census_gf16_inv():
    rep = check_subset_sums(X16 + Y16, "inv_sum")
    assert rep.zero_count == 5
    assert rep.first_zero == (0, 1, 2, 7)
    assert rep.first_zero_elements == ("1", "a^1", "a^2", "a^7")
    assert rep.nmds_eligible and not rep.mds_eligible


def test_check_subset_sums_census_gf256():
    for mode in ("sum", "inv_sum", "product_form"):
        rep = check_subset_sums(X256 + Y256, mode)
        assert rep.zero_count == 0
        assert rep.first_zero is None
        assert rep.mds_eligible and not rep.nmds_eligible


def test_check_subset_sums_matches_bruteforce_oracle():
    rng = random.Random(0x5EED)
    for mode in ("sum", "inv_sum", "product_form"):
        for _ in range(8):
            n = rng.choice((2, 3))
            pool = tuple(
                F16.element(v) for v in rng.sample(range(1, 16), 2 * n)
            )
            rep = check_subset_sums(pool, mode)
            zeros = subset_oracle(pool, mode)
            assert rep.zero_count == len(zeros)
            assert rep.first_zero == (zeros[0] if zeros else None)


def test_check_subset_sums_rejections():
    with pytest.raises(ValueError):
        check_subset_sums(X16, "nope")
    with pytest.raises(ValueError):
        check_subset_sums(X16[:3], "sum")  # odd pool
    with pytest.raises(ValueError):
        check_subset_sums(X16 + X16, "sum")  # duplicates
    pool = (F16.zero,) + X16[:3] + Y16
    with pytest.raises(DivisionByZero):
        check_subset_sums(pool, "inv_sum")


def test_build_quotient_inverse_pairing():
    spec = XYSpec(X256, Y256, "n-1")
    a = build_quotient(spec)
    b = build_quotient(spec, swap=True)
    assert a @ b == FieldMatrix.identity(F256, 4)


def test_build_quotient_singular_factor():
    # x sums to zero, so V1 with gaps {n-1} is singular.
    x = (F16.one, A16, A16**3, A16**7)
    y = (A16**2, A16**4, A16**5, A16**6)
    spec = XYSpec(x, y, "n-1")
    with pytest.raises(SingularFactor):
        build_quotient(spec)


def test_construct_mds_gf256_sum_fixture():
    spec = XYSpec(X256, Y256, "n-1")
    assert construct_mds(spec).to_text() == GF256_SUM_MDS
    assert construct_mds(spec, swap=True).to_text() == GF256_SUM_MDS_SWAP


def test_construct_mds_gf256_inv_fixture():
    spec = XYSpec(X256, Y256, "1")
    assert construct_mds(spec).to_text() == GF256_INV_MDS
    assert construct_mds(spec, swap=True).to_text() == GF256_INV_MDS_SWAP


def test_construct_mds_gf16_product_fixture():
    spec = XYSpec(X16, Y16, "1,n")
    a = construct_mds(spec)
    assert a.to_text() == GF16_PROD_MDS
    assert construct_mds(spec, swap=True).to_text() == GF16_PROD_MDS_SWAP
    assert is_mds_matrix(a).ok


def test_construct_mds_condition_violated():
    spec = XYSpec(X16, Y16, "n-1")
    with pytest.raises(ConditionViolated) as err:
        construct_mds(spec)
    assert err.value.witness == {
        "indices": [0, 1, 3, 7],
        "elements": ["1", "a^1", "a^3", "a^7"],
    }


def test_construct_nmds_gf16_sum_fixture():
    spec = XYSpec(X16, Y16, "n-1")
    a = construct_nmds(spec)
    assert a.to_text() == GF16_SUM_NMDS
    assert construct_nmds(spec, swap=True).to_text() == GF16_SUM_NMDS_SWAP
    assert is_nmds_matrix(a).ok


def test_construct_nmds_gf16_inv_fixture():
    spec = XYSpec(X16, Y16, "1")
    assert construct_nmds(spec).to_text() == GF16_INV_NMDS
    assert construct_nmds(spec, swap=True).to_text() == GF16_INV_NMDS_SWAP


def test_construct_nmds_rejects_mds_pool():
    spec = XYSpec(X256, Y256, "n-1")
    with pytest.raises(ConditionViolated, match="MDS-eligible"):
        construct_nmds(spec)


def test_construct_nmds_rejects_singular_designated_half():
    x = (F16.one, A16, A16**3, A16**7)  # sums to zero
    y = (A16**2, A16**4, A16**5, A16**6)
    with pytest.raises(ConditionViolated, match="designated"):
        construct_nmds(XYSpec(x, y, "n-1"))


def test_construct_nmds_rejects_product_disc():
    with pytest.raises(ValueError):
        construct_nmds(XYSpec(X16, Y16, "1,n"))


def test_constructed_pairs_are_mutual_inverses():
    for disc in ("n-1", "1"):
        spec = XYSpec(X16, Y16, disc)
        a = construct_nmds(spec)
        b = construct_nmds(spec, swap=True)
        assert a @ b == FieldMatrix.identity(F16, 4)


def test_construct_involutory_gf256_mds_fixture():
    x = tuple(A256**i for i in range(6))
    a = construct_involutory(x, A256, target="mds")
    assert a.to_text() == (
        "a^113 a^33 a^227 a^93 a^16 a^174\n"
        "a^63 a^107 a^186 a^149 a^175 a^10\n"
        "a^105 a^34 a^116 a^97 a^198 a^197\n"
        "a^40 a^66 a^166 a^43 a^213 a^52\n"
        "a^136 a^10 a^185 a^131 a^5 a^136\n"
        "a^211 a^17 a^101 a^142 a^53 a^56"
    )
    assert a.is_involutory()


def test_construct_involutory_gf16_nmds_fixture():
    a = construct_involutory(X16, F16.one, target="nmds")
    assert a.to_text() == (
        "a^9 a^7 a^7 a^7\na^3 a^14 a^3 a^3\na^10 a^10 a^5 a^10\na^2 a^2 a^2 a^8"
    )
    assert a.is_involutory()
    assert is_nmds_matrix(a).ok


def test_involutory_shift_makes_triangular_product():
    """With y = l + x the product V2 V1^-1 is lower triangular."""
    from mdskit.vandermonde import GVandSpec, gvand

    x = tuple(A256**i for i in range(6))
    y = tuple(A256 + xi for xi in x)
    v1 = gvand(GVandSpec.from_gaps(x, (5,)))
    v2 = gvand(GVandSpec.from_gaps(y, (5,)))
    prod = v2 @ v1.inv()
    for i in range(6):
        for j in range(i + 1, 6):
            assert prod[i, j].packed == 0


def test_construct_involutory_rejections():
    with pytest.raises(OddOrder):
        construct_involutory((F16.one, A16, A16**2), F16.one)
    f9 = Field(3, 2, [2, 2, 1])
    g = f9.primitive_element()
    with pytest.raises(NotCharTwo):
        construct_involutory((f9.one, g), g)
    with pytest.raises(ValueError):
        construct_involutory(X16, F16.zero)
    with pytest.raises(ValueError):
        construct_involutory(X16, A16**4)  # 1 + a^4 = a, already in x


def test_odd_order_quotient_is_not_involutory():
    """A 3x3 shifted-pool quotient exists but cannot be involutory."""
    x = (F16.one, A16, A16**2)
    shift = A16**3
    y = tuple(shift + xi for xi in x)
    a = build_quotient(XYSpec(x, y, "n-1"))
    assert a.to_text() == "a^10 a^13 a^1\na^3 a^11 a^11\na^11 a^1 a^13"
    assert not a.is_involutory()


def test_verify_flag_skips_oracle(monkeypatch):
    """verify=False must not call the column oracles."""
    import mdskit.construct as construct_mod

    def boom(*args, **kwargs):
        raise AssertionError("oracle should not run")

    monkeypatch.setattr(construct_mod, "is_mds_matrix", boom)
    monkeypatch.setattr(construct_mod, "is_nmds_matrix", boom)
    spec = XYSpec(X256, Y256, "n-1")
    construct_mds(spec, verify=False)
    construct_nmds(XYSpec(X16, Y16, "n-1"), verify=False)
