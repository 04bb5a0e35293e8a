import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from enriques_cert.chern import (
    InconsistencyError, P1PA, _as_int, betti_b3, bezout_count, canonical_class_check,
    canonical_P2, canonical_Ymin, chi_top_product, chi_top_X_direct, euler_characteristic_chain,
    hrr_chi, integrate, porteous_class, ring_P1P2P2, ring_product, thom_porteous_rank1,
    todd_coefficients, total_chern,
)

from oracles import chern_oracle


@pytest.fixture(scope="module")
def oracle():
    return chern_oracle()


# -- integration ----------------------------------------------------------


def test_top_monomial_normalized():
    f, h1, h2 = ring_P1P2P2().gens()
    assert integrate(f * h1 ** 2 * h2 ** 2) == 1


def test_nilpotency():
    f, h1, h2 = ring_P1P2P2().gens()
    assert integrate(h1 ** 3 * (f + h2) ** 2) == 0
    assert (f ** 2).terms == {}


def test_p1p2_bezout_integral():
    f, h = ring_product((1, 2), ("f", "h")).gens()
    assert integrate((2 * f + 2 * h) ** 3) == 24


@pytest.mark.parametrize("n", range(1, 7))
def test_bezout_formula(n):
    expected = (2 * n + 1) * 2 ** (2 * n + 1)
    assert bezout_count(n) == expected
    assert bezout_count(n, method="binomial") == expected


def test_bezout_known_values():
    assert [bezout_count(n) for n in (1, 2, 3)] == [24, 160, 896]


R3 = ring_P1P2P2()


@st.composite
def classes(draw):
    R = R3
    f, h1, h2 = R.gens()
    monos = [R.one(), f, h1, h2, f * h1, f * h2, h1 * h2, h1 ** 2, h2 ** 2, f * h1 * h2,
             h1 ** 2 * h2, f * h1 ** 2 * h2, f * h1 ** 2 * h2 ** 2, h1 ** 2 * h2 ** 2]
    out = R.zero()
    for m in monos:
        out = out + m * draw(st.integers(-5, 5))
    return out


@given(classes(), classes(), st.integers(-4, 4))
def test_integrate_linear(a, b, c):
    assert integrate(a + b * c) == integrate(a) + c * integrate(b)


@given(classes(), st.integers(0, 4))
def test_non_top_degree_integrates_to_zero(a, k):
    assert integrate(a.part(k)) == 0


# -- Porteous -------------------------------------------------------------


def test_porteous_e_class():
    R = ring_P1P2P2()
    f, h1, h2 = R.gens()
    c = total_chern([2 * f + 2 * h1, 2 * f + 2 * h2])
    assert c.part(2) == 4 * (f * h1 + f * h2 + h1 * h2)
    X = thom_porteous_rank1([2 * f + 2 * h1, 2 * f + 2 * h2])
    assert X == 4 * h1 ** 2 + 4 * h2 ** 2 + 4 * h1 * h2 + 12 * f * h1 + 12 * f * h2
    assert integrate(X * f * h1 * h2) == 4


def test_porteous_trivial_bundle():
    R = ring_P1P2P2()
    assert thom_porteous_rank1([R.zero(), R.zero()]) == R.zero()


def test_porteous_twisted_cubic():
    # a generic 2x3 matrix of linear forms on P^3 defines a twisted cubic
    (h,) = ring_product((3,), ("h",)).gens()
    X = thom_porteous_rank1([h, h])
    assert integrate(X * h) == 3


def test_porteous_maximal_rank_locus_is_c1_for_square():
    # O^2 -> L1 + L2 drops rank where det vanishes: class c1
    (h,) = ring_product((3,), ("h",)).gens()
    c = total_chern([h, 2 * h])
    assert porteous_class(c, 2, 2, 1) == 3 * h


def test_fiber_degree_by_point_count():
    # over a generic x in the first P^2, rank-one points: integrate [X] h1^2 f
    f, h1, h2 = ring_P1P2P2().gens()
    X = thom_porteous_rank1([2 * f + 2 * h1, 2 * f + 2 * h2])
    assert integrate(X * h1 ** 2 * f) == 4


# -- Euler characteristics -------------------------------------------------


def test_chain(oracle):
    ch = euler_characteristic_chain()
    assert ch["chi_X"] == -96
    assert ch["chi_Y"] - ch["chi_Ymin"] == 96
    assert 2 * ch["chi_X"] == ch["chi_Y"] + 144
    assert ch["chi_X_direct"] == -96
    assert ch["chi_P1xP5"] == 12
    assert ch["chi_Ymin"] == oracle["chi_Ymin"]


def test_chi_direct_matches_oracle(oracle):
    assert chi_top_X_direct() == oracle["chi_X"] == -96


def test_chi_product():
    assert chi_top_product((1, 5)) == 12
    assert chi_top_product((2,)) == 3


def test_b3_consistency():
    assert betti_b3(-96, 50) == 198
    assert 1 - 0 + 50 - 198 + 50 - 0 + 1 == -96


# -- Riemann-Roch -----------------------------------------------------------


def test_todd_coefficients():
    assert todd_coefficients(4) == (1, Fraction(1, 2), Fraction(1, 12), 0, Fraction(-1, 720))


@pytest.mark.parametrize("model,expected", [("X", 1), ("enriques-fiber", 1), ("P3", 1)])
def test_hrr(model, expected):
    val = hrr_chi(model)
    assert isinstance(val, int) and val == expected


def test_hrr_matches_oracle(oracle):
    assert hrr_chi("X") == oracle["chiO_X"]
    assert hrr_chi("Ymin") == oracle["chiO_Ymin"]


def test_hrr_unknown_model():
    with pytest.raises(ValueError):
        hrr_chi("K3")


def test_non_integer_rejected():
    with pytest.raises(InconsistencyError):
        _as_int(Fraction(1, 2), "test")


# -- canonical classes -----------------------------------------------------


def test_k_ymin(oracle):
    R, K = canonical_Ymin()
    f, h = R.gens()
    assert K == 4 * f
    assert oracle["K_Ymin"] == {(1, 0): 4}


def test_k_p2():
    K = canonical_P2()
    assert integrate(K * K) == 9


def test_canonical_class_routes():
    chk = canonical_class_check()
    assert chk["K_X_coords"] == {"F": 4, "H1": -1, "H2": 1, "E1_j": 1}
    assert chk["two_K_minus_8F_minus_sumE_is_zero"]
    assert not chk["two_K_minus_2F_minus_sumE_is_zero"]
    assert chk["pullback_matches_K_Y_minus_ramification"]
    assert chk["routes_agree"]
    assert chk["K_Ymin_F_coefficient"] == 4


def test_bundle_relation():
    f, h1, h2, xi = P1PA().gens()
    assert xi ** 2 == (2 * h1 + 2 * h2) * xi - 4 * h1 * h2
    assert (xi - 2 * h2) * (xi - 2 * h1) == P1PA().zero()
    assert integrate(f * h1 ** 2 * h2 ** 2 * xi) == 1
