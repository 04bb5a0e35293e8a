import random

import pytest
from hypothesis import given, settings, strategies as st

from enriques_cert.gf2 import GF2Subspace, to_mask
from enriques_cert.lattice import (
    C1, C2, FIXTURE_CURVES, L1, L2, CurveClassVector, FPAbelianGroup, InconsistentCurveError,
    LatticeError, algebraic_subspace, ambient_pushforward, defect_report, derive_curve_fixtures,
    divisibility_check, dump_tables, fstar_cokernel, h2_presentation, h4_mod2, ihc_defect_2torsion,
    labels, load_tables, pushforward_kernel_mod2, vanishing_generators, vanishing_subspace_mod2,
)
from enriques_cert.snf import invariant_factors

from oracles import gf2_rank_lists, invariant_factors_by_minors


@pytest.fixture(scope="module")
def report():
    return defect_report()


# -- H^2 -------------------------------------------------------------------


@pytest.mark.parametrize("which", ["X", "Y"])
def test_h2_free_rank_50(which):
    G = h2_presentation(which)
    assert len(G.labels) == 51
    assert G.rank == 50
    assert G.torsion == []


def test_h2_relation_as_displayed():
    G = h2_presentation("X")
    row = G.relations[0]
    assert row[G.index("H1")] == -2 and row[G.index("H2")] == 2
    assert row[G.index("E1_5")] == 1 and row[G.index("E2_5")] == -1
    GY = h2_presentation("Y")
    assert GY.relations[0][GY.index("H1")] == -1


def test_h2_invariant_factors_by_minors():
    G = h2_presentation("X")
    assert invariant_factors(G.relations) == invariant_factors_by_minors(G.relations) == [1]


def test_shuffled_generators_same_factors():
    rng = random.Random(0)
    G = h2_presentation("X")
    for _ in range(5):
        perm = list(range(51))
        rng.shuffle(perm)
        H = FPAbelianGroup([G.labels[i] for i in perm], [[G.relations[0][i] for i in perm]])
        assert H.invariant_factors() == G.invariant_factors()
        assert H.rank == 50


def test_unknown_label():
    with pytest.raises(LatticeError):
        h2_presentation().index("Z9")


# -- curve fixtures -----------------------------------------------------------


def test_fixtures_rederived():
    assert derive_curve_fixtures() == FIXTURE_CURVES


def test_fixture_values():
    assert L1.pairing("H2") == 1 and L1.pairing("E1_1") == -2 and L1.d == 0
    assert C1.d == 4 and C1.pairing("H2") == 12
    assert all(C1.pairing(f"E2_{j}") == 1 for j in range(1, 25))
    assert all(C1.pairing(f"E1_{j}") == 0 for j in range(1, 25))


@pytest.mark.parametrize("curve", FIXTURE_CURVES, ids=lambda c: c.label)
def test_fixtures_respect_relation(curve):
    assert curve.relation_defect() == 0


def test_relation_violation_rejected():
    bad = CurveClassVector.make("bad", 4, H2=4, **{f"E2_{j}": 1 for j in range(1, 25)})
    assert bad.relation_defect() != 0
    with pytest.raises(InconsistentCurveError):
        algebraic_subspace([bad])


def test_odd_degree_curve_rejected():
    bad = CurveClassVector.make("odd", 1)
    with pytest.raises(InconsistentCurveError):
        algebraic_subspace([bad])


def test_algebraic_dimensions():
    assert algebraic_subspace(FIXTURE_CURVES).dim == 4
    assert algebraic_subspace([]).dim == 0
    assert gf2_rank_lists([c.vector() for c in FIXTURE_CURVES]) == 4


# -- degree-4 subspaces ---------------------------------------------------------


def test_vanishing_generator_pairings():
    gens = dict(vanishing_generators("X"))
    assert len(gens) == 2 * 276
    v = gens["c_1_3_7"]
    L = labels("X")
    assert v[L.index("E1_3")] == 1 and v[L.index("E1_7")] == -1
    assert v[:3] == [0, 0, 0]


def test_vanishing_telescopes():
    gens = dict(vanishing_generators("X"))
    # c_{1,1,2} + c_{1,2,3} + c_{1,3,1} with c_{1,3,1} = -c_{1,1,3}
    total = [a + b - c for a, b, c in zip(gens["c_1_1_2"], gens["c_1_2_3"], gens["c_1_1_3"])]
    assert not any(total)


def test_vanishing_orthogonal_to_ambient():
    for _, v in vanishing_generators("X"):
        assert ambient_pushforward(v) == [0, 0, 0, 0]


def test_vanishing_dim_46():
    van = vanishing_subspace_mod2()
    assert van.dim == 46
    assert van.basis == pushforward_kernel_mod2().basis


def test_h4_mod2_dim():
    assert h4_mod2().dim == 50


def test_fstar_cokernel():
    factors = fstar_cokernel()
    assert len(factors) == 46
    assert factors.count(2) == 46


def test_defect(report):
    assert report.h4_mod2_dim == 50
    assert report.alg_dim == 4
    assert report.van_dim == 46
    assert report.alg_cap_van_dim == 2
    assert report.alg_image_dim == 2
    assert report.defect_route_dims == report.defect_route_snf == 46
    assert report.agree
    assert report.alg_cap_van_dim <= report.alg_dim <= report.h4_mod2_dim


def test_pushforward_rank_nullity(report):
    H4 = h4_mod2()
    image = GF2Subspace.span(
        [to_mask(ambient_pushforward([(b >> i) & 1 for i in range(51)])) for b in H4.basis], 4)
    assert report.van_dim + image.dim == H4.dim == 50
    # the algebraic classes reach a 2-dimensional part of the 4-dimensional image
    assert report.alg_image_dim == 2 and image.dim == 4


def test_defect_vanishes_when_everything_algebraic():
    assert ihc_defect_2torsion(alg=h4_mod2()) == 0
    assert ihc_defect_2torsion() == 46


def test_defect_rejects_foreign_subspace():
    # a functional pairing 1 with E1_1 only does not kill the relation
    v = [0] * 51
    v[labels().index("E1_1")] = 1
    foreign = GF2Subspace.span([to_mask(v)], 51)
    assert not h4_mod2().contains(foreign.basis[0])
    with pytest.raises(LatticeError):
        ihc_defect_2torsion(alg=foreign)


# -- divisibility ------------------------------------------------------------


def test_divisibility():
    assert divisibility_check("F") == 1
    assert divisibility_check("2*H1") == 2
    assert divisibility_check("sumE") == 2
    assert divisibility_check("H1", 2) == (1, False)


def test_divisibility_of_unknown_label():
    with pytest.raises(LatticeError):
        divisibility_check("Q7")


# -- audit tables -----------------------------------------------------------


def test_tables_round_trip():
    text = dump_tables()
    data = load_tables(text)
    assert data["generators"]["X"] == labels("X")
    assert data["relations"]["X"] == h2_presentation("X").relations
    assert len(data["vanishing"]["X"]) == 552
    assert dump_tables() == text


def test_tables_reject_garbage():
    with pytest.raises(LatticeError):
        load_tables("nope\n")


# -- properties ----------------------------------------------------------------


@settings(max_examples=40)
@given(st.lists(st.integers(-3, 3), min_size=51, max_size=51))
def test_relation_defect_is_linear(v):
    c = CurveClassVector.from_vector("v", v)
    assert c.relation_defect() == sum(a * b for a, b in zip(v, h2_presentation().relations[0]))


@settings(max_examples=40)
@given(st.integers(0, 2 ** 51 - 1))
def test_dual_basis_mod2_membership(mask):
    # a functional is in H^4/2 iff it kills the relation mod 2
    rel = h2_presentation().relations[0]
    bits = [(mask >> i) & 1 for i in range(51)]
    kills = sum(a * b for a, b in zip(bits, rel)) % 2 == 0
    assert h4_mod2().contains(mask) == kills
