import random

import pytest

from enriques_cert.chern import bezout_count
from enriques_cert.fields import GF, QQ
from enriques_cert.multipoly import FRAME_STX, FRAME_STXY, MultiPoly, TridegreeError
from enriques_cert.points import brute_force_points
from enriques_cert.polyset import PolySet
from enriques_cert.scheme import (
    PencilMatrix, build_pencil, chart_disjoint, cover_equations, degeneracy_ideal, eq4_matrix, flat_limit,
    genericity_checklist, plane_group_genericity, specialize,
)


@pytest.fixture(scope="module")
def ps():
    return PolySet.random(1)


def test_pencil_specializes_to_eq4(ps):
    M = build_pencil(ps)
    for p in (2, 3, 7):
        a, b = specialize(M, (1, p)), eq4_matrix(ps, p)
        for r1, r2 in zip(a.entries, b.entries):
            assert list(r1) == list(r2)


def test_pencil_at_0_1(ps):
    M = specialize(build_pencil(ps), (0, 1))
    assert list(M.entries[0]) == list(ps.r)
    assert list(M.entries[1]) == list(ps.s)


def test_pencil_grading(ps):
    M = build_pencil(ps)
    for j in range(3):
        assert M.entries[0][j].multidegree() == (2, 2, 0, 1)
        assert M.entries[1][j].multidegree() == (2, 0, 2, 1)
    S = specialize(M, (1, 5))
    assert all(e.multidegree() == (2, 2, 0) for e in S.entries[0])
    assert all(e.multidegree() == (2, 0, 2) for e in S.entries[1])


def test_specialize_rejects_origin_and_twice(ps):
    M = build_pencil(ps)
    with pytest.raises(ValueError):
        specialize(M, (0, 0))
    with pytest.raises(ValueError):
        specialize(specialize(M, (1, 1)), (1, 1))


def test_degeneracy_ideal(ps):
    I = degeneracy_ideal(specialize(build_pencil(ps), (1, 3)))
    assert len(I.generators) == 3
    assert all(g.multidegree() == (4, 2, 2) for g in I.generators)


def test_degeneracy_ideal_needs_specialization(ps):
    with pytest.raises(ValueError):
        degeneracy_ideal(build_pencil(ps))


def test_rank_one_matrix_has_zero_minors():
    # rows u*b and v*b share the factor vector b, so the rank is at most 1
    rng = random.Random(9)
    fr = FRAME_STXY
    base = [MultiPoly.random(QQ, fr, (1, 0, 0), rng) for _ in range(3)]
    u = MultiPoly.random(QQ, fr, (1, 2, 0), rng)
    v = MultiPoly.random(QQ, fr, (1, 0, 2), rng)
    M = PencilMatrix((tuple(u * b for b in base), tuple(v * b for b in base)), fr, (1, 0))
    assert all(g.is_zero() for g in degeneracy_ideal(M).generators)


def _rank_le_1(rows, p):
    a, b = rows
    return all((a[i] * b[j] - a[j] * b[i]) % p == 0 for i in range(3) for j in range(i + 1, 3))


@pytest.mark.parametrize("q", [3, 5])
def test_degeneracy_points_match_rank_condition(q):
    ps = PolySet.random(1).reduce_mod(q)
    M = specialize(build_pencil(ps), (1, 2))
    I = degeneracy_ideal(M)
    found = set(brute_force_points(list(I.generators), q))
    expected = set()
    for pt in brute_force_points([], q, frame=FRAME_STXY):
        flat = [c for block in pt for c in block]
        rows = [[e(flat) for e in row] for row in M.entries]
        if _rank_le_1(rows, q):
            expected.add(pt)
    assert found == expected
    assert found  # the locus has points over these fields


def test_cover_equations(ps):
    eqs = cover_equations(ps, (1, 3))
    assert len(eqs) == 3
    assert all(e.frame == FRAME_STX and e.multidegree() == (2, 2) for e in eqs)
    assert bezout_count(1) == 24


def test_cover_equations_at_0_1(ps):
    eqs = cover_equations(ps, (0, 1))
    for e, r in zip(eqs, ps.r):
        assert e.embed(FRAME_STXY) == r


def test_cover_points_lie_on_degeneracy_locus():
    # the top row vanishes at a cover point, so every y works
    ps = PolySet.random(1)
    eqs = [e.reduce_mod(5) for e in cover_equations(ps, (1, 2))]
    pts = brute_force_points(eqs, 5)
    I = degeneracy_ideal(specialize(build_pencil(ps.reduce_mod(5)), (1, 2)))
    for (st_, x) in pts:
        for y in ((1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1), (1, 2, 3)):
            assert all(g(list(st_) + list(x) + list(y)) == 0 for g in I.generators)


def test_flat_limit_shapes(ps):
    fl = flat_limit(ps)
    assert len(fl.closure_minors) == 4
    assert all(g.multidegree() == (1, 2, 2) for g in fl.x0_tilde)
    assert len(fl.x0_tilde) == 3
    assert len(fl.r_pairs) == 3 and len(fl.e0_planes) == 3 and len(fl.el_planes) == 3
    assert fl.r0[1].multidegree() == (3, 2, 4)


def test_flat_limit_plane_groups(ps):
    rep = plane_group_genericity(ps, 1009)
    assert rep.counts == (12, 4, 4, 4)
    assert rep.total == 24 == bezout_count(1)
    assert rep.generic


def test_r_components_disjoint(ps):
    fl = flat_limit(ps)
    forms = [f for f, _ in fl.r_pairs]
    for p in (101, 1009):
        for i in range(3):
            for j in range(i + 1, 3):
                assert chart_disjoint(forms[i], forms[j], p)
    assert not chart_disjoint(forms[0], forms[0], 101)


def test_degenerate_p1_equals_p2(ps):
    bad = ps.replace(p=(ps.p[0], ps.p[1], ps.p[1]))
    rep = plane_group_genericity(bad, 1009)
    assert rep.counts != (12, 4, 4, 4)
    assert not rep.generic
    assert not genericity_checklist(bad, (1, 3), 1009).passed


def test_genericity_checklist_passes(ps):
    chk = genericity_checklist(ps, (1, 3), 1009, trials=5, seed=1)
    assert chk.passed, chk
    assert chk.cover_degree == 24 and chk.distinct_points == 24


def test_row_tridegree_violation_rejected(ps):
    bad = MultiPoly.random(QQ, FRAME_STXY, (1, 2, 0), random.Random(1))
    with pytest.raises(ValueError):
        ps.replace(r=(bad, ps.r[1], ps.r[2]))
