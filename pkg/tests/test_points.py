import pytest

from enriques_cert.elimination import eliminate_reduced
from enriques_cert.fields import GF
from enriques_cert.multipoly import FRAME_STX, FRAME_STXY, MultiPoly
from enriques_cert.points import (
    EnumerationBudgetError, brute_force_points, chart_coordinates, count_projective,
    oracle_check, roots_in_extension,
)
from enriques_cert.polyset import PolySet
from enriques_cert.scheme import cover_equations
from enriques_cert.unipoly import cycle_type_fp, is_squarefree


@pytest.fixture(scope="module")
def ps():
    return PolySet.random(1)


def test_line_points_over_f3():
    F = GF(3)
    s, x0 = MultiPoly.var(F, FRAME_STX, "s"), MultiPoly.var(F, FRAME_STX, "x0")
    pts = brute_force_points([s, x0], 3)
    assert len(pts) == 4
    assert all(st == (0, 1) and x[0] == 0 for st, x in pts)


def test_empty_system_all_points():
    assert len(brute_force_points([], 3, frame=FRAME_STX)) == 4 * 13
    assert count_projective(3, 2) == 13


def test_budget_guard():
    with pytest.raises(EnumerationBudgetError):
        brute_force_points([], 101, frame=FRAME_STXY, budget=10 ** 5)


def test_pure_and_deterministic(ps):
    eqs = [e.reduce_mod(7) for e in cover_equations(ps, (1, 2))]
    assert brute_force_points(eqs, 7, 2) == brute_force_points(eqs, 7, 2)


def test_fast_path_matches_generic_enumeration(ps):
    # the (2,2) fast path against the generic route through a wider frame
    eqs = [e.reduce_mod(5) for e in cover_equations(ps, (1, 2))]
    fast = brute_force_points(eqs, 5)
    wide = brute_force_points([e.embed(FRAME_STXY) for e in eqs], 5)
    assert {pt[:2] for pt in wide} == set(fast)


@pytest.mark.parametrize("q,k", [(5, 1), (5, 2), (5, 3), (101, 1), (1009, 1)])
def test_roots_biject_with_points(ps, q, k):
    # (1:2) has points over F_101; over F_1009 use (1:3)
    bp = (1, 3) if q == 1009 else (1, 2)
    res = oracle_check(ps, bp, q, k)
    assert res["comparable"]
    assert res["match"]
    assert res["points"] == len(res["roots"])


def test_point_counts_follow_cycle_type(ps):
    # #X(F_{q^k}) = sum over d | k of d * (number of degree-d factors)
    q = 5
    eqs = cover_equations(ps, (1, 2))
    f = eliminate_reduced(eqs, q, 1)
    assert is_squarefree(f)
    ctype = cycle_type_fp(f)
    for k in (1, 2, 3):
        expected = sum(d for d in ctype if k % d == 0)
        assert len(brute_force_points([e.reduce_mod(q) for e in eqs], q, k)) == expected


def test_chart_coordinates(ps):
    eqs = cover_equations(ps, (1, 2))
    f = eliminate_reduced(eqs, 101, 1)
    pts = brute_force_points([e.reduce_mod(101) for e in eqs], 101)
    assert sorted(chart_coordinates(pts, 1, 101)) == roots_in_extension(f, 101)


def test_bad_prime_is_flagged(ps):
    # f mod 7 is not squarefree at (1:2); the comparison is not claimed
    assert not oracle_check(ps, (1, 2), 7, 1)["comparable"]
