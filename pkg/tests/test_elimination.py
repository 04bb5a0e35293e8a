import pytest

from enriques_cert.elimination import (
    DegreeDropError, cover_polynomial, eliminate, eliminate_reduced, iterated_resultant,
)
from enriques_cert.fields import GF, QQ
from enriques_cert.multipoly import FRAME_STXY, MultiPoly
from enriques_cert.polyset import PolySet
from enriques_cert.scheme import cover_equations
from enriques_cert.unipoly import NotSquarefreeError, is_squarefree


@pytest.fixture(scope="module")
def ps():
    return PolySet.random(1)


@pytest.fixture(scope="module")
def eqs(ps):
    return cover_equations(ps, (1, 3))


@pytest.fixture(scope="module")
def f_exact(eqs):
    return eliminate(eqs, QQ, 1)


def test_degree_24(ps):
    cp = cover_polynomial(ps, (1, 3))
    assert cp.degree == 24
    assert is_squarefree(cp.f)
    assert cp.polyset_digest == ps.digest() and cp.basepoint == (1, 3)


def test_reduced_agrees_with_exact(eqs, f_exact):
    for q in (101, 1009, 10007):
        assert eliminate_reduced(eqs, q, 1) == f_exact.reduce_mod(q)


def test_iterated_resultant_divisible_by_eliminant(eqs):
    F = GF(101)
    g = eliminate_reduced(eqs, 101, 1)
    it = iterated_resultant(eqs, F, 1)
    assert not it.is_zero()
    assert (it % g).is_zero()


def test_cover_polynomial_over_fp(ps):
    cp = cover_polynomial(ps, (1, 3), GF(1009))
    assert cp.degree == 24 and cp.field == GF(1009)


def test_engineered_degree_drop(ps):
    s, t = MultiPoly.var(QQ, FRAME_STXY, "s"), MultiPoly.var(QQ, FRAME_STXY, "t")
    # r_i = (s + t) p_i: at (0:1) the whole line s + t = 0 is a component,
    # which sits at infinity of chart 1
    bad = ps.replace(r=tuple(((s + t) * p).with_declared((2, 2, 0)) for p in ps.p))
    with pytest.raises(DegreeDropError):
        cover_polynomial(bad, (0, 1), chart=1)
    # other charts see it as a repeated root instead
    with pytest.raises(NotSquarefreeError):
        cover_polynomial(bad, (0, 1))


@pytest.mark.parametrize("seed", range(6))
def test_degree_24_seeded(seed):
    # reduced elimination stands in for the exact one in this sweep
    ps = PolySet.random(seed)
    assert cover_polynomial(ps, (1, 2), GF(2147483647)).degree == 24
