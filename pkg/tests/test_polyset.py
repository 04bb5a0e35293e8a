import random

import pytest
from hypothesis import given, settings, strategies as st

from enriques_cert.fields import GF, QQ
from enriques_cert.multipoly import FRAME_STXY, MultiPoly
from enriques_cert.polyset import TRIDEGREES, PolySet


def test_random_is_seeded():
    assert PolySet.random(5).dumps() == PolySet.random(5).dumps()
    assert PolySet.random(5).digest() != PolySet.random(6).digest()


def test_tridegrees_declared():
    ps = PolySet.random(0)
    for name, deg in TRIDEGREES.items():
        for f in ps.family(name):
            assert f.multidegree() == deg


def test_height_bound():
    ps = PolySet.random(0, height=2)
    for name in "pqrs":
        for f in ps.family(name):
            assert all(abs(c) <= 2 for c in f.terms.values())


def test_json_round_trip(tmp_path):
    ps = PolySet.random(3)
    path = tmp_path / "ps.json"
    ps.save(path)
    back = PolySet.load(path)
    assert back.dumps() == ps.dumps() and back.digest() == ps.digest()


def test_wrong_tridegree_rejected():
    ps = PolySet.random(0)
    bad = MultiPoly.random(QQ, FRAME_STXY, (2, 2, 0), random.Random(0))
    with pytest.raises(ValueError):
        ps.replace(p=(bad, ps.p[1], ps.p[2]))


def test_wrong_count_rejected():
    ps = PolySet.random(0)
    with pytest.raises(ValueError):
        ps.replace(q=ps.q[:2])


def test_missing_family_rejected():
    data = PolySet.random(0).to_json()
    del data["s"]
    with pytest.raises(ValueError):
        PolySet.from_json(data)


def test_reduce_mod():
    ps = PolySet.random(0).reduce_mod(101)
    assert ps.field == GF(101)


@settings(max_examples=10)
@given(st.integers(0, 2 ** 32))
def test_every_random_polyset_validates(seed):
    PolySet.random(seed).validate()
