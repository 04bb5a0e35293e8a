import math
import random

import pytest

from enriques_cert.fields import GF, QQ
from enriques_cert.galois import (
    LONG_PRIME, TRANSITIVITY, TRANSPOSITION, CycleTypeCertificate, cache_certificate,
    certify_from_source, certify_symmetric_group, cycle_type_census, load_cached, long_primes,
    replay_certificate, required_roles, role_holds, search_good_prime, stirling_cycle_distribution,
)
from enriques_cert.polyset import PolySet
from enriques_cert.unipoly import UniPoly, factor_fp

from oracles import cycle_type, group_closure


@pytest.fixture(scope="module")
def ps():
    return PolySet.random(1)


@pytest.fixture(scope="module")
def search(ps):
    return search_good_prime(ps, [2, 3, 5, 7, 11], 500)


def test_long_primes_24():
    assert long_primes(24) == [13, 17, 19]
    assert required_roles(24) == (TRANSITIVITY, LONG_PRIME, TRANSPOSITION)


def test_role_conditions():
    assert role_holds(TRANSITIVITY, [24], 24)
    assert role_holds(TRANSPOSITION, [1, 2, 21], 24)
    assert not role_holds(TRANSPOSITION, [2, 2, 20], 24)
    assert not role_holds(TRANSPOSITION, [2, 4, 18], 24)
    assert role_holds(LONG_PRIME, [1, 6, 17], 24)
    assert role_holds(LONG_PRIME, [11, 13], 24)  # the 11th power is a 13-cycle
    assert not role_holds(LONG_PRIME, [10, 14], 24)
    assert not role_holds(LONG_PRIME, [12, 12], 24)
    assert not role_holds(TRANSITIVITY, [23], 24)  # wrong total


def test_role_criterion_against_group_closure():
    # whenever a group on n points has elements of every required type,
    # it is the whole symmetric group
    rng = random.Random(0)
    for n in (5, 6, 7, 8):
        full = math.factorial(n)
        for _ in range(25):
            gens = []
            for _ in range(rng.choice((1, 2))):
                p = list(range(n))
                rng.shuffle(p)
                gens.append(tuple(p))
            G = group_closure(gens, n)
            types = {cycle_type(g) for g in G}
            filled = all(any(role_holds(r, t, n) for t in types) for r in required_roles(n))
            if filled:
                assert len(G) == full


def test_role_criterion_rejects_alternating_and_dihedral():
    n = 7
    cyc = tuple((i + 1) % n for i in range(n))
    refl = tuple((-i) % n for i in range(n))
    three = (1, 2, 0) + tuple(range(3, n))
    for gens in ([cyc, refl], [cyc, three]):
        G = group_closure(gens, n)
        types = {cycle_type(g) for g in G}
        filled = all(any(role_holds(r, t, n) for t in types) for r in required_roles(n))
        assert not filled
        assert len(G) < math.factorial(n)


def test_trivial_n1():
    cert = certify_from_source(1, lambda q: None, iter([2, 3]), 0)
    assert cert.verdict == "S1"


def test_x3_minus_x_minus_1():
    f = UniPoly(QQ, [QQ(-1), QQ(-1), QQ(0), QQ(1)])
    assert [h.degree for h, _ in factor_fp(f.reduce_mod(2))] == [3]
    assert sorted(h.degree for h, _ in factor_fp(f.reduce_mod(5))) == [1, 2]
    cert = certify_from_source(3, lambda q: f.reduce_mod(q), iter([2, 3, 5, 7]), 10)
    assert cert.verdict == "S3"
    assert {(e.prime, e.role) for e in cert.entries} == {(2, TRANSITIVITY), (5, TRANSPOSITION)}
    assert replay_certificate(cert.dumps()).verdict == "Verified"


def test_budget_zero_inconclusive(ps):
    res = search_good_prime(ps, [2], 0)
    assert res.verdict == "Inconclusive" and res.prime is None


def test_search_certifies(ps, search):
    assert search.verdict == "S24"
    assert search.prime == 2
    cert = search.certificate
    assert {e.role for e in cert.entries} == set(required_roles(24))
    for e in cert.entries:
        assert role_holds(e.role, e.ctype, 24)


def test_certificate_entries_refactor(search):
    for e in search.certificate.entries:
        f = UniPoly(GF(e.prime), list(e.coeffs), "u")
        assert tuple(sorted(h.degree for h, _ in factor_fp(f, seed=9))) == tuple(sorted(e.ctype))


def test_search_is_deterministic(ps, search):
    again = search_good_prime(ps, [2, 3, 5, 7, 11], 500)
    assert again.prime == search.prime
    assert again.certificate.dumps() == search.certificate.dumps()


def test_serialization_round_trip(search):
    text = search.certificate.dumps()
    assert CycleTypeCertificate.loads(text).dumps() == text


def test_replay_and_deep_replay(ps, search):
    text = search.certificate.dumps()
    assert replay_certificate(text).verdict == "Verified"
    assert replay_certificate(text, ps, deep=True).verdict == "Verified"


def _tamper_ctype(text):
    lines = text.splitlines()
    i = next(i for i, l in enumerate(lines) if l.startswith("entry"))
    parts = lines[i].split(" ")
    parts[3] = "1,1,1,21" if parts[3] != "1,1,1,21" else "24"
    lines[i] = " ".join(parts)
    return "\n".join(lines) + "\n", i


def test_altered_cycle_type_fails_at_entry(search):
    bad, line = _tamper_ctype(search.certificate.dumps())
    res = replay_certificate(bad)
    assert res.verdict == "Failed"
    assert res.bad_entry == 0


def test_altered_coefficient_caught_by_deep_replay(ps, search):
    cert = CycleTypeCertificate.loads(search.certificate.dumps())
    e = cert.entries[0]
    coeffs = list(e.coeffs)
    coeffs[3] = (coeffs[3] + 1) % e.prime
    cert.entries[0] = type(e)(e.prime, e.role, e.ctype, tuple(coeffs))
    assert replay_certificate(cert.dumps(), ps, deep=True).verdict == "Failed"


def test_wrong_polyset_fails(search):
    assert replay_certificate(search.certificate.dumps(), PolySet.random(2)).verdict == "Failed"


def test_garbage_fails():
    assert replay_certificate("hello\n").verdict == "Failed"


def test_cache_round_trip(tmp_path, search, ps):
    path = cache_certificate(search.certificate, tmp_path)
    assert path.exists()
    back = load_cached(ps.digest(), search.certificate.basepoint, tmp_path)
    assert back.dumps() == search.certificate.dumps()
    assert load_cached(ps.digest(), (1, 999), tmp_path) is None


def test_cache_env(monkeypatch, tmp_path, search):
    monkeypatch.setenv("ENRIQUES_CERT_CACHE", str(tmp_path / "c"))
    path = cache_certificate(search.certificate)
    assert path.parent == tmp_path / "c"


def test_census_has_several_types(ps):
    census = cycle_type_census(ps, 2, count=25)
    assert len(census) == 25
    assert all(sum(t) == 24 for _, t in census)
    assert len({tuple(t) for _, t in census}) >= 5


def test_stirling_distribution():
    dist = stirling_cycle_distribution(4)
    assert sum(dist) == 1
    # S_4: 6 four-cycles, 11 with two cycles, 6 with three, 1 identity
    assert [d * 24 for d in dist] == [0, 6, 11, 6, 1]
