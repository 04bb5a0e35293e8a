"""Places and divisors of Q(t), and the Z/2 reciprocity bookkeeping.

A place is a monic irreducible polynomial in Q[t] or the place at infinity.
A rational function is a pair (numerator, denominator) of polynomials.
"""

from __future__ import annotations

import itertools
import random
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction

from .fields import QQ, primes_from
from .unipoly import UniPoly, factor_rational, is_irreducible_fp, rational_roots

VAR = "t"


@dataclass(frozen=True)
class Place:
    """``poly`` is None for the infinite place; otherwise monic coefficients, low first."""

    poly: tuple = None

    @classmethod
    def infinity(cls):
        return cls(None)

    @classmethod
    def of(cls, f: UniPoly):
        if f.lc != 1:
            raise ValueError("places are monic polynomials")
        return cls(tuple(Fraction(c) for c in f.coeffs))

    @property
    def is_infinite(self):
        return self.poly is None

    @property
    def degree(self) -> int:
        return 1 if self.poly is None else len(self.poly) - 1

    def polynomial(self) -> UniPoly:
        return UniPoly(QQ, list(self.poly), VAR)

    def irreducibility_witness(self):
        """A prime modulo which the place stays irreducible, "low-degree"
        when degree <= 3 and there is no rational root, or "recombination"
        when only the full factorisation over Q shows it (x^4 + 1 splits
        modulo every prime).  None if the polynomial is reducible."""
        if self.is_infinite or self.degree == 1:
            return "linear"
        f = self.polynomial()
        if self.degree <= 3:
            return "low-degree" if not rational_roots(f) else None
        den = 1
        for c in self.poly:
            den = den * c.denominator
        for p in primes_from(3):
            if p > 500:
                break
            if den % p:
                fp = f.reduce_mod(p)
                if fp.degree == self.degree and is_irreducible_fp(fp):
                    return p
        _, facs = factor_rational(f)
        return "recombination" if len(facs) == 1 and facs[0][1] == 1 else None

    def __str__(self):
        return "inf" if self.is_infinite else f"[{self.polynomial()!r}]"


@dataclass(frozen=True)
class RationalFunction:
    num: UniPoly
    den: UniPoly

    @classmethod
    def make(cls, num, den=None):
        num = num if isinstance(num, UniPoly) else UniPoly(QQ, [Fraction(c) for c in num], VAR)
        den = den if isinstance(den, UniPoly) else UniPoly(QQ, [Fraction(c) for c in (den or [1])], VAR)
        if num.is_zero():
            raise ValueError("the zero function has no divisor")
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        return cls(num, den)

    def __mul__(self, other):
        return RationalFunction(self.num * other.num, self.den * other.den)

    @classmethod
    def random(cls, rng: random.Random, max_degree: int = 4, height: int = 6):
        def poly():
            while True:
                d = rng.randint(0, max_degree)
                c = [rng.randint(-height, height) for _ in range(d + 1)]
                p = UniPoly(QQ, [Fraction(x) for x in c], VAR)
                if not p.is_zero():
                    return p
        return cls(poly(), poly())


Divisor = Counter


def divisor_of(f) -> Counter:
    """Formal sum {Place: multiplicity}; zero entries are dropped."""
    if not isinstance(f, RationalFunction):
        f = RationalFunction.make(f)
    div = Counter()
    for part, sign in ((f.num, 1), (f.den, -1)):
        _, facs = factor_rational(part)
        for g, m in facs:
            div[Place.of(g)] += sign * m
    inf = f.den.degree - f.num.degree
    if inf:
        div[Place.infinity()] += inf
    return Counter({p: m for p, m in div.items() if m})


def add_divisors(a, b) -> Counter:
    out = Counter(a)
    for p, m in b.items():
        out[p] += m
    return Counter({p: m for p, m in out.items() if m})


def degree(div) -> int:
    return sum(p.degree * m for p, m in div.items())


def reciprocity_sum(f, local=None) -> int:
    """Sum over places of multiplicity times the local Z/2 invariant, mod 2.

    By default the local invariant is the degree of the place, so the sum is
    the degree of div(f) mod 2, which vanishes for every principal divisor.
    """
    div = f if isinstance(f, Counter) else divisor_of(f)
    local = local or (lambda p: p.degree)
    return sum(m * local(p) for p, m in div.items()) % 2


# ---------------------------------------------------------------------------
# local evaluation profiles


@dataclass
class LocalEvaluationProfile:
    """``values[place_label]`` is the set of attainable local values in Z/2.
    Unlisted places are taken to have attainable set {0}."""

    values: dict = field(default_factory=dict)

    def free(self):
        return sorted(k for k, v in self.values.items() if len(v) > 1)

    def fixed_sum(self) -> int:
        return sum(next(iter(v)) for v in self.values.values() if len(v) == 1) % 2

    def to_json(self):
        return {k: sorted(v) for k, v in sorted(self.values.items())}


@dataclass
class Family:
    choice: dict
    theta: int = 0

    def __bool__(self):
        return True


@dataclass
class Obstructed:
    forced_sum: int
    reason: str

    def __bool__(self):
        return False


EXHAUSTIVE_LIMIT = 20


def hpro_obstruction_search(profile: LocalEvaluationProfile):
    """Choose one attainable value per place with total 0 in Z/2."""
    for k, v in profile.values.items():
        if not v or not set(v) <= {0, 1}:
            raise ValueError(f"place {k}: attainable set must be a nonempty subset of Z/2")
    fixed = {k: next(iter(v)) for k, v in profile.values.items() if len(v) == 1}
    free = profile.free()
    base = sum(fixed.values()) % 2
    if not free:
        if base:
            return Obstructed(1, "every place has a single attainable value and they sum to 1")
        return Family(dict(fixed), 0)
    if len(free) <= EXHAUSTIVE_LIMIT:
        for vals in itertools.product((0, 1), repeat=len(free)):
            if (base + sum(vals)) % 2 == 0:
                return Family({**fixed, **dict(zip(free, vals))}, 0)
        return Obstructed(base, "exhaustive search found no zero-sum choice")
    # one free place cancels any parity
    choice = {**fixed, **{k: 0 for k in free}}
    choice[free[0]] = base
    theta = sum(choice.values()) % 2
    if theta:
        raise AssertionError("greedy choice failed to cancel the parity")
    return Family(choice, 0)


def special_places_profile(nplaces: int = 48) -> LocalEvaluationProfile:
    """The 48 special places, each able to take both values (a point on one
    section evaluates to 1, on the other to 0); every other place has {0}."""
    return LocalEvaluationProfile({f"P{j:02d}": {0, 1} for j in range(1, nplaces + 1)})


def forced_profile() -> LocalEvaluationProfile:
    return LocalEvaluationProfile({"P01": {1}})
