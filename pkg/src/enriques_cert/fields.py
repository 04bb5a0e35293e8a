"""Ground fields: the rationals, prime fields and small extension fields.

Field objects do the arithmetic; elements are plain Python values
(:class:`fractions.Fraction` for Q, ``int`` residues in ``[0, p)`` for F_p,
and ``int`` encodings for F_{p^k}).  Keeping elements unboxed makes the
inner loops of elimination and factorization cheap.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache


class CharacteristicMismatchError(ValueError):
    """Operands live over different ground fields."""


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin for 64-bit inputs, trial division below."""
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
    for p in small:
        if n % p == 0:
            return n == p
    d, r = n - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in small:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def primes_from(start: int):
    """Yield primes >= start in increasing order."""
    n = max(2, start)
    while True:
        if is_prime(n):
            yield n
        n += 1


class Rationals:
    """The field Q with :class:`Fraction` elements (always in lowest terms)."""

    characteristic = 0
    is_field = True

    zero = Fraction(0)
    one = Fraction(1)

    def __call__(self, x) -> Fraction:
        if isinstance(x, Fraction):
            return x
        if isinstance(x, str):
            return Fraction(x)
        return Fraction(x)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / a

    def div(self, a, b):
        return a / b

    def is_zero(self, a) -> bool:
        return a == 0

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash("QQ")

    def __repr__(self):
        return "QQ"


QQ = Rationals()


class PrimeField:
    """F_p with canonical residues in ``[0, p)``."""

    is_field = True

    def __init__(self, p: int):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.characteristic = p
        self.zero = 0
        self.one = 1

    def __call__(self, x) -> int:
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise ZeroDivisionError(f"denominator of {x} vanishes mod {self.p}")
            return x.numerator * pow(x.denominator, -1, self.p) % self.p
        return int(x) % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def neg(self, a):
        return -a % self.p

    def mul(self, a, b):
        return a * b % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, -1, self.p)

    def div(self, a, b):
        return a * self.inv(b) % self.p

    def is_zero(self, a) -> bool:
        return a % self.p == 0

    def sqrt_nonresidue(self) -> int:
        for a in range(2, self.p):
            if pow(a, (self.p - 1) // 2, self.p) == self.p - 1:
                return a
        raise ValueError("F_2 has no quadratic non-residue")

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))

    def __repr__(self):
        return f"GF({self.p})"


@lru_cache(maxsize=None)
def GF(p: int) -> PrimeField:
    return PrimeField(p)


def same_field(a, b):
    if a != b:
        raise CharacteristicMismatchError(f"{a!r} vs {b!r}")
    return a


class ExtensionField:
    """F_{p^k} = F_p[z]/(g) for the lexicographically first monic irreducible g.

    Elements are integers ``sum c_i p^i`` encoding ``sum c_i z^i``; the
    constants ``0..p-1`` are the prime subfield.  For vectorised work the
    field can build full addition/multiplication tables (``order**2``
    entries each), so it is meant for small orders only.
    """

    is_field = True

    def __init__(self, p: int, k: int):
        from .unipoly import first_irreducible  # local: unipoly imports fields

        self.p = p
        self.k = k
        self.order = p ** k
        self.characteristic = p
        self.zero = 0
        self.one = 1
        self.base = GF(p)
        self.modulus = first_irreducible(p, k) if k > 1 else None
        self._tables = None

    def _to_vec(self, a):
        out = []
        for _ in range(self.k):
            a, r = divmod(a, self.p)
            out.append(r)
        return out

    def _from_vec(self, v):
        a = 0
        for c in reversed(v):
            a = a * self.p + c
        return a

    def __call__(self, x) -> int:
        if self.k == 1:
            return self.base(x)
        if isinstance(x, Fraction):
            return self.base(x)
        x = int(x)
        if 0 <= x < self.order:
            return x
        raise ValueError("out-of-range extension field encoding")

    def add(self, a, b):
        if self.k == 1:
            return (a + b) % self.p
        va, vb = self._to_vec(a), self._to_vec(b)
        return self._from_vec([(x + y) % self.p for x, y in zip(va, vb)])

    def neg(self, a):
        if self.k == 1:
            return -a % self.p
        return self._from_vec([-x % self.p for x in self._to_vec(a)])

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if self.k == 1:
            return a * b % self.p
        p, k = self.p, self.k
        va, vb = self._to_vec(a), self._to_vec(b)
        prod = [0] * (2 * k - 1)
        for i, x in enumerate(va):
            if x:
                for j, y in enumerate(vb):
                    prod[i + j] += x * y
        g = self.modulus.coeffs  # monic, low degree first
        for d in range(2 * k - 2, k - 1, -1):
            c = prod[d] % p
            if c:
                for i in range(k):
                    prod[d - k + i] -= c * g[i]
            prod[d] = 0
        return self._from_vec([c % p for c in prod[:k]])

    def pow(self, a, e):
        r = self.one
        while e:
            if e & 1:
                r = self.mul(r, a)
            a = self.mul(a, a)
            e >>= 1
        return r

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return self.pow(a, self.order - 2)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def is_zero(self, a):
        return a == 0

    def frobenius(self, a):
        return self.pow(a, self.p)

    def elements(self):
        return range(self.order)

    def tables(self):
        """(add, mul) lookup tables as numpy int32 arrays of shape (q^k, q^k)."""
        if self._tables is None:
            import numpy as np

            n = self.order
            if self.k == 1:
                r = np.arange(n, dtype=np.int64)
                add = ((r[:, None] + r[None, :]) % n).astype(np.int32)
                mul = ((r[:, None] * r[None, :]) % n).astype(np.int32)
            else:
                digits = np.array([self._to_vec(a) for a in range(n)], dtype=np.int64)
                weights = self.p ** np.arange(self.k, dtype=np.int64)
                add = (((digits[:, None, :] + digits[None, :, :]) % self.p) @ weights).astype(np.int32)
                # multiplication: log/antilog through a primitive element
                gen = self._primitive_element()
                log = np.zeros(n, dtype=np.int64)
                exp = np.zeros(n - 1, dtype=np.int64)
                x = 1
                for i in range(n - 1):
                    exp[i] = x
                    log[x] = i
                    x = self.mul(x, gen)
                la = log[:, None] + log[None, :]
                mul = exp[la % (n - 1)].astype(np.int32)
                mul[0, :] = 0
                mul[:, 0] = 0
            self._tables = (add, mul)
        return self._tables

    def _primitive_element(self):
        n1 = self.order - 1
        prime_factors = [q for q in range(2, n1 + 1) if n1 % q == 0 and is_prime(q)]
        for g in range(2, self.order):
            if all(self.pow(g, n1 // q) != 1 for q in prime_factors):
                return g
        return 1  # order 2 field

    def __eq__(self, other):
        return isinstance(other, ExtensionField) and (other.p, other.k) == (self.p, self.k)

    def __hash__(self):
        return hash(("GFext", self.p, self.k))

    def __repr__(self):
        return f"GF({self.p}^{self.k})"


@lru_cache(maxsize=None)
def GFq(p: int, k: int = 1) -> ExtensionField:
    return ExtensionField(p, k)


def lcm(*xs: int) -> int:
    out = 1
    for x in xs:
        out = out * x // math.gcd(out, x)
    return out
