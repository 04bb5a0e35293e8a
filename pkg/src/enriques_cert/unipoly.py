"""Dense univariate polynomials over a field or a polynomial ring.

Coefficients are stored low degree first with trailing zeros stripped, so
``coeffs[-1]`` is the leading coefficient and the zero polynomial has no
coefficients.  Over F_p there are list-based fast paths for the operations
that dominate factorization (multiplication, remainder, modular powers).
"""

from __future__ import annotations

import random
from collections import Counter
from fractions import Fraction

from .fields import QQ, GF, PrimeField, CharacteristicMismatchError, is_prime


class NotSquarefreeError(ValueError):
    def __init__(self, witness):
        super().__init__(f"polynomial is not squarefree; gcd(f, f') = {witness}")
        self.witness = witness


# ---------------------------------------------------------------------------
# list kernels over F_p


def _trim(c):
    while c and c[-1] == 0:
        c.pop()
    return c


def _mul_p(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim([c % p for c in out])


def _divmod_p(a, b, p):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(a)
    db = len(b) - 1
    inv = pow(b[-1], -1, p)
    if len(a) <= db:
        return [], _trim(a)
    q = [0] * (len(a) - db)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i] % p
        if c:
            c = c * inv % p
            q[i - db] = c
            for j in range(db + 1):
                a[i - db + j] -= c * b[j]
        a[i] = 0
    rem = _trim([x % p for x in a[:db]])
    return _trim(q), rem


def _rem_p(a, b, p):
    return _divmod_p(a, b, p)[1]


def _powmod_p(base, e, mod, p):
    result = [1]
    base = _rem_p(base, mod, p)
    while e:
        if e & 1:
            result = _rem_p(_mul_p(result, base, p), mod, p)
        e >>= 1
        if e:
            base = _rem_p(_mul_p(base, base, p), mod, p)
    return result


def _gcd_p(a, b, p):
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _rem_p(a, b, p)
    if a:
        inv = pow(a[-1], -1, p)
        a = [c * inv % p for c in a]
    return a


def _sub_p(a, b, p):
    n = max(len(a), len(b))
    return _trim([((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p for i in range(n)])


def _deriv_p(a, p):
    return _trim([i * a[i] % p for i in range(1, len(a))])


# ---------------------------------------------------------------------------


class PolyRing:
    """R[var] used as a coefficient ring (e.g. F_p[t] for nested resultants)."""

    is_field = False

    def __init__(self, base, var="y"):
        self.base = base
        self.var = var
        self.characteristic = base.characteristic
        self.zero = UniPoly(base, [], var)
        self.one = UniPoly(base, [base.one], var)

    def __call__(self, x):
        if isinstance(x, UniPoly):
            return x
        return UniPoly(self.base, [self.base(x)], self.var)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def is_zero(self, a):
        return a.is_zero()

    def divexact(self, a, b):
        q, r = divmod(a, b)
        if not r.is_zero():
            raise ArithmeticError("inexact division in polynomial ring")
        return q

    def __eq__(self, other):
        return isinstance(other, PolyRing) and (other.base, other.var) == (self.base, self.var)

    def __hash__(self):
        return hash(("PolyRing", self.base, self.var))

    def __repr__(self):
        return f"{self.base!r}[{self.var}]"


class UniPoly:
    """Immutable dense polynomial in one variable."""

    __slots__ = ("ring", "coeffs", "var")

    def __init__(self, ring, coeffs=(), var="x"):
        coeffs = [ring(c) for c in coeffs]
        while coeffs and ring.is_zero(coeffs[-1]):
            coeffs.pop()
        self.ring = ring
        self.coeffs = tuple(coeffs)
        self.var = var

    @classmethod
    def _raw(cls, ring, coeffs, var):
        obj = object.__new__(cls)
        obj.ring = ring
        obj.coeffs = tuple(coeffs)
        obj.var = var
        return obj

    @classmethod
    def gen(cls, ring, var="x"):
        return cls(ring, [ring.zero, ring.one], var)

    @classmethod
    def constant(cls, ring, c, var="x"):
        return cls(ring, [c], var)

    @classmethod
    def from_roots(cls, ring, roots, var="x"):
        f = cls(ring, [ring.one], var)
        for r in roots:
            f = f * cls(ring, [ring.neg(ring(r)), ring.one], var)
        return f

    # -- basic properties -------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lc(self):
        return self.coeffs[-1] if self.coeffs else self.ring.zero

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def _fp(self):
        return isinstance(self.ring, PrimeField)

    def _check(self, other):
        if not isinstance(other, UniPoly):
            return UniPoly(self.ring, [other], self.var)
        if other.ring != self.ring:
            raise CharacteristicMismatchError(f"{self.ring!r} vs {other.ring!r}")
        return other

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        other = self._check(other)
        R = self.ring
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        return UniPoly(R, [R.add(a[i] if i < len(a) else R.zero, b[i] if i < len(b) else R.zero)
                           for i in range(n)], self.var)

    __radd__ = __add__

    def __neg__(self):
        return UniPoly._raw(self.ring, [self.ring.neg(c) for c in self.coeffs], self.var)

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) - self

    def __mul__(self, other):
        other = self._check(other)
        R = self.ring
        if self._fp():
            return UniPoly._raw(R, _mul_p(list(self.coeffs), list(other.coeffs), R.p), self.var)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return UniPoly._raw(R, [], self.var)
        out = [R.zero] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if R.is_zero(x):
                continue
            for j, y in enumerate(b):
                out[i + j] = R.add(out[i + j], R.mul(x, y))
        return UniPoly(R, out, self.var)

    __rmul__ = __mul__

    def scale(self, c):
        R = self.ring
        return UniPoly(R, [R.mul(c, x) for x in self.coeffs], self.var)

    def __pow__(self, e: int):
        result = UniPoly(self.ring, [self.ring.one], self.var)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __divmod__(self, other):
        other = self._check(other)
        R = self.ring
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        if self._fp():
            q, r = _divmod_p(list(self.coeffs), list(other.coeffs), R.p)
            return UniPoly._raw(R, q, self.var), UniPoly._raw(R, r, self.var)
        a = list(self.coeffs)
        db = other.degree
        lead = other.lc
        if len(a) <= db:
            return UniPoly(R, [], self.var), self
        q = [R.zero] * (len(a) - db)
        for i in range(len(a) - 1, db - 1, -1):
            if R.is_zero(a[i]):
                continue
            if R.is_field:
                c = R.div(a[i], lead)
            else:
                c = R.divexact(a[i], lead)
            q[i - db] = c
            for j in range(db + 1):
                a[i - db + j] = R.sub(a[i - db + j], R.mul(c, other.coeffs[j]))
        return UniPoly(R, q, self.var), UniPoly(R, a[:db], self.var)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __eq__(self, other):
        if not isinstance(other, UniPoly):
            try:
                other = UniPoly(self.ring, [other], self.var)
            except (TypeError, ValueError):
                return NotImplemented
        return self.ring == other.ring and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.ring, self.coeffs))

    def __call__(self, x):
        """Horner evaluation; ``x`` may lie in the coefficient ring or any
        ring that accepts ``+`` and ``*`` with the coefficients."""
        R = self.ring
        if isinstance(x, UniPoly):
            acc = UniPoly(x.ring, [], x.var)
            for c in reversed(self.coeffs):
                acc = acc * x + c
            return acc
        acc = R.zero
        for c in reversed(self.coeffs):
            acc = R.add(R.mul(acc, x), c)
        return acc

    def derivative(self):
        R = self.ring
        return UniPoly(R, [R.mul(R(i), self.coeffs[i]) for i in range(1, len(self.coeffs))], self.var)

    def monic(self):
        if self.is_zero():
            return self
        inv = self.ring.inv(self.lc)
        return self.scale(inv)

    def powmod(self, e: int, mod: "UniPoly"):
        if self._fp():
            p = self.ring.p
            return UniPoly._raw(self.ring, _powmod_p(list(self.coeffs), e, list(mod.coeffs), p), self.var)
        result = UniPoly(self.ring, [self.ring.one], self.var)
        base = self % mod
        while e:
            if e & 1:
                result = (result * base) % mod
            base = (base * base) % mod
            e >>= 1
        return result

    def map_coeffs(self, ring, fn=None):
        fn = fn or ring
        return UniPoly(ring, [fn(c) for c in self.coeffs], self.var)

    def reduce_mod(self, p: int) -> "UniPoly":
        """Reduce a polynomial over Q (or Z) modulo p."""
        return UniPoly(GF(p), [GF(p)(c) for c in self.coeffs], self.var)

    def __repr__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if self.ring.is_zero(c):
                continue
            mono = "" if i == 0 else (self.var if i == 1 else f"{self.var}^{i}")
            parts.append(f"({c})*{mono}" if mono else f"({c})")
        return " + ".join(parts)


# ---------------------------------------------------------------------------
# gcd, resultants


def poly_gcd(f: UniPoly, g: UniPoly) -> UniPoly:
    """Monic gcd over a field."""
    if f.ring != g.ring:
        raise CharacteristicMismatchError(f"{f.ring!r} vs {g.ring!r}")
    if isinstance(f.ring, PrimeField):
        return UniPoly._raw(f.ring, _gcd_p(list(f.coeffs), list(g.coeffs), f.ring.p), f.var)
    a, b = f, g
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def sylvester_matrix(f: UniPoly, g: UniPoly):
    """Rows ``0..deg g - 1`` carry shifted coefficients of f, the remaining
    ``deg f`` rows carry those of g (highest degree first)."""
    m, n = f.degree, g.degree
    R = f.ring
    size = m + n
    fh = list(reversed(f.coeffs))
    gh = list(reversed(g.coeffs))
    rows = []
    for i in range(n):
        rows.append([R.zero] * i + fh + [R.zero] * (size - m - 1 - i))
    for i in range(m):
        rows.append([R.zero] * i + gh + [R.zero] * (size - n - 1 - i))
    return rows


def determinant(rows, ring):
    """Determinant by Gaussian elimination (fields) or Bareiss (rings)."""
    n = len(rows)
    if n == 0:
        return ring.one
    a = [list(r) for r in rows]
    sign = 1
    if ring.is_field:
        det = ring.one
        for col in range(n):
            piv = next((r for r in range(col, n) if not ring.is_zero(a[r][col])), None)
            if piv is None:
                return ring.zero
            if piv != col:
                a[col], a[piv] = a[piv], a[col]
                sign = -sign
            det = ring.mul(det, a[col][col])
            inv = ring.inv(a[col][col])
            for r in range(col + 1, n):
                if ring.is_zero(a[r][col]):
                    continue
                fac = ring.mul(a[r][col], inv)
                for c in range(col, n):
                    a[r][c] = ring.sub(a[r][c], ring.mul(fac, a[col][c]))
        return det if sign == 1 else ring.neg(det)
    prev = ring.one
    for k in range(n - 1):
        piv = next((r for r in range(k, n) if not ring.is_zero(a[r][k])), None)
        if piv is None:
            return ring.zero
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = ring.sub(ring.mul(a[i][j], a[k][k]), ring.mul(a[i][k], a[k][j]))
                a[i][j] = ring.divexact(num, prev)
            a[i][k] = ring.zero
        prev = a[k][k]
    det = a[n - 1][n - 1]
    return det if sign == 1 else ring.neg(det)


class _IntegerRing:
    is_field = False
    characteristic = 0
    zero = 0
    one = 1

    def __call__(self, x):
        return int(x)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def is_zero(self, a):
        return a == 0

    def divexact(self, a, b):
        q, r = divmod(a, b)
        if r:
            raise ArithmeticError("inexact integer division")
        return q


ZZ = _IntegerRing()


def poly_resultant(f: UniPoly, g: UniPoly):
    """Res(f, g) as the determinant of :func:`sylvester_matrix`."""
    if f.is_zero() or g.is_zero():
        raise ValueError("resultant of a zero polynomial")
    if f.ring != g.ring:
        raise CharacteristicMismatchError(f"{f.ring!r} vs {g.ring!r}")
    return determinant(sylvester_matrix(f, g), f.ring)


# ---------------------------------------------------------------------------
# interpolation


def interpolate(field, xs, ys, var="x") -> UniPoly:
    """Newton interpolation through the points ``(xs[i], ys[i])``."""
    n = len(xs)
    coef = list(ys)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = field.div(field.sub(coef[i], coef[i - 1]), field.sub(xs[i], xs[i - j]))
    poly = UniPoly(field, [coef[-1]], var)
    for i in range(n - 2, -1, -1):
        poly = poly * UniPoly(field, [field.neg(xs[i]), field.one], var) + UniPoly(field, [coef[i]], var)
    return poly


# ---------------------------------------------------------------------------
# squarefree decomposition and factorization over F_p


def is_squarefree(f: UniPoly) -> bool:
    return poly_gcd(f, f.derivative()).degree == 0


def _pth_root(f: UniPoly) -> UniPoly:
    p = f.ring.p
    return UniPoly._raw(f.ring, [f.coeffs[i] for i in range(0, len(f.coeffs), p)], f.var)


def squarefree_decomposition(f: UniPoly):
    """Return [(g, m), ...] with f = lc * prod g^m, each g monic squarefree
    and pairwise coprime.  Handles characteristic p."""
    if f.is_zero():
        raise ValueError("zero polynomial")
    f = f.monic()
    out = Counter()
    _sqf(f, 1, out)
    return sorted(((g, m) for g, m in out.items() if g.degree > 0), key=lambda t: (t[1], t[0].coeffs))


def _sqf(f, mult, out):
    if f.degree <= 0:
        return
    df = f.derivative()
    if df.is_zero():
        _sqf(_pth_root(f), mult * f.ring.p, out)
        return
    c = poly_gcd(f, df)
    w = f // c
    i = 1
    while w.degree > 0:
        y = poly_gcd(w, c)
        z = w // y
        if z.degree > 0:
            out[z.monic()] += mult * i
        i += 1
        w = y
        c = c // y
    if c.degree > 0:
        # remaining part is a p-th power
        _sqf(_pth_root(c.monic()), mult * f.ring.p, out)


def _xpow_frobenius(f: UniPoly, d: int):
    """x^(p^d) mod f."""
    p = f.ring.p
    x = [0, 1]
    h = x
    for _ in range(d):
        h = _powmod_p(h, p, list(f.coeffs), p)
    return h


def distinct_degree_factorization(f: UniPoly):
    """For monic squarefree f over F_p return [(g_d, d)] where g_d is the
    product of all irreducible factors of degree d."""
    if not isinstance(f.ring, PrimeField):
        raise TypeError("distinct-degree factorization needs a prime field")
    p = f.ring.p
    rest = list(f.monic().coeffs)
    out = []
    h = [0, 1]
    d = 0
    while len(rest) - 1 >= 2 * (d + 1):
        d += 1
        h = _powmod_p(h, p, rest, p)
        g = _gcd_p(rest, _sub_p(h, [0, 1], p), p)
        if len(g) > 1:
            out.append((UniPoly._raw(f.ring, g, f.var), d))
            rest = _divmod_p(rest, g, p)[0]
            h = _rem_p(h, rest, p)
    if len(rest) > 1:
        out.append((UniPoly._raw(f.ring, rest, f.var), len(rest) - 1))
    return out


def equal_degree_split(f: UniPoly, d: int, rng: random.Random):
    """Cantor-Zassenhaus splitting of a product of degree-d irreducibles."""
    n = f.degree
    if n == d:
        return [f.monic()]
    p = f.ring.p
    fc = list(f.coeffs)
    while True:
        a = _trim([rng.randrange(p) for _ in range(n)])
        if len(a) < 2:
            continue
        if p == 2:
            # trace map a + a^2 + ... + a^(2^(kd-1)) with q = 2
            t = a
            acc = a
            for _ in range(d - 1):
                t = _rem_p(_mul_p(t, t, p), fc, p)
                acc = _sub_p(acc, [(-c) % p for c in t], p)
            b = acc
        else:
            e = (p ** d - 1) // 2
            b = _sub_p(_powmod_p(a, e, fc, p), [1], p)
        g = _gcd_p(fc, b, p)
        if 0 < len(g) - 1 < n:
            g_poly = UniPoly._raw(f.ring, g, f.var)
            return (equal_degree_split(g_poly, d, rng)
                    + equal_degree_split(UniPoly._raw(f.ring, _divmod_p(fc, g, p)[0], f.var), d, rng))


def factor_fp(f: UniPoly, seed: int = 0):
    """Factor f over F_p into monic irreducibles: [(factor, multiplicity)].

    The product of the factors (with multiplicity) times ``f.lc`` is f.
    Randomized equal-degree splitting is driven by ``seed``.
    """
    if not isinstance(f.ring, PrimeField):
        p = getattr(f.ring, "p", None)
        if p is not None and not is_prime(p):
            raise ValueError(f"{p} is not prime")
        raise TypeError("factor_fp needs a polynomial over a prime field")
    if f.is_zero():
        raise ValueError("cannot factor the zero polynomial")
    rng = random.Random(seed)
    out = []
    for g, m in squarefree_decomposition(f):
        for prod, d in distinct_degree_factorization(g):
            for h in equal_degree_split(prod, d, rng):
                out.append((h, m))
    out.sort(key=lambda t: (t[0].degree, t[0].coeffs, t[1]))
    return out


def cycle_type_fp(f: UniPoly):
    """Sorted degrees of the irreducible factors of a squarefree f over F_p."""
    if f.degree < 1:
        return []
    g = poly_gcd(f, f.derivative())
    if g.degree > 0:
        raise NotSquarefreeError(g)
    degs = []
    for prod, d in distinct_degree_factorization(f):
        degs.extend([d] * (prod.degree // d))
    return sorted(degs)


def is_irreducible_fp(f: UniPoly) -> bool:
    """Ben-Or test: no common factor with x^(p^d) - x for d <= deg/2."""
    n = f.degree
    if n < 1:
        return False
    if n == 1:
        return True
    p = f.ring.p
    fc = list(f.monic().coeffs)
    h = [0, 1]
    for _ in range(n // 2):
        h = _powmod_p(h, p, fc, p)
        if len(_gcd_p(fc, _sub_p(h, [0, 1], p), p)) > 1:
            return False
    return True


def first_irreducible(p: int, k: int) -> UniPoly:
    """Lexicographically first monic irreducible of degree k over F_p."""
    F = GF(p)
    for idx in range(p ** k):
        digits = []
        for _ in range(k):
            idx, r = divmod(idx, p)
            digits.append(r)
        f = UniPoly(F, digits + [1])
        if is_irreducible_fp(f):
            return f
    raise ValueError("no irreducible polynomial found")  # unreachable


# ---------------------------------------------------------------------------
# helpers over Q


def clear_denominators(f: UniPoly) -> UniPoly:
    """Primitive integer multiple of f (as a polynomial over QQ)."""
    from math import gcd

    den = 1
    for c in f.coeffs:
        den = den * Fraction(c).denominator // gcd(den, Fraction(c).denominator)
    ints = [int(Fraction(c) * den) for c in f.coeffs]
    g = 0
    for c in ints:
        g = gcd(g, c)
    g = g or 1
    if ints and ints[-1] < 0:
        g = -g
    return UniPoly(QQ, [c // g for c in ints], f.var)


def rational_roots(f: UniPoly):
    """All rational roots of f over QQ (rational root theorem)."""
    from math import gcd, isqrt

    if f.is_zero():
        raise ValueError("zero polynomial")
    f = clear_denominators(f)
    roots = set()
    coeffs = [int(c) for c in f.coeffs]
    while coeffs and coeffs[0] == 0:
        roots.add(Fraction(0))
        coeffs = coeffs[1:]
    if len(coeffs) <= 1:
        return sorted(roots)
    a0, an = abs(coeffs[0]), abs(coeffs[-1])

    def divisors(n):
        out = set()
        for d in range(1, isqrt(n) + 1):
            if n % d == 0:
                out.update((d, n // d))
        return out

    g = UniPoly(QQ, coeffs, f.var)
    for num in divisors(a0):
        for den in divisors(an):
            if gcd(num, den) != 1:
                continue
            for r in (Fraction(num, den), Fraction(-num, den)):
                if g(r) == 0:
                    roots.add(r)
    return sorted(roots)


# ---------------------------------------------------------------------------
# factorisation over Q: factor mod p, Hensel-lift, recombine (Zassenhaus)


def _xgcd_p(a, b, p):
    """(s, t) with s*a + t*b = 1 mod p, for coprime a, b."""
    r0, r1 = _trim(list(a)), _trim(list(b))
    s0, s1, t0, t1 = [1], [], [], [1]
    while r1:
        q, r = _divmod_p(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, _sub_p(s0, _mul_p(q, s1, p), p)
        t0, t1 = t1, _sub_p(t0, _mul_p(q, t1, p), p)
    if len(r0) != 1:
        raise ArithmeticError("polynomials are not coprime mod p")
    inv = pow(r0[0], -1, p)
    return [c * inv % p for c in s0], [c * inv % p for c in t0]


def _hensel_lift(F, g, h, p, steps):
    """Lift monic F = g*h (mod p) to mod p^(steps+1); g, h monic."""
    s, t = _xgcd_p(g, h, p)
    pk = p
    for _ in range(steps):
        gh = _mul_p(g, h, pk * p * pk)
        diff = [((F[i] if i < len(F) else 0) - (gh[i] if i < len(gh) else 0)) for i in range(max(len(F), len(gh)))]
        if any(x % pk for x in diff):
            raise AssertionError("Hensel invariant broken")
        e = _trim([(x // pk) % p for x in diff])
        q, dg = _divmod_p(_mul_p(t, e, p), g, p)
        dh = _trim([(x + y) % p for x, y in _zip_pad(_mul_p(s, e, p), _mul_p(q, h, p))])
        npk = pk * p
        g = _trim([(x + pk * y) % npk for x, y in _zip_pad(g, dg)])
        h = _trim([(x + pk * y) % npk for x, y in _zip_pad(h, dh)])
        pk = npk
    return g, h


def _zip_pad(a, b):
    n = max(len(a), len(b))
    return [((a[i] if i < len(a) else 0), (b[i] if i < len(b) else 0)) for i in range(n)]


def _symmetric(c, m):
    c %= m
    return c - m if c > m // 2 else c


def _int_divmod(a, b):
    """Exact division of integer polynomials; None if it does not divide."""
    a = list(a)
    db = len(b) - 1
    q = [0] * max(len(a) - db, 0)
    for i in range(len(a) - 1, db - 1, -1):
        if a[i] % b[-1]:
            return None
        c = a[i] // b[-1]
        q[i - db] = c
        for j in range(db + 1):
            a[i - db + j] -= c * b[j]
    if any(a[:db]):
        return None
    return _trim(q)


def _primitive(a):
    from math import gcd

    g = 0
    for c in a:
        g = gcd(g, c)
    a = [c // g for c in a]
    return [-c for c in a] if a[-1] < 0 else a


def _zassenhaus(g):
    """Irreducible factors over Z of a primitive squarefree integer polynomial."""
    n = len(g) - 1
    if n <= 1:
        return [g]
    lc = g[-1]
    p = 3
    while True:
        if lc % p and is_prime(p):
            Fp = PrimeField(p)
            gp = UniPoly(Fp, [c % p for c in g])
            if gp.degree == n and is_squarefree(gp):
                break
        p += 2
    facs = [h for h, _ in factor_fp(gp)]
    if len(facs) == 1:
        return [g]
    norm = sum(c * c for c in g) ** 0.5
    bound = 2 * abs(lc) * (2 ** n) * (int(norm) + 1)
    steps, pk = 0, p
    while pk <= 2 * bound:
        pk *= p
        steps += 1
    mod = pk
    inv_lc = pow(lc, -1, mod)
    F = [c * inv_lc % mod for c in g]
    Fp_monic = [c % p for c in F]
    lifted = []
    for h in facs:
        hl = [int(c) for c in h.coeffs]
        co, r = _divmod_p(Fp_monic, hl, p)
        if r:
            raise AssertionError("factor does not divide mod p")
        lg, _ = _hensel_lift(F, hl, co, p, steps)
        lifted.append(lg)
    out = []
    rest = list(g)
    size = 1
    from itertools import combinations

    while 2 * size <= len(lifted):
        found = False
        for S in combinations(range(len(lifted)), size):
            lcr = rest[-1]
            prod = [lcr % mod]
            for i in S:
                prod = _mul_p(prod, lifted[i], mod)
            cand = _primitive(_trim([_symmetric(c, mod) for c in prod]))
            q = _int_divmod(rest, cand)
            if q is not None:
                out.append(cand)
                rest = q
                lifted = [lifted[i] for i in range(len(lifted)) if i not in S]
                found = True
                break
        if not found:
            size += 1
    out.append(_primitive(rest))
    return out


def factor_rational(f: UniPoly):
    """Factor a nonzero polynomial over Q: (lc, [(monic irreducible, multiplicity)])."""
    if f.is_zero():
        raise ValueError("cannot factor the zero polynomial")
    lc = Fraction(f.lc)
    if f.degree == 0:
        return lc, []
    out = []
    for g, m in squarefree_decomposition(f.monic()):
        ints = [int(c) for c in clear_denominators(g).coeffs]
        for h in _zassenhaus(ints):
            out.append((UniPoly(QQ, [Fraction(c, h[-1]) for c in h], f.var), m))
    out.sort(key=lambda t: (t[0].degree, [Fraction(c) for c in t[0].coeffs], t[1]))
    return lc, out
