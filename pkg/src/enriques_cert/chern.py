"""Intersection rings of products of projective spaces and of the P^1-bundle
P_A = P(O(2,0) + O(0,2)) over P^2 x P^2, with Chern and Todd calculus.

Classes are dicts ``{exponent tuple: Fraction}`` over the ring generators,
kept reduced: generator g with nilpotency order n satisfies g^n = 0, and the
bundle class xi (when present) satisfies xi^2 = c1*xi - c2.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache


class InconsistencyError(ArithmeticError):
    """A quantity that must be an integer (or must vanish) did not."""


class TruncatedRing:
    def __init__(self, names, nilpotency, top, relation=None, label=""):
        """``nilpotency[g]`` is the least n with g^n = 0 (None for the
        bundle generator); ``relation = (g, c1, c2)`` gives g^2 = c1*g - c2
        with c1, c2 classes not involving g; ``top`` is the exponent vector
        of the monomial with integral 1."""
        self.names = tuple(names)
        self.nil = tuple(nilpotency[n] for n in self.names)
        self.top = tuple(top)
        self.dim = sum(self.top)
        self.label = label
        self.relation = None
        if relation is not None:
            g, c1, c2 = relation
            self.relation = (self.names.index(g), c1, c2)

    def gen(self, name) -> "CohomologyClass":
        e = [0] * len(self.names)
        e[self.names.index(name)] = 1
        return CohomologyClass(self, {tuple(e): Fraction(1)})

    def gens(self):
        return [self.gen(n) for n in self.names]

    def one(self):
        return CohomologyClass(self, {(0,) * len(self.names): Fraction(1)})

    def zero(self):
        return CohomologyClass(self, {})

    def scalar(self, c):
        return self.one() * c

    def _reduce_monomial(self, e):
        """Reduced form of a single monomial as a dict."""
        for i, n in enumerate(self.nil):
            if n is not None and e[i] >= n:
                return {}
        if sum(e) > self.dim:
            return {}
        if self.relation is not None:
            gi, c1, c2 = self.relation
            if e[gi] >= 2:
                rest = list(e)
                rest[gi] -= 2
                base = CohomologyClass(self, {tuple(rest): Fraction(1)}, reduce=False)
                g = CohomologyClass(self, {tuple(1 if j == gi else 0 for j in range(len(e))): Fraction(1)},
                                    reduce=False)
                expr = base * (c1 * g - c2)
                return expr.terms
        return {tuple(e): Fraction(1)}

    def __repr__(self):
        return f"TruncatedRing({self.label or ','.join(self.names)})"


class CohomologyClass:
    __slots__ = ("ring", "terms")

    def __init__(self, ring: TruncatedRing, terms, reduce: bool = True):
        self.ring = ring
        if reduce:
            out = {}
            for e, c in terms.items():
                if c == 0:
                    continue
                for e2, c2 in ring._reduce_monomial(e).items():
                    out[e2] = out.get(e2, Fraction(0)) + c * c2
            self.terms = {e: c for e, c in out.items() if c != 0}
        else:
            self.terms = {e: Fraction(c) for e, c in terms.items() if c != 0}

    def _coerce(self, other):
        if isinstance(other, CohomologyClass):
            if other.ring is not self.ring:
                raise ValueError("classes from different rings")
            return other
        return self.ring.scalar(Fraction(other))

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, Fraction(0)) + c
        return CohomologyClass(self.ring, {e: c for e, c in out.items() if c != 0}, reduce=False)

    __radd__ = __add__

    def __neg__(self):
        return CohomologyClass(self.ring, {e: -c for e, c in self.terms.items()}, reduce=False)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, CohomologyClass):
            c = Fraction(other)
            return CohomologyClass(self.ring, {e: v * c for e, v in self.terms.items()}, reduce=False)
        other = self._coerce(other)
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, Fraction(0)) + c1 * c2
        return CohomologyClass(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        out = self.ring.one()
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        other = self._coerce(other)
        return (self - other).terms == {}

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def part(self, k: int) -> "CohomologyClass":
        return CohomologyClass(self.ring, {e: c for e, c in self.terms.items() if sum(e) == k}, reduce=False)

    def constant(self) -> Fraction:
        return self.terms.get((0,) * len(self.ring.names), Fraction(0))

    def coefficient(self, **exps) -> Fraction:
        e = tuple(exps.get(n, 0) for n in self.ring.names)
        return self.terms.get(e, Fraction(0))

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in sorted(self.terms.items(), key=lambda t: (sum(t[0]), t[0])):
            mono = "*".join(n if k == 1 else f"{n}^{k}" for n, k in zip(self.ring.names, e) if k)
            parts.append(f"{c}" + (f"*{mono}" if mono else ""))
        return " + ".join(parts)


def integrate(c: CohomologyClass) -> Fraction:
    """Coefficient of the top monomial (all other terms integrate to 0)."""
    return c.terms.get(c.ring.top, Fraction(0))


# ---------------------------------------------------------------------------
# standard rings


def ring_product(dims, names=None) -> TruncatedRing:
    """H^* of P^{d_1} x ... x P^{d_r}."""
    names = names or [f"h{i + 1}" for i in range(len(dims))]
    return TruncatedRing(names, {n: d + 1 for n, d in zip(names, dims)}, dims,
                         label=" x ".join(f"P{d}" for d in dims))


def ring_P1P2P2() -> TruncatedRing:
    return ring_product((1, 2, 2), ("f", "h1", "h2"))


def ring_P1PA() -> TruncatedRing:
    """P^1 x P_A with xi^2 = (2h1 + 2h2) xi - 4 h1 h2, i.e. (xi-2h1)(xi-2h2) = 0."""
    ring = TruncatedRing(("f", "h1", "h2", "xi"), {"f": 2, "h1": 3, "h2": 3, "xi": None}, (1, 2, 2, 1),
                         label="P1 x P_A")
    h1, h2 = ring.gen("h1"), ring.gen("h2")
    ring.relation = (3, 2 * h1 + 2 * h2, 4 * h1 * h2)
    return ring


@lru_cache(maxsize=None)
def P1PA() -> TruncatedRing:
    return ring_P1PA()


# ---------------------------------------------------------------------------
# characteristic classes of sums of line bundles


@lru_cache(maxsize=None)
def todd_coefficients(n: int):
    """Coefficients of x / (1 - e^{-x}) up to x^n."""
    # (1 - e^{-x}) / x = sum (-1)^k x^k / (k+1)!
    a = []
    fact = 1
    for k in range(n + 1):
        fact *= (k + 1)
        a.append(Fraction((-1) ** k, fact))
    b = [Fraction(0)] * (n + 1)
    b[0] = Fraction(1) / a[0]
    for m in range(1, n + 1):
        b[m] = -sum(a[j] * b[m - j] for j in range(1, m + 1)) / a[0]
    return tuple(b)


def todd_line(D: CohomologyClass) -> CohomologyClass:
    ring = D.ring
    out = ring.zero()
    power = ring.one()
    for c in todd_coefficients(ring.dim):
        out = out + power * c
        power = power * D
    return out


def invert(c: CohomologyClass) -> CohomologyClass:
    """Inverse of a class with constant term 1."""
    if c.constant() != 1:
        raise ValueError("can only invert classes with constant term 1")
    ring = c.ring
    nil = ring.one() - c
    out = ring.one()
    power = ring.one()
    for _ in range(ring.dim):
        power = power * nil
        out = out + power
    return out


def total_chern(plus, minus=()) -> CohomologyClass:
    """c of the virtual bundle sum L(plus) - sum L(minus)."""
    ring = (plus[0] if plus else minus[0]).ring
    out = ring.one()
    for D in plus:
        out = out * (ring.one() + D)
    for D in minus:
        out = out * invert(ring.one() + D)
    return out


def total_todd(plus, minus=()) -> CohomologyClass:
    ring = (plus[0] if plus else minus[0]).ring
    out = ring.one()
    for D in plus:
        out = out * todd_line(D)
    for D in minus:
        out = out * invert(todd_line(D))
    return out


def porteous_class(c: CohomologyClass, e: int, f: int, k: int) -> CohomologyClass:
    """Class of {rank <= k} for a map O^e -> F (rank f), given c = c(F):
    det of the (e-k) x (e-k) matrix with entries c_{f-k+j-i}."""
    m = e - k
    parts = [c.part(i) for i in range(c.ring.dim + 1)]

    def cc(i):
        if i < 0 or i >= len(parts):
            return c.ring.zero()
        return parts[i]

    M = [[cc(f - k + j - i) for j in range(m)] for i in range(m)]
    return _det(M, c.ring)


def _det(M, ring):
    n = len(M)
    if n == 1:
        return M[0][0]
    acc = ring.zero()
    for j in range(n):
        minor = [row[:j] + row[j + 1:] for row in M[1:]]
        term = M[0][j] * _det(minor, ring)
        acc = acc + (term if j % 2 == 0 else -term)
    return acc


def thom_porteous_rank1(roots) -> CohomologyClass:
    """Class of the rank <= 1 locus of O^3 -> E for E = L(a) + L(b).

    For a 2x3 matrix the rank <= 1 locus has codimension 2 and class
    c1(E)^2 - c2(E).  (Sanity anchor: a generic 2x3 matrix of linear forms
    on P^3 cuts out a twisted cubic, and c1^2 - c2 = 4h^2 - h^2 = 3h^2.)
    """
    if len(roots) != 2:
        raise ValueError("E must be given by two line-bundle roots")
    return porteous_class(total_chern(list(roots)), 3, 2, 1)


# ---------------------------------------------------------------------------
# counts


def bezout_count(n: int, method: str = "ring") -> int:
    """Number of points of (2n+1) divisors of type (2,2) on P^1 x P^{2n}."""
    if n < 1:
        raise ValueError("n must be positive")
    if method == "ring":
        R = ring_product((1, 2 * n), ("f", "h"))
        f, h = R.gens()
        val = integrate((2 * f + 2 * h) ** (2 * n + 1))
        if val.denominator != 1:
            raise InconsistencyError("non-integral intersection number")
        return int(val)
    if method == "binomial":
        # (2f + 2h)^m with f^2 = 0 and h^{2n} top: only the f^1 h^{2n} term survives
        m = 2 * n + 1
        from math import comb

        return comb(m, 1) * 2 * 2 ** (m - 1)
    raise ValueError(f"unknown method {method!r}")


def _as_int(x, what):
    x = Fraction(x)
    if x.denominator != 1:
        raise InconsistencyError(f"{what} = {x} is not an integer")
    return int(x)


def chi_top_complete_intersection(ring, tangent_plus, tangent_minus, divisors) -> int:
    """Topological Euler characteristic of a complete intersection."""
    cT = total_chern(tangent_plus, tangent_minus)
    cN = total_chern(divisors)
    cX = cT * invert(cN)
    fundamental = ring.one()
    for D in divisors:
        fundamental = fundamental * D
    dimX = ring.dim - len(divisors)
    return _as_int(integrate(fundamental * cX.part(dimX)), "Euler characteristic")


def _p1pa_tangent():
    R = P1PA()
    f, h1, h2, xi = R.gens()
    plus = [f, f, h1, h1, h1, h2, h2, h2, xi - 2 * h1, xi - 2 * h2]
    return R, plus


def chi_top_X_direct() -> int:
    """chi_top of X as three (2,1)-divisors on P^1 x P_A."""
    R, plus = _p1pa_tangent()
    f, _, _, xi = R.gens()
    D = 2 * f + xi
    return chi_top_complete_intersection(R, plus, [], [D, D, D])


def chi_top_Ymin() -> int:
    R = ring_product((1, 5), ("f", "h"))
    f, h = R.gens()
    D = 2 * f + 2 * h
    return chi_top_complete_intersection(R, [f, f] + [h] * 6, [], [D, D, D])


def euler_characteristic_chain() -> dict:
    """chi(Y_min) by adjunction, chi(Y) after blowing up 48 points, chi(X)
    from the double cover ramified along the 48 exceptional planes."""
    chi_ymin = chi_top_Ymin()
    chi_p2 = 3
    chi_y = chi_ymin + 48 * (chi_p2 - 1)
    twice = chi_y + 48 * chi_p2
    if twice % 2:
        raise InconsistencyError("double-cover Euler characteristic is not integral")
    chi_x = twice // 2
    direct = chi_top_X_direct()
    if direct != chi_x:
        raise InconsistencyError(f"chain gives {chi_x} but the direct computation gives {direct}")
    return {"chi_Ymin": chi_ymin, "chi_Y": chi_y, "chi_X": chi_x, "chi_X_direct": direct,
            "chi_P1xP5": chi_top_product((1, 5))}


def chi_top_product(dims) -> int:
    out = 1
    for d in dims:
        out *= d + 1
    return out


def betti_b3(chi: int, b2: int) -> int:
    """b3 forced by chi = 2 + 2*b2 - b3 for a threefold with b1 = 0."""
    return 2 + 2 * b2 - chi


# ---------------------------------------------------------------------------
# Riemann-Roch


def hrr_chi(model: str = "X") -> int:
    """chi(O) via Hirzebruch-Riemann-Roch.

    ``X``: three (2,1)-divisors on P^1 x P_A.  ``enriques-fiber``: three
    divisors of class xi in P_A (cut out by f on P^1 x P_A).  ``P3``: toy.
    ``Ymin``: three (2,2)-divisors on P^1 x P^5.
    """
    if model == "X":
        R, plus = _p1pa_tangent()
        f, _, _, xi = R.gens()
        D = 2 * f + xi
        val = integrate(D ** 3 * total_todd(plus) * invert(total_todd([D, D, D])))
    elif model == "enriques-fiber":
        R, plus = _p1pa_tangent()
        f, _, _, xi = R.gens()
        fiber_plus = plus[2:]  # drop the P^1 tangent directions
        val = integrate(f * xi ** 3 * total_todd(fiber_plus) * invert(total_todd([xi, xi, xi])))
    elif model == "P3":
        R = ring_product((3,), ("h",))
        (h,) = R.gens()
        val = integrate(total_todd([h] * 4))
    elif model == "Ymin":
        R = ring_product((1, 5), ("f", "h"))
        f, h = R.gens()
        D = 2 * f + 2 * h
        val = integrate(D ** 3 * total_todd([f, f] + [h] * 6) * invert(total_todd([D, D, D])))
    else:
        raise ValueError(f"unknown model {model!r}")
    return _as_int(val, f"chi(O) of {model}")


# ---------------------------------------------------------------------------
# canonical classes


def canonical_ambient_restriction():
    """K_X = (K_{P^1 x P_A} + 3*(2f + xi))|_X as a class in the ambient ring.

    K_{P^1} = -2f and K_{P_A} = -2 xi + (K_{P^2 x P^2} + c1(O(2,0) + O(0,2)))
    = -2 xi - h1 - h2.
    """
    R = P1PA()
    f, h1, h2, xi = R.gens()
    K_amb = -2 * f - 2 * xi - h1 - h2
    return K_amb + 3 * (2 * f + xi)


def canonical_Ymin():
    R = ring_product((1, 5), ("f", "h"))
    f, h = R.gens()
    return R, (-2 * f - 6 * h) + 3 * (2 * f + 2 * h)


def canonical_P2():
    R = ring_product((2,), ("h",))
    (h,) = R.gens()
    return -3 * h


def canonical_class_check() -> dict:
    """K_X in H^2(X) coordinates by two routes.

    Adjunction gives K_X = 4f + xi - h1 - h2; with the divisors
    E_1 = xi - 2h2 and E_2 = xi - 2h1 on P_A (so xi|_X = sum E_1 + 2H2 and
    E_1 E_2 = 0), K_X = 4F + sum E_1 + H2 - H1, i.e. 2K_X = 8F + sum sum E.

    The Y-route: K_{Y_min} = 4F, blowing up points gives K_Y = 4F + 2 sum F_ij,
    and the double cover ramified along the F_ij gives pi^*K_X = K_Y - sum F_ij.
    The adjunction answer is pulled back (pi^*E_ij = 2F_ij) and compared
    with that in H^2(Y).
    """
    from .lattice import h2_presentation, in_relation_span, label_vector, pullback_matrix

    K = canonical_ambient_restriction()
    R = K.ring
    f, h1, h2, xi = R.gens()
    E1 = xi - 2 * h2
    E2 = xi - 2 * h1
    if not (E1 * E2) == R.zero():
        raise InconsistencyError("E_1 and E_2 sections meet")
    # express K in the basis (f, h1, h2, E1): K = a f + b h1 + c h2 + d E1
    d = K.coefficient(xi=1)
    rest = K - d * E1
    a, b, c = rest.coefficient(f=1), rest.coefficient(h1=1), rest.coefficient(h2=1)
    if rest != a * f + b * h1 + c * h2:
        raise InconsistencyError("canonical class not in the span of f, h1, h2, E1")
    G = h2_presentation("X")
    K_vec = label_vector(G, {"F": a, "H1": b, "H2": c, **{f"E1_{j}": d for j in range(1, 25)}})
    two_K = [2 * x for x in K_vec]
    sum_E = label_vector(G, {**{f"E1_{j}": 1 for j in range(1, 25)}, **{f"E2_{j}": 1 for j in range(1, 25)}})
    F_vec = label_vector(G, {"F": 1})
    diff_adjunction = [x - y - 8 * z for x, y, z in zip(two_K, sum_E, F_vec)]
    diff_stated = [x - y - 2 * z for x, y, z in zip(two_K, sum_E, F_vec)]

    # Y-route: pi^*K_X must equal K_Y - sum F_ij = fy F + sum F_ij in H^2(Y)
    R2, K_ymin = canonical_Ymin()
    fy = K_ymin.coefficient(f=1)
    if K_ymin != R2.gen("f") * fy:
        raise InconsistencyError("K_Ymin is not a multiple of the fiber class")
    GY = h2_presentation("Y")
    P = pullback_matrix()
    pulled = [sum(K_vec[r] * P[r][c] for r in range(len(K_vec))) for c in range(len(GY.labels))]
    target = label_vector(GY, {"F": fy, **{f"F{i}_{j}": 1 for i in (1, 2) for j in range(1, 25)}})
    y_route_ok = in_relation_span(GY, [x - y for x, y in zip(pulled, target)])

    return {
        "K_X_ambient": repr(K),
        "K_X_coords": {"F": int(a), "H1": int(b), "H2": int(c), "E1_j": int(d)},
        "F_coefficient_adjunction": int(a) if d == 1 and b == -c else None,
        "two_K_minus_8F_minus_sumE_is_zero": in_relation_span(G, diff_adjunction),
        "two_K_minus_2F_minus_sumE_is_zero": in_relation_span(G, diff_stated),
        "K_Ymin_F_coefficient": int(fy),
        "pullback_matches_K_Y_minus_ramification": y_route_ok,
        "routes_agree": y_route_ok and int(a) == int(fy),
        "K_P2": repr(canonical_P2()),
    }
