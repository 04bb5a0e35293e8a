"""Eliminating x from three quadrics in x whose coefficients are binary forms.

For conics f, g, h in x0, x1, x2 over a field, let J = det(d(f,g,h)/dx).
The 6x6 matrix whose rows are the coefficient vectors of f, g, h, dJ/dx0,
dJ/dx1, dJ/dx2 has determinant 512 * Res(f, g, h) (up to sign).  We
evaluate it at the points of a chart u = t / (s + c*t) of the (s:t)-line
and interpolate, which gives the eliminant as a univariate polynomial.
The 512 is divided out, so over an odd prime field the result is exactly
the reduction of the rational eliminant.
"""

from __future__ import annotations

from dataclasses import dataclass

from .fields import QQ, GF, PrimeField
from .multipoly import FRAME_STX, MultiPoly
from .unipoly import (
    UniPoly,
    PolyRing,
    determinant,
    interpolate,
    is_squarefree,
    poly_resultant,
    NotSquarefreeError,
)

QUAD_MONOMIALS = ((2, 0, 0), (0, 2, 0), (0, 0, 2), (1, 1, 0), (1, 0, 1), (0, 1, 1))


class DegreeDropError(ArithmeticError):
    """The eliminant lost degree under the chosen chart; retry another one."""

    def __init__(self, degree, expected, chart):
        super().__init__(f"eliminant has degree {degree} < {expected} in chart c={chart}; "
                         f"retry with a different chart (e.g. c={chart + 1})")
        self.degree = degree
        self.expected = expected
        self.chart = chart


class BadReductionError(ArithmeticError):
    """Input coefficients do not reduce modulo the requested prime."""


def split_binary(eq: MultiPoly):
    """{x-exponent: {(a, b): coeff}} for a form in the (s,t | x) frame."""
    out = {}
    for e, c in eq.terms.items():
        out.setdefault(e[2:], {})[e[:2]] = c
    return out


def st_degree(eq: MultiPoly) -> int:
    deg = eq.multidegree()
    if deg is None:
        raise ValueError("equation is not bihomogeneous")
    return deg[0]


def _conic_at(split, s, t, F):
    conic = {}
    for xe, binary in split.items():
        acc = F.zero
        for (a, b), c in binary.items():
            acc = F.add(acc, F.mul(F(c), F.mul(_pow(F, s, a), _pow(F, t, b))))
        if not F.is_zero(acc):
            conic[xe] = acc
    return conic


def _pow(F, a, k):
    r = F.one
    for _ in range(k):
        r = F.mul(r, a)
    return r


def _linear_partials(conic, F):
    """3x3 matrix L with L[i][j] = coefficient of x_j in d(conic)/dx_i."""
    L = [[F.zero] * 3 for _ in range(3)]
    for e, c in conic.items():
        for i in range(3):
            if e[i] == 0:
                continue
            rest = list(e)
            rest[i] -= 1
            j = rest.index(1)
            L[i][j] = F.add(L[i][j], F.mul(F(e[i]), c))
    return L


def _lin_mul(a, b, F):
    out = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            out[e] = F.add(out.get(e, F.zero), F.mul(ca, cb))
    return out


def _lin_add(a, b, F, sign=1):
    out = dict(a)
    for e, c in b.items():
        out[e] = F.add(out.get(e, F.zero), c if sign == 1 else F.neg(c))
    return out


def quadric_system_det(conics, F):
    """The 6x6 determinant for three conics given as {exponent: coeff}."""
    # entries of the Jacobian: linear forms as dicts
    jac = []
    for conic in conics:
        L = _linear_partials(conic, F)
        row = []
        for i in range(3):
            form = {}
            for j in range(3):
                if not F.is_zero(L[i][j]):
                    e = [0, 0, 0]
                    e[j] = 1
                    form[tuple(e)] = L[i][j]
            row.append(form)
        jac.append(row)
    J = {}
    for perm, sign in (((0, 1, 2), 1), ((1, 2, 0), 1), ((2, 0, 1), 1),
                       ((0, 2, 1), -1), ((2, 1, 0), -1), ((1, 0, 2), -1)):
        term = _lin_mul(_lin_mul(jac[0][perm[0]], jac[1][perm[1]], F), jac[2][perm[2]], F)
        J = _lin_add(J, term, F, sign)
    rows = [[conic.get(m, F.zero) for m in QUAD_MONOMIALS] for conic in conics]
    for i in range(3):
        dJ = {}
        for e, c in J.items():
            if e[i]:
                e2 = list(e)
                e2[i] -= 1
                dJ[tuple(e2)] = F.add(dJ.get(tuple(e2), F.zero), F.mul(F(e[i]), c))
        rows.append([dJ.get(m, F.zero) for m in QUAD_MONOMIALS])
    return determinant(rows, F)


def chart_point(u, chart, F):
    """(s, t) = (1 - c*u, u) on the chart u = t / (s + c*t)."""
    return F.sub(F.one, F.mul(F(chart), u)), u


def eliminate(eqs, F, chart: int = 1, var: str = "u") -> UniPoly:
    """Eliminant (as a polynomial in u) of three (d_i, 2)-forms on P^1 x P^2.

    Needs an odd characteristic (or Q) and at least 4*sum(d_i) + 1 field
    elements for the interpolation nodes.
    """
    if len(eqs) != 3:
        raise ValueError("need exactly three equations")
    for f in eqs:
        if f.frame != FRAME_STX:
            raise ValueError("equations must live in the (s,t | x) frame")
        deg = f.multidegree()
        if deg is not None and deg[1] != 2:
            raise ValueError("equations must be quadratic in x")
    total = 4 * sum(st_degree(f) for f in eqs)
    npts = total + 1
    if F.characteristic and F.characteristic < npts:
        raise ValueError(f"F_{F.characteristic} has too few points for {npts}-point interpolation")
    splits = [split_binary(f) for f in eqs]
    xs, ys = [], []
    for k in range(npts):
        u = F(k)
        s, t = chart_point(u, chart, F)
        conics = [_conic_at(sp, s, t, F) for sp in splits]
        xs.append(u)
        ys.append(quadric_system_det(conics, F))
    f = interpolate(F, xs, ys, var)
    return f.scale(F.inv(F(512)))


def eliminate_reduced(eqs, q: int, chart: int = 1) -> UniPoly:
    """Eliminant of rational equations, reduced modulo q.

    For q large enough this eliminates directly over F_q; otherwise it
    eliminates over Q and reduces the (integral) result.
    """
    total = 4 * sum(st_degree(f) for f in eqs) + 1
    try:
        if q != 2 and q >= total:
            return eliminate([f.reduce_mod(q) for f in eqs], GF(q), chart)
        exact = eliminate(eqs, QQ, chart)
        return exact.reduce_mod(q)
    except ZeroDivisionError as exc:
        raise BadReductionError(f"coefficients do not reduce mod {q}: {exc}") from exc


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CoverPolynomial:
    f: UniPoly
    chart: int
    field: object
    polyset_digest: str
    basepoint: tuple

    @property
    def degree(self):
        return self.f.degree

    def u_of(self, s, t, F=None):
        """Chart coordinate of a point (s:t); None if it lies at infinity."""
        F = F or self.field
        den = F.add(s, F.mul(F(self.chart), t))
        if F.is_zero(den):
            return None
        return F.div(t, den)


def cover_polynomial(ps, basept, field=QQ, chart=None, max_retries: int = 8,
                     expected_degree: int = 24) -> CoverPolynomial:
    """Degree-24 eliminant of the cover equations at ``basept``.

    ``field`` is QQ or a prime field GF(q).  With ``chart=None`` charts
    c = 1, 2, ... are tried until the degree is full.
    """
    from .scheme import cover_equations

    eqs = cover_equations(ps, basept)
    charts = [chart] if chart is not None else list(range(1, max_retries + 1))
    last = None
    for c in charts:
        if field.characteristic == 0:
            f = eliminate(eqs, QQ, c)
        else:
            f = eliminate_reduced(eqs, field.characteristic, c)
        if f.degree == expected_degree:
            if not is_squarefree(f):
                from .unipoly import poly_gcd

                raise NotSquarefreeError(poly_gcd(f, f.derivative()))
            return CoverPolynomial(f, c, field, ps.digest(), tuple(basept))
        last = DegreeDropError(f.degree, expected_degree, c)
    raise last


# ---------------------------------------------------------------------------
# independent route: iterated Sylvester resultants on the chart x0 = 1


def iterated_resultant(eqs, F, chart: int = 1) -> UniPoly:
    """Res_x1(Res_x2(e0, e1), Res_x2(e0, e2)) in F[u] on the chart x0 = 1.

    Every root of the eliminant with its point off {x0 = 0} is a root of
    this polynomial, so the eliminant divides it for generic input.
    """
    Ru = PolyRing(F, "u")
    Rux1 = PolyRing(Ru, "x1")
    u = UniPoly.gen(F, "u")
    s = UniPoly(F, [F.one], "u") - u.scale(F(chart))
    t = u

    def nested(eq):
        # coefficient of x2^k as a polynomial in x1 with coefficients in F[u]
        by_x2 = {}
        for e, c in eq.terms.items():
            a, b, _e0, e1, e2 = e
            term = (s ** a) * (t ** b)
            term = term.scale(F(c))
            slot = by_x2.setdefault(e2, {})
            slot[e1] = slot.get(e1, Ru.zero) + term
        deg2 = max(by_x2)
        coeffs = []
        for k in range(deg2 + 1):
            slot = by_x2.get(k, {})
            d1 = max(slot) if slot else 0
            coeffs.append(UniPoly(Ru, [slot.get(i, Ru.zero) for i in range(d1 + 1)], "x1"))
        return UniPoly(Rux1, coeffs, "x2")

    e0, e1, e2 = (nested(f.reduce_mod(F.p) if isinstance(F, PrimeField) else f) for f in eqs)
    r1 = poly_resultant(e0, e1)
    r2 = poly_resultant(e0, e2)
    return poly_resultant(r1, r2)
