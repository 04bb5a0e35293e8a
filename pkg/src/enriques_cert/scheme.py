"""The explicit families: the 2x3 pencil, its minors, the cover equations
and the components of the flat limit at (lambda:mu) = (1:0)."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from .fields import QQ, GF
from .multipoly import (
    FRAME_STX,
    FRAME_STXY,
    FRAME_STXYL,
    MultiPoly,
    TridegreeError,
    det_laplace,
    matrix_minors,
)
from .polyset import PolySet


def _vars(field, frame, *names):
    return [MultiPoly.var(field, frame, n) for n in names]


def _lift(f: MultiPoly, frame=FRAME_STXYL):
    """Embed a (s,t|x|y) polynomial into the frame with the (lam, mu) block."""
    deg = f.multidegree() or f.declared
    out = f.embed(frame)
    if deg is not None:
        out = out.with_declared(tuple(deg) + (0,))
    return out


def _row_factors(field, frame):
    s, t = _vars(field, frame, "s", "t")
    row1 = [s, s - t, s + t]
    row2 = [s * t, t * (s - t), t * (s + t)]
    return row1, row2


@dataclass(frozen=True)
class PencilMatrix:
    """2x3 matrix of forms.  Unspecialized pencils live in the frame with a
    (lam, mu) block; specialized ones carry their base point."""

    entries: tuple
    frame: object
    basepoint: tuple = None

    @property
    def specialized(self) -> bool:
        return self.basepoint is not None

    def row(self, i):
        return self.entries[i]

    def check_grading(self):
        extra = () if self.specialized else (1,)
        for j in range(3):
            self.entries[0][j].assert_multidegree((2, 2, 0) + extra)
            self.entries[1][j].assert_multidegree((2, 0, 2) + extra)
        return True


def build_pencil(ps: PolySet) -> PencilMatrix:
    """Entries lam*l_i*p_i + mu*r_i and lam*m_i*q_i + mu*s_i with
    l = (s, s-t, s+t) and m = (st, t(s-t), t(s+t))."""
    ps.validate()
    F = ps.field
    frame = FRAME_STXYL
    lam, mu = _vars(F, frame, "lam", "mu")
    l, m = _row_factors(F, frame)
    row1 = tuple(lam * l[i] * _lift(ps.p[i]) + mu * _lift(ps.r[i]) for i in range(3))
    row2 = tuple(lam * m[i] * _lift(ps.q[i]) + mu * _lift(ps.s[i]) for i in range(3))
    M = PencilMatrix((row1, row2), frame)
    M.check_grading()
    return M


def specialize(M: PencilMatrix, basept) -> PencilMatrix:
    if M.specialized:
        raise ValueError("matrix is already specialized")
    lam, mu = basept
    if lam == 0 and mu == 0:
        raise ValueError("(0:0) is not a point of P^1")
    bi = len(M.frame.blocks) - 1
    entries = tuple(tuple(e.specialize_block(bi, (lam, mu)) for e in row) for row in M.entries)
    out = PencilMatrix(entries, M.frame.drop_block(bi), tuple(basept))
    out.check_grading()
    return out


def eq4_matrix(ps: PolySet, p) -> PencilMatrix:
    """The matrix at (lam:mu) = (1:p), written out directly (no pencil)."""
    F = ps.field
    frame = FRAME_STXY
    s, t = _vars(F, frame, "s", "t")
    c = MultiPoly.constant(F, frame, p)
    row1 = (s * ps.p[0] + c * ps.r[0],
            (s - t) * ps.p[1] + c * ps.r[1],
            (s + t) * ps.p[2] + c * ps.r[2])
    row2 = (s * t * ps.q[0] + c * ps.s[0],
            t * (s - t) * ps.q[1] + c * ps.s[1],
            t * (s + t) * ps.q[2] + c * ps.s[2])
    M = PencilMatrix((row1, row2), frame, (1, p))
    M.check_grading()
    return M


@dataclass(frozen=True)
class DegeneracyIdeal:
    generators: tuple
    frame: object
    basepoint: tuple = None
    matrix: tuple = None
    codim: int = 2


def degeneracy_ideal(M: PencilMatrix) -> DegeneracyIdeal:
    """The three 2x2 minors, columns (0,1), (0,2), (1,2)."""
    if not M.specialized:
        raise ValueError("degeneracy_ideal needs a specialized matrix")
    gens = tuple(g.with_declared((4, 2, 2)) if not g.is_zero() else g
                 for g in matrix_minors([list(r) for r in M.entries], 2))
    for g in gens:
        g.assert_multidegree((4, 2, 2))
    return DegeneracyIdeal(gens, M.frame, M.basepoint, M.entries, 2)


def cover_equations(ps: PolySet, basept) -> list:
    """lam*l_i*p_i + mu*r_i at the base point, as (2,2)-forms in (s,t | x)."""
    lam, mu = basept
    if lam == 0 and mu == 0:
        raise ValueError("(0:0) is not a point of P^1")
    F = ps.field
    s, t = _vars(F, FRAME_STX, "s", "t")
    l = [s, s - t, s + t]
    out = []
    for i in range(3):
        p_i = _drop_y(ps.p[i])
        r_i = _drop_y(ps.r[i])
        e = (l[i] * p_i).scale(lam) + r_i.scale(mu)
        e = e.with_declared((2, 2)) if not e.is_zero() else e
        out.append(e)
    return out


def _drop_y(f: MultiPoly) -> MultiPoly:
    """Forms of y-degree 0 restricted to the (s,t | x) frame."""
    deg = f.multidegree()
    if deg is None or deg[2] != 0:
        raise TridegreeError("form depends on y")
    return f.specialize_block(2, (0, 0, 0)).with_declared(deg[:2])


# ---------------------------------------------------------------------------
# flat limit at (1:0)


@dataclass(frozen=True)
class FlatLimitDecomposition:
    closure_minors: tuple          # 3x3 minors of the 3x4 matrix (with lam, mu)
    x0_tilde: tuple                # 2x2 minors of N = (p; q)
    r0: tuple                      # t, det(p; q; s)
    r_pairs: tuple                 # R_1, R_2, R_3: (linear form in s,t, 2x2 minor)
    e0_planes: tuple               # p0 = p1 = p2 = 0
    el_planes: tuple               # (s, p1, p2), (s-t, p0, p2), (s+t, p0, p1)
    field: object = dc_field(default=QQ)


def flat_limit(ps: PolySet) -> FlatLimitDecomposition:
    F = ps.field
    frame = FRAME_STXYL
    lam, mu = _vars(F, frame, "lam", "mu")
    s, t = _vars(F, frame, "s", "t")
    zero = MultiPoly.zero(F, frame)
    l, _ = _row_factors(F, frame)
    P = [_lift(f) for f in ps.p]
    Q = [_lift(f) for f in ps.q]
    R = [_lift(f) for f in ps.r]
    S = [_lift(f) for f in ps.s]
    big = [
        [lam * l[i] * P[i] + mu * R[i] for i in range(3)] + [zero],
        [lam * l[i] * Q[i] for i in range(3)] + [mu],
        [S[i] for i in range(3)] + [-t],
    ]
    closure = tuple(matrix_minors(big, 3))

    fr = FRAME_STXY
    s0, t0 = _vars(F, fr, "s", "t")
    p, q, sv = ps.p, ps.q, ps.s
    x0_tilde = tuple(matrix_minors([list(p), list(q)], 2))
    r0 = (t0, det_laplace([list(p), list(q), list(sv)]))
    r_pairs = (
        (s0, p[2] * q[1] - p[1] * q[2]),
        (s0 - t0, p[2] * q[0] - p[0] * q[2]),
        (s0 + t0, p[1] * q[0] - p[0] * q[1]),
    )
    e0 = tuple(p)
    el = ((s0, p[1], p[2]), (s0 - t0, p[0], p[2]), (s0 + t0, p[0], p[1]))
    for g in x0_tilde:
        g.assert_multidegree((1, 2, 2))
    return FlatLimitDecomposition(closure, x0_tilde, r0, r_pairs, e0, el, F)


def linear_st_coeffs(form: MultiPoly):
    """(a, b) with form = a*s + b*t for a linear form in (s, t)."""
    a = b = 0
    for e, c in form.terms.items():
        if sum(e) != 1 or e[0] + e[1] != 1:
            raise ValueError("not a linear form in s, t")
        if e[0]:
            a = c
        else:
            b = c
    return a, b


def chart_disjoint(form_a: MultiPoly, form_b: MultiPoly, p: int) -> bool:
    """True iff {form_a = form_b = 0} has no point on either affine chart of
    the (s:t)-line over F_p, shown by row-reducing the linear system until
    it contains the equation 1 = 0."""
    F = GF(p)
    rows = [tuple(F(c) for c in linear_st_coeffs(form_a)), tuple(F(c) for c in linear_st_coeffs(form_b))]
    for chart in ("s", "t"):
        # on chart s = 1: a*1 + b*t = 0  ->  row (b | -a); on t = 1 symmetric
        aug = []
        for a, b in rows:
            if chart == "s":
                aug.append([b, F.neg(a)])
            else:
                aug.append([a, F.neg(b)])
        if not _inconsistent(aug, F):
            return False
    return True


def _inconsistent(aug, F) -> bool:
    """Gaussian elimination on rows (coeff | rhs) in one unknown."""
    pivot = next((r for r in aug if not F.is_zero(r[0])), None)
    if pivot is None:
        return any(not F.is_zero(r[1]) for r in aug)
    inv = F.inv(pivot[0])
    for r in aug:
        if r is pivot:
            continue
        fac = F.mul(r[0], inv)
        rhs = F.sub(r[1], F.mul(fac, pivot[1]))
        if not F.is_zero(rhs):
            return True
    return False


@dataclass(frozen=True)
class PlaneGroupReport:
    e0_degree: int
    e0_squarefree: bool
    el_degrees: tuple
    el_squarefree: tuple
    prime: int

    @property
    def counts(self):
        return (self.e0_degree if self.e0_squarefree else 0,) + tuple(
            d if sq else 0 for d, sq in zip(self.el_degrees, self.el_squarefree))

    @property
    def total(self):
        return sum(self.counts)

    @property
    def generic(self):
        return self.counts == (12, 4, 4, 4)


def plane_group_genericity(ps: PolySet, q: int = 1009, chart: int = 1, seed: int = 0) -> PlaneGroupReport:
    """Count the planes in each group of the flat limit over F_q.

    E^(0): eliminate x from p0 = p1 = p2 = 0 (expected 12 distinct roots).
    E^(l): at the (s:t) point of the l-th linear form, two conics in P^2;
    after a random linear change of x, Res_x2 is a binary quartic (expected
    4 distinct roots).
    """
    import random

    from .elimination import eliminate_reduced
    from .unipoly import PolyRing, UniPoly, is_squarefree, poly_resultant

    F = GF(q)
    p_x = [_drop_y(f) for f in ps.p]
    e0 = eliminate_reduced(p_x, q, chart)
    e0_sq = e0.degree > 0 and is_squarefree(e0)
    rng = random.Random(seed)
    while True:
        A = [[rng.randrange(q) for _ in range(3)] for _ in range(3)]
        if _det3(A) % q:
            break
    degs, sqs = [], []
    for (st_pt, idx) in (((0, 1), (1, 2)), ((1, 1), (0, 2)), ((1, q - 1), (0, 1))):
        conics = []
        for i in idx:
            f = p_x[i].reduce_mod(q).specialize_block(0, st_pt)
            conics.append(_transform_conic(f, A, F))
        # dehomogenize x0 -> var, x1 = 1, then resultant in x2
        polys = []
        for c in conics:
            by_x2 = {}
            for e, v in c.items():
                by_x2.setdefault(e[2], {})[e[0]] = v
            coeffs = []
            for k in range(3):
                d = by_x2.get(k, {})
                coeffs.append(UniPoly(F, [d.get(i, 0) for i in range(3)], "x0"))
            polys.append(UniPoly(PolyRing(F, "x0"), coeffs, "x2"))
        if polys[0].is_zero() or polys[1].is_zero():
            degs.append(0)
            sqs.append(False)
            continue
        res = poly_resultant(polys[0], polys[1])
        degs.append(res.degree if not res.is_zero() else 0)
        sqs.append(res.degree > 0 and is_squarefree(res))
    return PlaneGroupReport(e0.degree if not e0.is_zero() else 0, e0_sq, tuple(degs), tuple(sqs), q)


def _det3(A):
    return (A[0][0] * (A[1][1] * A[2][2] - A[1][2] * A[2][1])
            - A[0][1] * (A[1][0] * A[2][2] - A[1][2] * A[2][0])
            + A[0][2] * (A[1][0] * A[2][1] - A[1][1] * A[2][0]))


def _transform_conic(f: MultiPoly, A, F):
    """Substitute x_i -> sum_j A[i][j] x_j in a conic given in the x frame."""
    out = {}
    lin = [{(1 if j == 0 else 0, 1 if j == 1 else 0, 1 if j == 2 else 0): A[i][j] for j in range(3)} for i in range(3)]

    def mul(a, b):
        r = {}
        for ea, ca in a.items():
            for eb, cb in b.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                r[e] = F.add(r.get(e, 0), F.mul(ca, cb))
        return r

    for e, c in f.terms.items():
        term = {(0, 0, 0): c}
        for i, k in enumerate(e):
            for _ in range(k):
                term = mul(term, lin[i])
        for m, v in term.items():
            out[m] = F.add(out.get(m, 0), v)
    return {m: v for m, v in out.items() if not F.is_zero(v)}


# ---------------------------------------------------------------------------


@dataclass
class GenericityChecklist:
    cover_degree: int = None
    cover_squarefree: bool = None
    distinct_points: int = None
    smoothness: str = None
    plane_groups: tuple = None
    notes: list = dc_field(default_factory=list)

    @property
    def passed(self) -> bool:
        return (self.cover_degree == 24 and bool(self.cover_squarefree)
                and self.plane_groups == (12, 4, 4, 4)
                and self.smoothness in (None, "no-witness"))


def genericity_checklist(ps: PolySet, basept, q: int = 1009, trials: int = 0, seed: int = 0) -> GenericityChecklist:
    """Evaluate the genericity conditions for one instance over F_q."""
    from .elimination import eliminate_reduced
    from .unipoly import is_squarefree

    chk = GenericityChecklist()
    eqs = cover_equations(ps, basept)
    f = None
    for chart in range(1, 6):
        f = eliminate_reduced(eqs, q, chart)
        if f.degree == 24:
            break
    chk.cover_degree = f.degree if not f.is_zero() else -1
    chk.cover_squarefree = (not f.is_zero()) and is_squarefree(f)
    chk.distinct_points = chk.cover_degree if chk.cover_squarefree else None
    try:
        chk.plane_groups = plane_group_genericity(ps, q, seed=seed).counts
    except Exception as exc:  # degenerate input is reported, not raised
        chk.notes.append(f"plane groups: {exc}")
        chk.plane_groups = None
    if trials:
        from .smoothness import jacobian_smoothness_sample

        ideal = degeneracy_ideal(specialize(build_pencil(ps), basept))
        rep = jacobian_smoothness_sample(ideal, q, trials, seed=seed)
        chk.smoothness = rep.status
    return chk
