"""Exhaustive point enumeration over F_{q^k} (the brute-force oracle).

Field elements of F_{q^k} are integer codes (see :class:`ExtensionField`);
the prime subfield is ``0..q-1`` so reduced coefficients embed as-is.
"""

from __future__ import annotations

import numpy as np

from .fields import GFq
from .multipoly import FRAME_STX, Frame, MultiPoly

ENUMERATION_BUDGET = 10 ** 7


class EnumerationBudgetError(ValueError):
    """The requested enumeration exceeds the point budget."""


class FqArith:
    """Vectorised arithmetic on integer codes of F_{q^k}."""

    def __init__(self, q: int, k: int = 1):
        self.q, self.k = q, k
        self.field = GFq(q, k)
        self.order = q ** k
        if k == 1:
            self._add = self._mul = None
        else:
            self._add, self._mul = self.field.tables()
        els = np.arange(self.order, dtype=np.int64)
        self.neg_table = np.array([self.field.neg(int(a)) for a in els], dtype=np.int64) if k > 1 else (-els) % q
        inv = np.zeros(self.order, dtype=np.int64)
        for a in range(1, self.order):
            inv[a] = self.field.inv(a)
        self.inv_table = inv

    def add(self, a, b):
        if self.k == 1:
            return (a + b) % self.q
        return self._add[a, b].astype(np.int64)

    def mul(self, a, b):
        if self.k == 1:
            return (a * b) % self.q
        return self._mul[a, b].astype(np.int64)

    def neg(self, a):
        return self.neg_table[a]

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def inv(self, a):
        return self.inv_table[a]

    def pow(self, a, e: int):
        out = np.ones_like(a)
        for _ in range(e):
            out = self.mul(out, a)
        return out


def projective_points(arith: FqArith, n: int) -> np.ndarray:
    """Normalised points of P^n(F_Q): first nonzero coordinate equal to 1."""
    Q = arith.order
    chunks = []
    for lead in range(n + 1):
        free = n - lead
        grids = np.indices((Q,) * free).reshape(free, -1).T if free else np.zeros((1, 0), dtype=np.int64)
        m = grids.shape[0]
        pts = np.zeros((m, n + 1), dtype=np.int64)
        pts[:, lead] = 1
        pts[:, lead + 1:] = grids
        chunks.append(pts)
    return np.concatenate(chunks, axis=0)


def count_projective(Q: int, n: int) -> int:
    return sum(Q ** i for i in range(n + 1))


def evaluate(poly: MultiPoly, columns, arith: FqArith, q: int):
    """Evaluate at many points; ``columns[i]`` holds variable i's values."""
    exps, coeffs = poly.compile_mod(q)
    n = next((len(c) for c in columns if c is not None), 1)
    acc = np.zeros(n, dtype=np.int64)
    cache = {}
    for e, c in zip(exps, coeffs):
        term = np.full(n, int(c), dtype=np.int64)
        for i, k in enumerate(e):
            if k:
                key = (i, int(k))
                if key not in cache:
                    cache[key] = arith.pow(columns[i], int(k))
                term = arith.mul(term, cache[key])
        acc = arith.add(acc, term)
    return acc


def _normalise(block):
    return tuple(int(v) for v in block)


def brute_force_points(system, q: int, k: int = 1, frame: Frame = None, budget: int = ENUMERATION_BUDGET):
    """All common zeros of ``system`` in the product of projective spaces of
    ``frame`` over F_{q^k}, as tuples of normalised block tuples (sorted).

    Uses a fast path for three (2,2)-forms on P^1 x P^2.
    """
    system = list(system)
    frame = frame or (system[0].frame if system else None)
    if frame is None:
        raise ValueError("empty system needs an explicit frame")
    for f in system:
        if f.frame != frame:
            raise ValueError("system polynomials must share the frame")
    if frame == FRAME_STX and len(system) == 3 and all(f.multidegree() == (2, 2) for f in system):
        return cover_points(system, q, k, budget)
    arith = FqArith(q, k)
    Q = arith.order
    sizes = [count_projective(Q, len(b) - 1) for b in frame.blocks]
    total = int(np.prod(sizes, dtype=object))
    if total > budget:
        raise EnumerationBudgetError(f"{total} points exceed the budget of {budget}")
    block_pts = [projective_points(arith, len(b) - 1) for b in frame.blocks]
    # loop over the first block, vectorise the product of the others
    rest = block_pts[1:]
    if rest:
        idx = np.indices([len(b) for b in rest]).reshape(len(rest), -1)
        rest_cols = np.concatenate([rest[j][idx[j]] for j in range(len(rest))], axis=1)
    else:
        rest_cols = np.zeros((1, 0), dtype=np.int64)
    out = []
    for head in block_pts[0]:
        cols = np.concatenate([np.broadcast_to(head, (rest_cols.shape[0], len(head))), rest_cols], axis=1)
        mask = np.ones(cols.shape[0], dtype=bool)
        columns = [cols[:, i] for i in range(cols.shape[1])]
        for f in system:
            mask &= evaluate(f, columns, arith, q) == 0
        for row in cols[mask]:
            out.append(_split(row, frame))
    return sorted(out)


def _split(row, frame):
    out, start = [], 0
    for b in frame.blocks:
        out.append(_normalise(row[start:start + len(b)]))
        start += len(b)
    return tuple(out)


def cover_points(eqs, q: int, k: int = 1, budget: int = ENUMERATION_BUDGET):
    """Common zeros of three (2,2)-forms on P^1 x P^2 over F_{q^k}.

    Each form is A(x) s^2 + B(x) st + C(x) t^2; a common (s:t) can only
    exist where det[A B C] = 0, so P^1 is scanned only over those x.
    """
    arith = FqArith(q, k)
    Q = arith.order
    if count_projective(Q, 2) > budget:
        raise EnumerationBudgetError(f"|P^2(F_{q}^{k})| exceeds the budget of {budget}")
    xs = projective_points(arith, 2)
    cols = [xs[:, i] for i in range(3)]
    coef = []
    for f in eqs:
        parts = {}
        for e, c in f.terms.items():
            parts.setdefault(e[:2], {})[(0, 0) + e[2:]] = c
        row = []
        for st in ((2, 0), (1, 1), (0, 2)):
            g = MultiPoly(f.field, FRAME_STX, parts.get(st, {}))
            row.append(evaluate(g, [None, None] + cols, arith, q) if g.terms else np.zeros(len(xs), dtype=np.int64))
        coef.append(row)
    det = _det3_vec(coef, arith)
    cand = np.nonzero(det == 0)[0]
    line = projective_points(arith, 1)
    s, t = line[:, 0], line[:, 1]
    ss, st_, tt = arith.mul(s, s), arith.mul(s, t), arith.mul(t, t)
    out = []
    for ci in cand:
        mask = np.ones(len(line), dtype=bool)
        for row in coef:
            A, B, C = (int(r[ci]) for r in row)
            val = arith.add(arith.add(arith.mul(np.full_like(ss, A), ss), arith.mul(np.full_like(ss, B), st_)),
                            arith.mul(np.full_like(ss, C), tt))
            mask &= val == 0
        for j in np.nonzero(mask)[0]:
            out.append((_normalise(line[j]), _normalise(xs[ci])))
    return sorted(out)


def _det3_vec(m, ar):
    def d2(a, b, c, d):
        return ar.sub(ar.mul(a, d), ar.mul(b, c))

    t0 = ar.mul(m[0][0], d2(m[1][1], m[1][2], m[2][1], m[2][2]))
    t1 = ar.mul(m[0][1], d2(m[1][0], m[1][2], m[2][0], m[2][2]))
    t2 = ar.mul(m[0][2], d2(m[1][0], m[1][1], m[2][0], m[2][1]))
    return ar.add(ar.sub(t0, t1), t2)


def roots_in_extension(f, q: int, k: int = 1):
    """Sorted codes of the roots in F_{q^k} of a polynomial over F_q."""
    arith = FqArith(q, k)
    x = np.arange(arith.order, dtype=np.int64)
    acc = np.zeros_like(x)
    for c in reversed(f.coeffs):
        acc = arith.add(arith.mul(acc, x), np.full_like(x, int(c) % q))
    return [int(r) for r in np.nonzero(acc == 0)[0]]


def chart_coordinates(points, chart: int, q: int, k: int = 1):
    """u = t / (s + c t) for cover points; None for points at infinity."""
    F = GFq(q, k)
    out = []
    for (s, t), _x in points:
        den = F.add(s, F.mul(chart % q, t))
        out.append(None if den == 0 else F.div(t, den))
    return out


def oracle_check(ps, basept, q: int, k: int = 1, chart: int = None, budget: int = ENUMERATION_BUDGET) -> dict:
    """Compare roots of the cover polynomial mod q in F_{q^k} with the
    brute-force points of the cover equations.

    The comparison is only meaningful when f mod q is squarefree of full
    degree; ``comparable`` records that.
    """
    from .elimination import eliminate_reduced
    from .scheme import cover_equations
    from .unipoly import is_squarefree

    eqs = cover_equations(ps, basept)
    charts = [chart] if chart is not None else range(1, 9)
    for c in charts:
        f = eliminate_reduced(eqs, q, c)
        if f.degree == 24:
            break
    roots = roots_in_extension(f, q, k)
    pts = brute_force_points([e.reduce_mod(q) for e in eqs], q, k, budget=budget)
    us = chart_coordinates(pts, c, q, k)
    comparable = f.degree == 24 and is_squarefree(f)
    return {
        "q": q,
        "k": k,
        "chart": c,
        "degree": f.degree,
        "comparable": comparable,
        "roots": roots,
        "points": len(pts),
        "match": None not in us and sorted(us) == roots,
    }
