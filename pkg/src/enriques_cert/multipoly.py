"""Sparse multivariate polynomials in a block-graded variable frame.

A :class:`Frame` groups variables into blocks, e.g. ``(s,t | x0,x1,x2 |
y0,y1,y2)``; a polynomial's multidegree is its total degree in each block.
Terms live in a dict ``{exponent tuple: coefficient}`` with zero
coefficients never stored.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Iterable, Sequence

from .fields import QQ, GF, CharacteristicMismatchError


class FrameMismatchError(ValueError):
    """Operands use different variable frames."""


class TridegreeError(ValueError):
    """A polynomial is not homogeneous of the declared multidegree."""


class Frame:
    """Ordered blocks of variable names."""

    __slots__ = ("blocks", "names", "_index", "_block_of")

    def __init__(self, blocks: Sequence[Sequence[str]]):
        self.blocks = tuple(tuple(b) for b in blocks)
        self.names = tuple(n for b in self.blocks for n in b)
        if len(set(self.names)) != len(self.names):
            raise ValueError("duplicate variable names in frame")
        self._index = {n: i for i, n in enumerate(self.names)}
        self._block_of = []
        for bi, b in enumerate(self.blocks):
            self._block_of.extend([bi] * len(b))

    @property
    def nvars(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"variable {name!r} not in frame {self}") from None

    def block_slices(self):
        out, start = [], 0
        for b in self.blocks:
            out.append(slice(start, start + len(b)))
            start += len(b)
        return out

    def multidegree(self, exps) -> tuple:
        return tuple(sum(exps[s]) for s in self.block_slices())

    def drop_block(self, bi: int) -> "Frame":
        return Frame(self.blocks[:bi] + self.blocks[bi + 1:])

    def __eq__(self, other):
        return isinstance(other, Frame) and self.blocks == other.blocks

    def __hash__(self):
        return hash(self.blocks)

    def __repr__(self):
        return "(" + " | ".join(",".join(b) for b in self.blocks) + ")"


FRAME_STXY = Frame([("s", "t"), ("x0", "x1", "x2"), ("y0", "y1", "y2")])
FRAME_STXYL = Frame([("s", "t"), ("x0", "x1", "x2"), ("y0", "y1", "y2"), ("lam", "mu")])
FRAME_STX = Frame([("s", "t"), ("x0", "x1", "x2")])


def monomials_of_degree(nvars: int, deg: int):
    """Exponent tuples of total degree ``deg`` in ``nvars`` variables (lex order)."""
    if nvars == 0:
        if deg == 0:
            yield ()
        return
    for e in range(deg, -1, -1):
        for rest in monomials_of_degree(nvars - 1, deg - e):
            yield (e,) + rest


def multihomogeneous_monomials(frame: Frame, degree: Sequence[int]):
    parts = [list(monomials_of_degree(len(b), d)) for b, d in zip(frame.blocks, degree)]
    for combo in itertools.product(*parts):
        yield tuple(e for part in combo for e in part)


class MultiPoly:
    """Immutable sparse polynomial over QQ or a finite field."""

    __slots__ = ("field", "frame", "terms", "declared")

    def __init__(self, field, frame: Frame, terms=None, declared=None, _trusted=False):
        self.field = field
        self.frame = frame
        if _trusted:
            self.terms = terms
        else:
            clean = {}
            for e, c in (terms or {}).items():
                e = tuple(int(v) for v in e)
                if len(e) != frame.nvars:
                    raise FrameMismatchError(f"exponent {e} does not fit frame {frame}")
                c = field(c)
                if not field.is_zero(c):
                    clean[e] = c
            self.terms = clean
        self.declared = tuple(declared) if declared is not None else None
        if self.declared is not None and not _trusted:
            self.assert_multidegree(self.declared)

    # -- construction helpers ---------------------------------------------

    @classmethod
    def zero(cls, field, frame, declared=None):
        return cls(field, frame, {}, declared, _trusted=True)

    @classmethod
    def constant(cls, field, frame, c):
        return cls(field, frame, {(0,) * frame.nvars: c})

    @classmethod
    def var(cls, field, frame, name: str):
        e = [0] * frame.nvars
        e[frame.index(name)] = 1
        deg = frame.multidegree(e)
        return cls(field, frame, {tuple(e): field.one}, deg)

    @classmethod
    def random(cls, field, frame, degree, rng, height: int = 9):
        """Dense random multihomogeneous polynomial with integer coefficients
        drawn uniformly from ``[-height, height]``."""
        terms = {e: rng.randint(-height, height) for e in multihomogeneous_monomials(frame, degree)}
        return cls(field, frame, terms, tuple(degree))

    # -- grading ------------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def multidegree(self):
        """Blockwise degree if multihomogeneous, else None (zero -> declared)."""
        degs = {self.frame.multidegree(e) for e in self.terms}
        if not degs:
            return self.declared
        if len(degs) == 1:
            return degs.pop()
        return None

    def assert_multidegree(self, degree):
        degree = tuple(degree)
        for e in self.terms:
            got = self.frame.multidegree(e)
            if got != degree:
                raise TridegreeError(f"term with exponent {e} has multidegree {got}, expected {degree}")
        return self

    def with_declared(self, degree):
        return MultiPoly(self.field, self.frame, self.terms, degree)

    # -- arithmetic -----------------------------------------------------------

    def _compat(self, other):
        if not isinstance(other, MultiPoly):
            return MultiPoly.constant(self.field, self.frame, other)
        if other.frame != self.frame:
            raise FrameMismatchError(f"{self.frame} vs {other.frame}")
        if other.field != self.field:
            raise CharacteristicMismatchError(f"{self.field!r} vs {other.field!r}")
        return other

    def __add__(self, other):
        other = self._compat(other)
        F = self.field
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = F.add(out.get(e, F.zero), c)
            if F.is_zero(v):
                out.pop(e, None)
            else:
                out[e] = v
        declared = None
        if self.declared is not None and self.declared == other.declared:
            declared = self.declared
        elif self.is_zero():
            declared = other.declared
        elif other.is_zero():
            declared = self.declared
        return MultiPoly(F, self.frame, out, declared, _trusted=True)

    __radd__ = __add__

    def __neg__(self):
        F = self.field
        return MultiPoly(F, self.frame, {e: F.neg(c) for e, c in self.terms.items()}, self.declared, _trusted=True)

    def __sub__(self, other):
        return self + (-self._compat(other))

    def __rsub__(self, other):
        return self._compat(other) - self

    def __mul__(self, other):
        other = self._compat(other)
        F = self.field
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = F.add(out.get(e, F.zero), F.mul(c1, c2))
                out[e] = v
        out = {e: c for e, c in out.items() if not F.is_zero(c)}
        declared = None
        if self.declared is not None and other.declared is not None:
            declared = tuple(a + b for a, b in zip(self.declared, other.declared))
        return MultiPoly(F, self.frame, out, declared, _trusted=True)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        out = MultiPoly.constant(self.field, self.frame, self.field.one)
        if self.declared is not None:
            out = out.with_declared((0,) * len(self.frame.blocks))
        for _ in range(n):
            out = out * self
        return out

    def scale(self, c):
        F = self.field
        c = F(c)
        return MultiPoly(F, self.frame, {e: F.mul(c, v) for e, v in self.terms.items() if not F.is_zero(F.mul(c, v))},
                         self.declared, _trusted=True)

    def __eq__(self, other):
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.frame == other.frame and self.field == other.field and self.terms == other.terms

    def __hash__(self):
        return hash((self.frame, frozenset(self.terms.items())))

    # -- calculus and evaluation ---------------------------------------------

    def partial(self, var):
        i = self.frame.index(var) if isinstance(var, str) else int(var)
        F = self.field
        out = {}
        for e, c in self.terms.items():
            if e[i] == 0:
                continue
            v = F.mul(F(e[i]), c)
            if F.is_zero(v):
                continue
            e2 = list(e)
            e2[i] -= 1
            out[tuple(e2)] = v
        declared = None
        if self.declared is not None:
            d = list(self.declared)
            d[self.frame._block_of[i]] -= 1
            declared = tuple(d)
        return MultiPoly(F, self.frame, out, declared, _trusted=True)

    def __call__(self, point, field=None):
        """Evaluate at a flat point (one value per frame variable)."""
        F = field or self.field
        if len(point) != self.frame.nvars:
            raise FrameMismatchError(f"point of length {len(point)} for frame {self.frame}")
        pt = [F(v) for v in point]
        pows = [dict() for _ in pt]
        acc = F.zero
        for e, c in self.terms.items():
            term = F(c) if F is not self.field else c
            for i, k in enumerate(e):
                if k:
                    cache = pows[i]
                    if k not in cache:
                        cache[k] = _field_pow(F, pt[i], k)
                    term = F.mul(term, cache[k])
            acc = F.add(acc, term)
        return acc

    def specialize_block(self, bi: int, values):
        """Substitute constants for the variables of block ``bi`` and drop it."""
        F = self.field
        sl = self.frame.block_slices()[bi]
        new_frame = self.frame.drop_block(bi)
        vals = [F(v) for v in values]
        out = {}
        for e, c in self.terms.items():
            coef = c
            for v, k in zip(vals, e[sl]):
                coef = F.mul(coef, _field_pow(F, v, k))
            if F.is_zero(coef):
                continue
            e2 = e[:sl.start] + e[sl.stop:]
            out[e2] = F.add(out.get(e2, F.zero), coef)
        out = {e: c for e, c in out.items() if not F.is_zero(c)}
        declared = None
        if self.declared is not None:
            declared = self.declared[:bi] + self.declared[bi + 1:]
        return MultiPoly(F, new_frame, out, declared, _trusted=True)

    def embed(self, frame: Frame, declared=None):
        """Re-express in a larger frame containing all current variable names."""
        idx = [frame.index(n) for n in self.frame.names]
        out = {}
        for e, c in self.terms.items():
            e2 = [0] * frame.nvars
            for i, k in zip(idx, e):
                e2[i] = k
            out[tuple(e2)] = c
        if declared is None and self.declared is not None:
            degs = self.multidegree()
            declared = frame.multidegree(next(iter(out))) if out and degs is not None else None
        return MultiPoly(self.field, frame, out, declared, _trusted=True)

    def reduce_mod(self, p: int) -> "MultiPoly":
        F = GF(p)
        if self.field.characteristic not in (0, p):
            raise CharacteristicMismatchError(f"cannot reduce {self.field!r} modulo {p}")
        return MultiPoly(F, self.frame, {e: F(c) for e, c in self.terms.items()}, self.declared)

    def coefficients_in_block(self, bi: int):
        """Split as sum over block-``bi`` monomials m of m * coeff(m)."""
        sl = self.frame.block_slices()[bi]
        out = {}
        for e, c in self.terms.items():
            key = e[sl]
            rest = e[:sl.start] + (0,) * (sl.stop - sl.start) + e[sl.stop:]
            out.setdefault(key, {})[rest] = c
        return {k: MultiPoly(self.field, self.frame, v, _trusted=True) for k, v in out.items()}

    # -- serialization ----------------------------------------------------------

    def to_json(self):
        def enc(c):
            if isinstance(c, Fraction):
                return str(c) if c.denominator != 1 else int(c)
            return int(c)

        return {
            "frame": [list(b) for b in self.frame.blocks],
            "declared": list(self.declared) if self.declared is not None else None,
            "terms": [[list(e), enc(c)] for e, c in sorted(self.terms.items(), reverse=True)],
        }

    @classmethod
    def from_json(cls, data, field=QQ):
        frame = Frame(data["frame"])
        terms = {}
        for e, c in data["terms"]:
            e = tuple(e)
            if e in terms:
                raise ValueError(f"duplicate exponent {e}")
            terms[e] = Fraction(c) if isinstance(c, str) else c
        return cls(field, frame, terms, data.get("declared"))

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in sorted(self.terms.items(), reverse=True):
            mono = "*".join(n if k == 1 else f"{n}^{k}" for n, k in zip(self.frame.names, e) if k)
            parts.append(f"{c}" + (f"*{mono}" if mono else ""))
        return " + ".join(parts)

    # -- vectorised evaluation ------------------------------------------------------

    def compile_mod(self, q: int):
        """(exponents, coefficients) arrays mod a prime q for numpy evaluation."""
        import numpy as np

        F = GF(q)
        if self.field.characteristic not in (0, q):
            raise CharacteristicMismatchError(f"{self.field!r} vs GF({q})")
        items = [(e, F(c)) for e, c in self.terms.items()]
        items = [(e, c) for e, c in items if c]
        exps = np.array([e for e, _ in items], dtype=np.int64).reshape(len(items), self.frame.nvars)
        coeffs = np.array([c for _, c in items], dtype=np.int64)
        return exps, coeffs


def _field_pow(F, a, k):
    if hasattr(F, "pow"):
        return F.pow(a, k)
    if F.characteristic:
        return pow(a, k, F.characteristic)
    return a ** k


# ---------------------------------------------------------------------------
# matrices of polynomials


def _ring_ops(sample):
    """add/mul/neg/zero for matrix entries (MultiPoly, UniPoly or scalars)."""
    if isinstance(sample, MultiPoly):
        z = MultiPoly.zero(sample.field, sample.frame)
        return (lambda a, b: a + b), (lambda a, b: a * b), (lambda a: -a), z
    return (lambda a, b: a + b), (lambda a, b: a * b), (lambda a: -a), 0 * sample


def det_laplace(M):
    """Determinant by cofactor expansion along the first row."""
    n = len(M)
    if n == 0:
        raise ValueError("empty matrix")
    if any(len(r) != n for r in M):
        raise ValueError("matrix is not square")
    add, mul, neg, zero = _ring_ops(M[0][0])
    if n == 1:
        return M[0][0]
    acc = zero
    for j in range(n):
        minor = [row[:j] + row[j + 1:] for row in M[1:]]
        term = mul(M[0][j], det_laplace(minor))
        acc = add(acc, term if j % 2 == 0 else neg(term))
    return acc


def _perm_sign(perm):
    sign, seen = 1, [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def det_permutation(M):
    """Leibniz permutation-sum determinant (independent of det_laplace)."""
    n = len(M)
    add, mul, neg, zero = _ring_ops(M[0][0])
    acc = zero
    for perm in itertools.permutations(range(n)):
        term = M[0][perm[0]]
        for i in range(1, n):
            term = mul(term, M[i][perm[i]])
        acc = add(acc, term if _perm_sign(perm) == 1 else neg(term))
    return acc


def matrix_minors(M, k: int) -> list:
    """All k-by-k minors, ordered by (row tuple, column tuple) lexicographically,
    row tuple major."""
    rows = len(M)
    cols = len(M[0]) if rows else 0
    if any(len(r) != cols for r in M):
        raise ValueError("ragged matrix")
    if not 1 <= k <= min(rows, cols):
        raise ValueError(f"minor size {k} out of range for a {rows}x{cols} matrix")
    out = []
    for ri in itertools.combinations(range(rows), k):
        for ci in itertools.combinations(range(cols), k):
            out.append(det_laplace([[M[r][c] for c in ci] for r in ri]))
    return out


def jacobian(polys: Iterable[MultiPoly], variables=None):
    polys = list(polys)
    frame = polys[0].frame
    names = variables or frame.names
    return [[f.partial(v) for v in names] for f in polys]
