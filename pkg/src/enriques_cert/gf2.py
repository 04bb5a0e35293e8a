"""Linear algebra over GF(2) with vectors stored as int bitmasks.

Bit i of a mask is coordinate i.
"""

from __future__ import annotations

from dataclasses import dataclass, field


def to_mask(vec) -> int:
    m = 0
    for i, v in enumerate(vec):
        if int(v) % 2:
            m |= 1 << i
    return m


def from_mask(mask: int, n: int):
    return [(mask >> i) & 1 for i in range(n)]


def rref(vectors):
    """Reduced echelon basis, keyed by pivot (highest set bit)."""
    basis = {}
    for v in vectors:
        v = reduce(basis, v)
        if v:
            top = v.bit_length() - 1
            for k in list(basis):
                if (basis[k] >> top) & 1:
                    basis[k] ^= v
            basis[top] = v
    return basis


def reduce(basis: dict, v: int) -> int:
    for top in sorted(basis, reverse=True):
        if (v >> top) & 1:
            v ^= basis[top]
    return v


def rank(vectors) -> int:
    return len(rref(vectors))


@dataclass
class GF2Subspace:
    ambient: int
    basis: list = field(default_factory=list)

    @classmethod
    def span(cls, vectors, ambient: int):
        b = rref(vectors)
        return cls(ambient, [b[k] for k in sorted(b, reverse=True)])

    @property
    def dim(self) -> int:
        return len(self.basis)

    def _pivots(self):
        return {v.bit_length() - 1: v for v in self.basis}

    def contains(self, v: int) -> bool:
        return reduce(self._pivots(), v) == 0

    def __add__(self, other):
        return GF2Subspace.span(self.basis + other.basis, self.ambient)

    def intersect(self, other) -> "GF2Subspace":
        # Zassenhaus: rows (u | u) for u in self, (w | 0) for w in other
        n = self.ambient
        rows = [(u << n) | u for u in self.basis] + [w << n for w in other.basis]
        b = rref(rows)
        low = [v for v in b.values() if v >> n == 0]
        return GF2Subspace.span(low, n)

    def __contains__(self, v):
        return self.contains(v)
