"""Randomised Jacobian smoothness checks over F_p.

Each trial fixes every block of the frame but the last at a random
F_p-point, enumerates the last projective block, and tests the Jacobian
rank at every point found.  A rank below the codimension, or a point where
the whole matrix vanishes, is a singular witness.  This is evidence, not a
proof: only sampled F_p-points are examined.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

import numpy as np

from .fields import GF
from .points import FqArith, evaluate, projective_points


@dataclass
class SmoothnessReport:
    prime: int
    trials: int
    points_checked: int = 0
    successes: int = 0
    witness: tuple = None
    witness_reason: str = None
    slices_without_points: int = 0

    @property
    def status(self) -> str:
        if self.witness is not None:
            return "singular-witness"
        if self.points_checked == 0:
            return "inconclusive"
        return "no-witness"

    def to_json(self):
        return {
            "prime": self.prime,
            "trials": self.trials,
            "points_checked": self.points_checked,
            "successes": self.successes,
            "status": self.status,
            "witness": [list(b) for b in self.witness] if self.witness else None,
            "witness_reason": self.witness_reason,
        }


def rank_mod_p(rows, p: int) -> int:
    a = [[v % p for v in r] for r in rows]
    rank, ncols = 0, len(a[0]) if a else 0
    for col in range(ncols):
        piv = next((r for r in range(rank, len(a)) if a[r][col]), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        inv = pow(a[rank][col], -1, p)
        for r in range(len(a)):
            if r != rank and a[r][col]:
                fac = a[r][col] * inv % p
                a[r] = [(x - fac * y) % p for x, y in zip(a[r], a[rank])]
        rank += 1
    return rank


def _random_projective_point(rng, p, n):
    while True:
        v = [rng.randrange(p) for _ in range(n + 1)]
        if any(v):
            return v


def jacobian_smoothness_sample(ideal, p: int, trials: int, seed: int = 0) -> SmoothnessReport:
    """Sample points of ``ideal`` over F_p and test the Jacobian rank."""
    F = GF(p)
    gens = [g.reduce_mod(p) for g in ideal.generators]
    frame = gens[0].frame
    matrix = None
    if getattr(ideal, "matrix", None) is not None:
        matrix = [e.reduce_mod(p) for row in ideal.matrix for e in row]
    partials = [[g.partial(i) for i in range(frame.nvars)] for g in gens]
    codim = getattr(ideal, "codim", len(gens))
    rng = random.Random(seed)
    arith = FqArith(p, 1)
    last = len(frame.blocks) - 1
    last_pts = projective_points(arith, len(frame.blocks[last]) - 1)
    cols = [last_pts[:, i] for i in range(last_pts.shape[1])]
    report = SmoothnessReport(prime=p, trials=trials)
    for _ in range(trials):
        fixed = [_random_projective_point(rng, p, len(b) - 1) for b in frame.blocks[:last]]
        sliced = []
        for g in gens:
            h = g
            for bi in range(last):
                h = h.specialize_block(0, fixed[bi])
            sliced.append(h)
        mask = np.ones(len(last_pts), dtype=bool)
        for h in sliced:
            if h.is_zero():
                continue
            mask &= evaluate(h, cols, arith, p) == 0
        found = last_pts[mask]
        if len(found) == 0:
            report.slices_without_points += 1
            continue
        for row in found:
            point = [v for blk in fixed for v in blk] + [int(v) for v in row]
            report.points_checked += 1
            blocks = tuple(tuple(point[s]) for s in frame.block_slices())
            if matrix is not None and all(F.is_zero(e(point)) for e in matrix):
                report.witness, report.witness_reason = blocks, "matrix vanishes identically"
                return report
            jac = [[d(point) for d in row_d] for row_d in partials]
            if rank_mod_p(jac, p) < codim:
                report.witness, report.witness_reason = blocks, "Jacobian rank below codimension"
                return report
            report.successes += 1
    return report
