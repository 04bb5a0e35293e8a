"""H^2 presentations, curve classes as pairing vectors, and the 2-torsion of
the integral Hodge defect in degree 4.

H^4(X, Z) is the dual of H^2(X, Z) (both are torsion-free), so a curve class
is recorded by its intersection numbers with the 51 generators of H^2.  Such a
pairing vector is legitimate exactly when it kills the single relation.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from . import snf
from .gf2 import GF2Subspace, to_mask

NPLANES = 24


def labels(which: str = "X"):
    plane = {"X": "E", "Y": "F"}[which]
    return ["F", "H1", "H2"] + [f"{plane}{i}_{j}" for i in (1, 2) for j in range(1, NPLANES + 1)]


class LatticeError(ValueError):
    pass


@dataclass
class FPAbelianGroup:
    """Z^labels modulo the row span of ``relations``."""

    labels: list
    relations: list

    def __post_init__(self):
        self._snf = None

    def smith(self):
        if self._snf is None:
            self._snf = snf.smith_normal_form(self.relations) if self.relations else ([], [], snf.identity(len(self.labels)))
        return self._snf

    @property
    def nrels(self):
        return sum(1 for d in self._diag() if d)

    def _diag(self):
        D, _, _ = self.smith()
        return snf.diagonal(D) if D else []

    def invariant_factors(self):
        return [d for d in self._diag() if d]

    @property
    def torsion(self):
        return [d for d in self.invariant_factors() if d > 1]

    @property
    def rank(self) -> int:
        return len(self.labels) - len(self.invariant_factors())

    def index(self, label) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise LatticeError(f"unknown label {label!r}") from None

    def coords(self, vec):
        """Row vector times V: coordinates in the Smith basis."""
        _, _, V = self.smith()
        n = len(self.labels)
        return [sum(vec[i] * V[i][j] for i in range(n)) for j in range(n)]

    def in_relation_span(self, vec) -> bool:
        w = self.coords(vec)
        diag = self._diag()
        for j, x in enumerate(w):
            d = diag[j] if j < len(diag) else 0
            if (d == 0 and x != 0) or (d and x % d):
                return False
        return True

    def divisibility(self, vec) -> int:
        """Largest m with the class of vec in m*(group / torsion); 0 for torsion classes."""
        w = self.coords(vec)
        r = len(self.invariant_factors())
        return snf.content(w[r:])

    def vector(self, mapping) -> list:
        v = [0] * len(self.labels)
        for k, c in mapping.items():
            v[self.index(k)] += int(c)
        return v

    def dual_basis(self):
        """Integer basis of Hom(group, Z) as pairing vectors on the generators."""
        _, _, V = self.smith()
        r = len(self.invariant_factors())
        n = len(self.labels)
        return [[V[i][j] for i in range(n)] for j in range(r, n)]


@lru_cache(maxsize=None)
def _presentation(which):
    L = labels(which)
    p = {"X": "E", "Y": "F"}[which]
    c = {"X": 2, "Y": 1}[which]
    rel = {"H1": -c, "H2": c}
    for j in range(1, NPLANES + 1):
        rel[f"{p}1_{j}"] = 1
        rel[f"{p}2_{j}"] = -1
    row = [rel.get(lab, 0) for lab in L]
    return tuple(L), tuple(row)


def h2_presentation(which: str = "X") -> FPAbelianGroup:
    """H^2(X) or H^2(Y): the 51 generators and the single relation
    -c H1 + sum P_{1,j} = -c H2 + sum P_{2,j} (c = 2 for X, 1 for Y)."""
    L, row = _presentation(which)
    return FPAbelianGroup(list(L), [list(row)])


def label_vector(G: FPAbelianGroup, mapping) -> list:
    return G.vector(mapping)


def in_relation_span(G: FPAbelianGroup, vec) -> bool:
    return G.in_relation_span(vec)


# ---------------------------------------------------------------------------
# curve classes


@dataclass(frozen=True)
class CurveClassVector:
    label: str
    d: int
    values: tuple = ()  # sorted (label, int) pairs other than F

    @classmethod
    def make(cls, label, d, **pairings):
        return cls(label, int(d), tuple(sorted((k, int(v)) for k, v in pairings.items() if v)))

    @classmethod
    def from_vector(cls, label, vec, which="X"):
        L = labels(which)
        return cls(label, int(vec[0]), tuple(sorted((k, int(v)) for k, v in zip(L[1:], vec[1:]) if v)))

    def pairing(self, lab: str) -> int:
        if lab == "F":
            return self.d
        return dict(self.values).get(lab, 0)

    def vector(self, which="X"):
        return [self.pairing(lab) for lab in labels(which)]

    def mask(self) -> int:
        return to_mask(self.vector())

    def relation_defect(self, which="X") -> int:
        """Pairing with the relation; zero for a genuine class."""
        _, row = _presentation(which)
        return sum(a * b for a, b in zip(self.vector(which), row))


def _planes(i, value):
    return {f"E{i}_{j}": value for j in range(1, NPLANES + 1)}


# Frozen fixtures; ``derive_curve_fixtures`` recomputes them from the
# intersection-ring oracles and the tests compare the two.
L1 = CurveClassVector.make("l1", 0, H2=1, E1_1=-2)
L2 = CurveClassVector.make("l2", 0, H1=1, E2_1=-2)
C1 = CurveClassVector.make("C1", 4, H2=12, **_planes(2, 1))
C2 = CurveClassVector.make("C2", 4, H1=12, **_planes(1, 1))
FIXTURE_CURVES = (L1, L2, C1, C2)


def derive_curve_fixtures():
    """Recompute l1, l2, C1, C2.

    C1 = H1^2: its pairings with F, H1, H2 are integrals of [X] h1^2 times f,
    h1, h2 in P^1 x P^2 x P^2, with [X] the Porteous class.  The planes E_{1,j}
    sit over single points of the first P^2, so H1^2 misses them; each E_{2,j}
    is a copy of the first P^2 and meets H1^2 in one point.

    l1 is a line in E_{1,1} = P^2: it pairs 1 with H2, 0 with F and H1, and 0
    with the other (disjoint) planes.  Its pairing e with E_{1,1} follows from
    adjunction K_E = (K_X + E)|_E, using K_X from the canonical-class route.
    """
    from .chern import canonical_class_check, canonical_P2, integrate, ring_P1P2P2, thom_porteous_rank1

    R = ring_P1P2P2()
    f, h1, h2 = R.gens()
    X = thom_porteous_rank1([2 * f + 2 * h1, 2 * f + 2 * h2])
    c1 = {"F": integrate(X * h1 ** 2 * f), "H1": integrate(X * h1 ** 3), "H2": integrate(X * h1 ** 2 * h2)}
    c2 = {"F": integrate(X * h2 ** 2 * f), "H2": integrate(X * h2 ** 3), "H1": integrate(X * h2 ** 2 * h1)}
    C1d = CurveClassVector.make("C1", c1["F"], H1=c1["H1"], H2=c1["H2"], **_planes(2, 1))
    C2d = CurveClassVector.make("C2", c2["F"], H2=c2["H2"], H1=c2["H1"], **_planes(1, 1))

    # K_X = a F + b H1 + c H2 + e1 * sum E_{1,j}
    K = canonical_class_check()["K_X_coords"]
    kp2 = canonical_P2().coefficient(h=1)  # K_{P^2} . line
    # line l in E_{1,1}: F.l = H1.l = 0, H2.l = 1, E_{1,j}.l = 0 for j > 1, E_{1,1}.l = e
    # K_X.l = c + e1*e ; adjunction: (K_X + E).l = kp2  =>  e = (kp2 - c) / (e1 + 1)
    e = Fraction(kp2 - K["H2"], K["E1_j"] + 1)
    if e.denominator != 1:
        raise LatticeError("adjunction oracle gave a non-integral self-intersection")
    L1d = CurveClassVector.make("l1", 0, H2=1, E1_1=int(e))
    # by the symmetry exchanging the two factors
    L2d = CurveClassVector.make("l2", 0, H1=1, E2_1=int(e))
    return (L1d, L2d, C1d, C2d)


class InconsistentCurveError(LatticeError):
    def __init__(self, curve, reason):
        super().__init__(f"curve {curve.label} rejected: {reason}")
        self.curve = curve
        self.reason = reason


def validate_curve(curve: CurveClassVector):
    from .congruence import check_cycle_consistency

    if curve.relation_defect() != 0:
        raise InconsistentCurveError(curve, f"pairs {curve.relation_defect()} with the H^2 relation")
    for family in (1, 2):
        res = check_cycle_consistency(curve, family=family)
        if not res:
            raise InconsistentCurveError(curve, f"E_{family} congruence: {res}")


def algebraic_subspace(curves) -> GF2Subspace:
    """GF(2) span of the mod-2 pairing vectors of consistent curve classes."""
    for c in curves:
        validate_curve(c)
    return GF2Subspace.span([c.mask() for c in curves], len(labels()))


# ---------------------------------------------------------------------------
# degree-4 lattices


def vanishing_generators(which: str = "X"):
    """(label, vector) for c_{i,j1,j2} (or d_{i,j1,j2} on Y), j1 < j2."""
    p = {"X": "E", "Y": "F"}[which]
    L = labels(which)
    idx = {lab: n for n, lab in enumerate(L)}
    out = []
    for i in (1, 2):
        for j1 in range(1, NPLANES + 1):
            for j2 in range(j1 + 1, NPLANES + 1):
                v = [0] * len(L)
                v[idx[f"{p}{i}_{j1}"]] = 1
                v[idx[f"{p}{i}_{j2}"]] = -1
                out.append((f"{'c' if which == 'X' else 'd'}_{i}_{j1}_{j2}", v))
    return out


def vanishing_basis(which: str = "X"):
    """The consecutive generators c_{i,j,j+1}: a Z-basis of the span."""
    return [(lab, v) for lab, v in vanishing_generators(which) if int(lab.split("_")[3]) == int(lab.split("_")[2]) + 1]


def h4_mod2() -> GF2Subspace:
    """H^4(X, Z)/2 inside GF(2)^51 (injective since the dual lattice is saturated)."""
    G = h2_presentation("X")
    return GF2Subspace.span([to_mask(v) for v in G.dual_basis()], len(G.labels))


def ambient_pushforward(vec):
    """Pairings with the pullbacks of f, h1, h2, xi from P^1 x P_A;
    xi restricts to sum E_{1,j} + 2 H2."""
    L = labels("X")
    idx = {lab: n for n, lab in enumerate(L)}
    xi = sum(vec[idx[f"E1_{j}"]] for j in range(1, NPLANES + 1)) + 2 * vec[idx["H2"]]
    return [vec[idx["F"]], vec[idx["H1"]], vec[idx["H2"]], xi]


def vanishing_subspace_mod2() -> GF2Subspace:
    return GF2Subspace.span([to_mask(v) for _, v in vanishing_generators("X")], len(labels()))


def pushforward_kernel_mod2() -> GF2Subspace:
    """Kernel of the ambient pushforward on H^4(X)/2, computed directly."""
    H4 = h4_mod2()
    n = H4.ambient
    # solve over the basis of H4: image vectors in GF(2)^4
    images = []
    for b in H4.basis:
        vec = [(b >> i) & 1 for i in range(n)]
        images.append(to_mask(ambient_pushforward(vec)))
    # kernel of the map GF(2)^dim -> GF(2)^4 via augmented elimination
    m = len(H4.basis)
    rows = [(images[i] << m) | (1 << i) for i in range(m)]
    from .gf2 import rref

    B = rref(rows)
    kernel_coeffs = [v for v in B.values() if v >> m == 0]
    out = []
    for kc in kernel_coeffs:
        w = 0
        for i in range(m):
            if (kc >> i) & 1:
                w ^= H4.basis[i]
        out.append(w)
    return GF2Subspace.span(out, n)


def pullback_matrix():
    """f^*: H^2(X) -> H^2(Y) on generators: F, H1, H2 fixed, E_{i,j} -> 2 F_{i,j}."""
    LX, LY = labels("X"), labels("Y")
    M = [[0] * len(LY) for _ in LX]
    for r, lab in enumerate(LX):
        if lab.startswith("E"):
            M[r][LY.index("F" + lab[1:])] = 2
        else:
            M[r][LY.index(lab)] = 1
    return M


def fstar_matrix():
    """Matrix of f_*: H^4_van(Y) -> H^4_van(X) in the consecutive bases.

    The pairing vector of f_* d is d composed with f^*; it is then written in
    the basis c_{i,j,j+1} of H^4_van(X) by exact elimination.
    """
    P = pullback_matrix()
    dY = vanishing_basis("Y")
    cX = vanishing_basis("X")
    n = len(labels("X"))
    cols = []
    for _, d in dY:
        img = [sum(P[r][c] * d[c] for c in range(n)) for r in range(n)]
        cols.append(_solve_in_basis([v for _, v in cX], img))
    # rows indexed by the c basis, columns by the d basis
    return [[cols[j][i] for j in range(len(cols))] for i in range(len(cX))]


def _solve_in_basis(basis, target):
    """Integer coefficients x with sum x_i basis_i = target (exact)."""
    n = len(target)
    m = len(basis)
    A = [[Fraction(basis[j][i]) for j in range(m)] + [Fraction(target[i])] for i in range(n)]
    piv_cols = []
    r = 0
    for c in range(m):
        p = next((i for i in range(r, n) if A[i][c]), None)
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        A[r] = [x / A[r][c] for x in A[r]]
        for i in range(n):
            if i != r and A[i][c]:
                f = A[i][c]
                A[i] = [x - f * y for x, y in zip(A[i], A[r])]
        piv_cols.append(c)
        r += 1
    if any(A[i][m] for i in range(r, n)):
        raise LatticeError("vector is not in the span of the basis")
    x = [Fraction(0)] * m
    for i, c in enumerate(piv_cols):
        x[c] = A[i][m]
    if any(v.denominator != 1 for v in x):
        raise LatticeError("vector is in the rational but not the integral span")
    return [int(v) for v in x]


def fstar_cokernel():
    """Invariant factors of f_*: H^4_van(Y) -> H^4_van(X)."""
    return snf.invariant_factors(fstar_matrix())


# ---------------------------------------------------------------------------
# the defect


@dataclass
class DefectReport:
    h4_mod2_dim: int
    alg_dim: int
    van_dim: int
    alg_cap_van_dim: int
    alg_image_dim: int
    defect_route_dims: int
    defect_route_snf: int
    fstar_factors: list = field(default_factory=list)

    @property
    def agree(self):
        return self.defect_route_dims == self.defect_route_snf

    def to_json(self):
        d = dict(self.__dict__)
        d["fstar_factors"] = {str(k): self.fstar_factors.count(k) for k in sorted(set(self.fstar_factors))}
        d["agree"] = self.agree
        return d


def ihc_defect_2torsion(curves=FIXTURE_CURVES, alg: GF2Subspace = None) -> int:
    """dim H^4/2 - dim H^4_alg(Z/2)."""
    H4 = h4_mod2()
    if alg is None:
        alg = algebraic_subspace(curves)
    if H4.dim != 50:
        raise LatticeError(f"H^4(X)/2 has dimension {H4.dim}, expected 50")
    if alg.dim > H4.dim or any(not H4.contains(v) for v in alg.basis):
        raise LatticeError("algebraic subspace is not inside H^4(X)/2")
    return H4.dim - alg.dim


def defect_report(curves=FIXTURE_CURVES) -> DefectReport:
    H4 = h4_mod2()
    alg = algebraic_subspace(curves)
    van = vanishing_subspace_mod2()
    if van.basis != pushforward_kernel_mod2().basis:
        raise LatticeError("vanishing generators do not span the pushforward kernel")
    images = GF2Subspace.span([to_mask(ambient_pushforward(c.vector())) for c in curves], 4)
    factors = fstar_cokernel()
    twos = sum(1 for d in factors if d == 2)
    if any(d not in (1, 2) for d in factors) or len(factors) != van.dim:
        raise LatticeError(f"unexpected f_* invariant factors {sorted(set(factors))}")
    return DefectReport(
        h4_mod2_dim=H4.dim,
        alg_dim=alg.dim,
        van_dim=van.dim,
        alg_cap_van_dim=alg.intersect(van).dim,
        alg_image_dim=images.dim,
        defect_route_dims=ihc_defect_2torsion(alg=alg),
        defect_route_snf=twos,
        fstar_factors=factors,
    )


# ---------------------------------------------------------------------------
# divisibility


def named_class(name: str, which: str = "X"):
    """Vectors for generator labels and a few named combinations."""
    G = h2_presentation(which)
    p = {"X": "E", "Y": "F"}[which]
    all_planes = {f"{p}{i}_{j}": 1 for i in (1, 2) for j in range(1, NPLANES + 1)}
    named = {
        "sumE": all_planes,
        "sumE1": {f"{p}1_{j}": 1 for j in range(1, NPLANES + 1)},
        "sumE2": {f"{p}2_{j}": 1 for j in range(1, NPLANES + 1)},
    }
    if name in named:
        return G.vector(named[name])
    coef, _, base = name.partition("*")
    if base:
        return [int(coef) * x for x in named_class(base, which)]
    return G.vector({name: 1})


def divisibility_check(cls, n: int = None, which: str = "X"):
    """Divisibility index of a class in H^2 modulo torsion.

    ``cls`` is a generator label, a named class ("sumE", "2*H1", ...), or a
    vector.  With ``n`` the result is (index, index % n == 0).
    """
    G = h2_presentation(which)
    vec = named_class(cls, which) if isinstance(cls, str) else list(cls)
    m = G.divisibility(vec)
    return m if n is None else (m, m % n == 0)


# ---------------------------------------------------------------------------
# audit format

TABLE_HEADER = "enriques-cert lattice tables v1"


def _fmt_vec(L, v):
    return " ".join(f"{lab}={x}" for lab, x in zip(L, v) if x)


def dump_tables(curves=FIXTURE_CURVES) -> str:
    """Line-oriented text: header, then ``generator``, ``relation``,
    ``curve`` and ``vanishing`` records with label=value entries (zeros
    omitted)."""
    lines = [TABLE_HEADER]
    for which in ("X", "Y"):
        L = labels(which)
        lines.append(f"generators {which} " + " ".join(L))
        for row in h2_presentation(which).relations:
            lines.append(f"relation {which} {_fmt_vec(L, row)}")
    LX = labels("X")
    for c in curves:
        lines.append(f"curve {c.label} {_fmt_vec(LX, c.vector())}")
    for which in ("X", "Y"):
        for lab, v in vanishing_generators(which):
            lines.append(f"vanishing {which} {lab} {_fmt_vec(labels(which), v)}")
    return "\n".join(lines) + "\n"


def load_tables(text: str) -> dict:
    lines = text.splitlines()
    if not lines or lines[0] != TABLE_HEADER:
        raise LatticeError("not a lattice table document")
    out = {"generators": {}, "relations": {"X": [], "Y": []}, "curves": [], "vanishing": {"X": [], "Y": []}}

    def parse(which, entries):
        L = out["generators"][which]
        v = [0] * len(L)
        for e in entries:
            k, _, x = e.partition("=")
            v[L.index(k)] = int(x)
        return v

    for line in lines[1:]:
        kind, *rest = line.split()
        if kind == "generators":
            out["generators"][rest[0]] = rest[1:]
        elif kind == "relation":
            out["relations"][rest[0]].append(parse(rest[0], rest[1:]))
        elif kind == "curve":
            out["curves"].append(CurveClassVector.from_vector(rest[0], parse("X", rest[1:])))
        elif kind == "vanishing":
            out["vanishing"][rest[0]].append((rest[1], parse(rest[0], rest[2:])))
        else:
            raise LatticeError(f"unknown record {kind!r}")
    return out
