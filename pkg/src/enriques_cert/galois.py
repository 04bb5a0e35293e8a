"""Certifying that a Galois group is the full symmetric group from Frobenius
cycle types (Dedekind), with a replayable text certificate.

Group theory used:

* an n-cycle makes the group transitive;
* a transitive group containing an l-cycle, l prime with n/2 < l, is
  primitive, and a primitive group containing an l-cycle with l <= n - 3
  contains A_n (Jordan);
* a primitive group containing a transposition is S_n.

A cycle type with a single part 2 and all other parts odd powers to a
transposition; one with a single part divisible by l, equal to l, powers
to an l-cycle.  For small n without a prime in (n/2, n-3], primitivity
comes from n prime (transitivity suffices) or from an (n-1)-cycle, which
makes the group 2-transitive.
"""

from __future__ import annotations

import hashlib
import os
from dataclasses import dataclass, field
from pathlib import Path

from .fields import GF, QQ, is_prime, primes_from
from .unipoly import UniPoly, cycle_type_fp, factor_fp, is_squarefree

TRANSITIVITY = "transitivity"
TRANSPOSITION = "transposition-power"
LONG_PRIME = "long-prime-cycle"
N_MINUS_ONE = "n-1-cycle"

HEADER = "enriques-cert cycle-type certificate v1"


def long_primes(n: int):
    """Primes l with n/2 < l <= n - 3."""
    return [l for l in range(n // 2 + 1, n - 2) if is_prime(l) and 2 * l > n]


def required_roles(n: int):
    if n <= 2:
        return (TRANSITIVITY,)
    if long_primes(n):
        return (TRANSITIVITY, LONG_PRIME, TRANSPOSITION)
    if is_prime(n):
        return (TRANSITIVITY, TRANSPOSITION)
    return (TRANSITIVITY, N_MINUS_ONE, TRANSPOSITION)


def role_holds(role: str, ctype, n: int) -> bool:
    ctype = sorted(ctype)
    if sum(ctype) != n:
        return False
    if role == TRANSITIVITY:
        return ctype == [n]
    if role == TRANSPOSITION:
        evens = [c for c in ctype if c % 2 == 0]
        return evens == [2]
    if role == LONG_PRIME:
        for l in long_primes(n):
            divisible = [c for c in ctype if c % l == 0]
            if divisible == [l]:
                return True
        return False
    if role == N_MINUS_ONE:
        return ctype == [1, n - 1]
    raise ValueError(f"unknown role {role!r}")


def roles_of(ctype, n: int):
    return [r for r in required_roles(n) if role_holds(r, ctype, n)]


@dataclass(frozen=True)
class CertEntry:
    prime: int
    role: str
    ctype: tuple
    coeffs: tuple  # f mod prime, low degree first


@dataclass
class CycleTypeCertificate:
    n: int
    polyset_digest: str
    basepoint: tuple
    chart: int
    entries: list = field(default_factory=list)
    skipped: list = field(default_factory=list)   # (prime, reason)
    verdict: str = "Inconclusive"

    @property
    def certified(self) -> bool:
        return self.verdict == f"S{self.n}"

    def filled_roles(self):
        return {e.role for e in self.entries}

    def assess(self) -> str:
        """Recompute the verdict from the entries' role conditions."""
        need = set(required_roles(self.n))
        have = {e.role for e in self.entries if role_holds(e.role, e.ctype, self.n)}
        return f"S{self.n}" if need <= have else "Inconclusive"

    # -- canonical text ---------------------------------------------------

    def dumps(self) -> str:
        lines = [
            HEADER,
            f"n {self.n}",
            f"polyset {self.polyset_digest}",
            f"basepoint {self.basepoint[0]} {self.basepoint[1]}",
            f"chart {self.chart}",
        ]
        for e in self.entries:
            lines.append(f"entry {e.prime} {e.role} {','.join(map(str, e.ctype))} {','.join(map(str, e.coeffs))}")
        for q, reason in self.skipped:
            lines.append(f"skip {q} {reason}")
        lines.append(f"verdict {self.verdict}")
        return "\n".join(lines) + "\n"

    @classmethod
    def loads(cls, text: str) -> "CycleTypeCertificate":
        lines = text.splitlines()
        if not lines or lines[0] != HEADER:
            raise ValueError("not a cycle-type certificate")
        fields_ = {}
        entries, skipped, verdict = [], [], None
        for ln in lines[1:]:
            key, _, rest = ln.partition(" ")
            if key == "entry":
                q, role, ctype, coeffs = rest.split(" ")
                entries.append(CertEntry(int(q), role, tuple(int(c) for c in ctype.split(",")),
                                         tuple(int(c) for c in coeffs.split(","))))
            elif key == "skip":
                q, reason = rest.split(" ", 1)
                skipped.append((int(q), reason))
            elif key == "verdict":
                verdict = rest
            elif key in ("n", "polyset", "basepoint", "chart"):
                fields_[key] = rest
            else:
                raise ValueError(f"unknown certificate line {ln!r}")
        lam, mu = fields_["basepoint"].split()
        return cls(int(fields_["n"]), fields_["polyset"], (int(lam), int(mu)), int(fields_["chart"]),
                   entries, skipped, verdict)


# ---------------------------------------------------------------------------


def certify_from_source(n: int, source, primes, budget: int, meta=None) -> CycleTypeCertificate:
    """Fill the roles from polynomials ``source(q)`` (over GF(q), or None /
    an ArithmeticError for an unusable q) at up to ``budget`` primes."""
    meta = meta or {}
    cert = CycleTypeCertificate(n, meta.get("digest", "-"), tuple(meta.get("basepoint", (1, 0))),
                                meta.get("chart", 1))
    need = list(required_roles(n))
    if n == 1:
        cert.verdict = "S1"
        return cert
    filled = {}
    used = 0
    for q in primes:
        if used >= budget or len(filled) == len(need):
            break
        used += 1
        try:
            f = source(q)
        except (ArithmeticError, ValueError):
            cert.skipped.append((q, "bad-reduction"))
            continue
        if f is None or f.degree != n:
            cert.skipped.append((q, "degree-drop"))
            continue
        if not is_squarefree(f):
            cert.skipped.append((q, "not-squarefree"))
            continue
        ctype = tuple(cycle_type_fp(f))
        for role in need:
            if role not in filled and role_holds(role, ctype, n):
                filled[role] = CertEntry(q, role, ctype, tuple(int(c) for c in f.coeffs))
    cert.entries = [filled[r] for r in need if r in filled]
    cert.verdict = cert.assess()
    return cert


def auxiliary_primes(start: int = 2):
    return primes_from(start)


def _choose_chart(eqs, probe: int = 2147483647, max_chart: int = 8) -> int:
    from .elimination import eliminate_reduced

    for c in range(1, max_chart + 1):
        if eliminate_reduced(eqs, probe, c).degree == 24:
            return c
    return 1


def certify_symmetric_group(ps, p: int, prime_budget: int = 500, chart: int = None) -> CycleTypeCertificate:
    """Certificate for Gal = S_24 of the cover polynomial at (lam:mu) = (1:p).

    Auxiliary primes q = 2, 3, 5, ... are used only when f mod q has full
    degree and is squarefree; roles are filled by the smallest qualifying q.
    """
    from .elimination import eliminate_reduced
    from .scheme import cover_equations

    basept = (1, p)
    eqs = cover_equations(ps, basept)
    if chart is None:
        chart = _choose_chart(eqs) if prime_budget > 0 else 1
    exact_cache = {}

    def source(q):
        if q < 29:
            if "f" not in exact_cache:
                from .elimination import eliminate

                exact_cache["f"] = eliminate(eqs, QQ, chart)
            return exact_cache["f"].reduce_mod(q)
        return eliminate_reduced(eqs, q, chart)

    meta = {"digest": ps.digest(), "basepoint": basept, "chart": chart}
    return certify_from_source(24, source, auxiliary_primes(), prime_budget, meta)


@dataclass
class SearchResult:
    prime: int
    certificate: CycleTypeCertificate
    attempts: list

    @property
    def verdict(self):
        return self.certificate.verdict if self.certificate else "Inconclusive"


def search_good_prime(ps, candidates, prime_budget: int = 500) -> SearchResult:
    """First candidate p whose certificate reaches S_24 within the budget."""
    attempts = []
    last = None
    for p in candidates:
        cert = certify_symmetric_group(ps, p, prime_budget)
        attempts.append((p, cert.verdict))
        last = cert
        if cert.certified:
            return SearchResult(p, cert, attempts)
    return SearchResult(None, last, attempts)


# ---------------------------------------------------------------------------
# replay


@dataclass
class ReplayResult:
    verdict: str                # Verified | Failed | Inconclusive
    bad_entry: int = None
    message: str = ""


def replay_certificate(cert_or_text, ps=None, deep: bool = False, seed: int = 0) -> ReplayResult:
    """Re-check every entry by a fresh factorization of its stored polynomial.

    With ``deep`` (and the PolySet) the polynomial mod q is also recomputed
    by elimination and compared with the stored coefficients.
    """
    if isinstance(cert_or_text, CycleTypeCertificate):
        cert = cert_or_text
    else:
        try:
            cert = CycleTypeCertificate.loads(cert_or_text)
        except (ValueError, KeyError, IndexError) as exc:
            return ReplayResult("Failed", None, f"unparseable certificate: {exc}")
    if ps is not None and ps.digest() != cert.polyset_digest:
        return ReplayResult("Failed", None, "certificate belongs to a different PolySet")
    n = cert.n
    eqs = None
    if deep and ps is not None:
        from .scheme import cover_equations

        eqs = cover_equations(ps, cert.basepoint)
    for i, e in enumerate(cert.entries):
        if not is_prime(e.prime):
            return ReplayResult("Failed", i, f"entry {i}: {e.prime} is not prime")
        if e.role not in required_roles(n):
            return ReplayResult("Failed", i, f"entry {i}: role {e.role!r} not used for n={n}")
        F = GF(e.prime)
        f = UniPoly(F, list(e.coeffs), "u")
        if f.degree != n or list(f.coeffs) != list(e.coeffs):
            return ReplayResult("Failed", i, f"entry {i}: stored polynomial is not a reduced degree-{n} polynomial")
        factors = factor_fp(f, seed=seed)
        if any(m > 1 for _, m in factors):
            return ReplayResult("Failed", i, f"entry {i}: polynomial mod {e.prime} is not squarefree")
        fresh = sorted(h.degree for h, _ in factors)
        if tuple(fresh) != tuple(sorted(e.ctype)):
            return ReplayResult("Failed", i, f"entry {i}: recorded type {list(e.ctype)} but factorization gives {fresh}")
        if not role_holds(e.role, e.ctype, n):
            return ReplayResult("Failed", i, f"entry {i}: type {list(e.ctype)} does not justify role {e.role}")
        if eqs is not None:
            from .elimination import eliminate, eliminate_reduced

            g = eliminate(eqs, QQ, cert.chart).reduce_mod(e.prime) if e.prime < 29 else \
                eliminate_reduced(eqs, e.prime, cert.chart)
            if tuple(g.coeffs) != tuple(e.coeffs):
                return ReplayResult("Failed", i, f"entry {i}: stored polynomial differs from the elimination mod {e.prime}")
    if cert.assess() != cert.verdict:
        return ReplayResult("Failed", None, f"verdict {cert.verdict!r} not supported by the entries")
    if cert.verdict == f"S{n}":
        return ReplayResult("Verified", None, f"all {len(cert.entries)} entries re-verified")
    return ReplayResult("Inconclusive", None, "entries valid but roles incomplete")


# ---------------------------------------------------------------------------
# cache


CACHE_ENV = "ENRIQUES_CERT_CACHE"


def cache_dir(path=None) -> Path:
    root = Path(path or os.environ.get(CACHE_ENV) or Path.home() / ".cache" / "enriques_cert")
    root.mkdir(parents=True, exist_ok=True)
    return root


def cache_key(digest: str, basepoint) -> str:
    raw = f"{digest}:{basepoint[0]}:{basepoint[1]}"
    return hashlib.sha256(raw.encode()).hexdigest()[:24]


def cache_certificate(cert: CycleTypeCertificate, root=None) -> Path:
    path = cache_dir(root) / f"{cache_key(cert.polyset_digest, cert.basepoint)}.cert"
    path.write_text(cert.dumps(), encoding="utf-8")
    return path


def load_cached(digest: str, basepoint, root=None):
    path = cache_dir(root) / f"{cache_key(digest, basepoint)}.cert"
    if not path.exists():
        return None
    return CycleTypeCertificate.loads(path.read_text(encoding="utf-8"))


def cycle_type_census(ps, p: int, count: int = 40, chart: int = None, start: int = 29):
    """Cycle types of the cover polynomial at (1:p) modulo the first ``count``
    good primes q >= start."""
    from .elimination import eliminate_reduced
    from .scheme import cover_equations

    eqs = cover_equations(ps, (1, p))
    chart = chart or _choose_chart(eqs)
    out = []
    for q in auxiliary_primes(start):
        if len(out) >= count:
            break
        f = eliminate_reduced(eqs, q, chart)
        if f.degree != 24 or not is_squarefree(f):
            continue
        out.append((q, cycle_type_fp(f)))
    return out


def stirling_cycle_distribution(n: int):
    """P(a uniform permutation of S_n has k cycles), k = 0..n."""
    from fractions import Fraction
    from math import factorial

    c = [1]  # unsigned Stirling numbers of the first kind, row by row
    for m in range(n):
        nxt = [0] * (len(c) + 1)
        for k, v in enumerate(c):
            nxt[k] += m * v
            nxt[k + 1] += v
        c = nxt
    return [Fraction(v, factorial(n)) for v in c]
