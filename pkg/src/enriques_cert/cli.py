"""Command-line front end: ``enriques-cert <subcommand> [options]``."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .claims import ORDER, RunConfig, run
from .reports import FAILED, INCONCLUSIVE, write_report

CONFIG_KEYS = {f for f in RunConfig.__dataclass_fields__}


def build_parser():
    ap = argparse.ArgumentParser(prog="enriques-cert",
                                 description="Exact and certified checks for a family of Enriques surfaces.")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--config", help="JSON file with RunConfig fields; flags override it")
        p.add_argument("--seed", type=int)
        p.add_argument("--field", help="Q or F_p (e.g. F_101)")
        p.add_argument("--polyset", help="PolySet JSON file (default: seeded random)")
        p.add_argument("--height", type=int, help="coefficient height bound for random PolySets")
        p.add_argument("--prime-budget", "--budget", dest="prime_budget", type=int,
                       help="auxiliary primes per Galois certificate")
        p.add_argument("--candidates", type=int, help="number of base-point primes to try")
        p.add_argument("--trials", type=int, help="smoothness sampling trials")
        p.add_argument("--N", dest="N", type=int, help="number of plane labels for the congruence system")
        p.add_argument("--k", dest="k", type=int, help="subset size for the congruence system")
        p.add_argument("--out", help="directory for report.json, claims.tsv and figures")
        p.add_argument("--claims", help="comma-separated claim ids (or prefixes) to keep")
        p.add_argument("--no-figures", dest="figures", action="store_false", default=None)
        p.add_argument("--cache-dir", dest="cache", help="certificate cache (default: $ENRIQUES_CERT_CACHE)")

    for name in ORDER + ("all",):
        common(sub.add_parser(name, help=f"run the {name} claims" if name != "all" else "run every claim"))
    rp = sub.add_parser("replay", help="re-verify a stored cycle-type certificate")
    rp.add_argument("path")
    rp.add_argument("--polyset", help="PolySet JSON for the digest check and deep replay")
    rp.add_argument("--deep", action="store_true", help="also recompute each polynomial by elimination")
    return ap


def config_from_args(args) -> RunConfig:
    data = {}
    if args.config:
        raw = json.loads(Path(args.config).read_text(encoding="utf-8"))
        unknown = set(raw) - CONFIG_KEYS - {"_comment"}
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        data.update({k: v for k, v in raw.items() if k in CONFIG_KEYS})
    for key in CONFIG_KEYS:
        val = getattr(args, key, None)
        if val is not None:
            data[key] = val
    if isinstance(data.get("claims"), str):
        data["claims"] = tuple(c.strip() for c in data["claims"].split(",") if c.strip())
    for key in ("claims", "oracle_primes"):
        if key in data:
            data[key] = tuple(data[key])
    return RunConfig(**data)


def _replay(args) -> int:
    from .galois import replay_certificate
    from .polyset import PolySet

    ps = PolySet.load(args.polyset) if args.polyset else None
    res = replay_certificate(Path(args.path).read_text(encoding="utf-8"), ps=ps, deep=args.deep)
    where = f" (entry {res.bad_entry})" if res.bad_entry is not None else ""
    print(f"{res.verdict}{where}: {res.message}")
    return 1 if res.verdict == FAILED else 0


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    if args.command == "replay":
        return _replay(args)
    try:
        cfg = config_from_args(args)
    except (ValueError, TypeError, OSError) as exc:
        ap.error(str(exc))
    claims = run(args.command, cfg)
    width = max((len(c.claim_id) for c in claims), default=10)
    for c in claims:
        print(f"{c.verdict:<12} {c.claim_id:<{width}}  {json.dumps(c.value, default=str)}  {c.summary}")
    if cfg.out:
        paths = write_report(claims, cfg.to_json(), cfg.out)
        if cfg.figures:
            from .figures import render_figures

            for p in render_figures(cfg, cfg.out, claims):
                paths[p.stem] = p
        for p in paths.values():
            print(f"wrote {p}")
    n_inc = sum(1 for c in claims if c.verdict == INCONCLUSIVE)
    if n_inc:
        print(f"warning: {n_inc} claim(s) inconclusive", file=sys.stderr)
    return 1 if any(c.verdict == FAILED for c in claims) else 0


if __name__ == "__main__":
    sys.exit(main())
