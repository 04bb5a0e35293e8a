"""Claim reports, the JSON run document and the claims.tsv table."""

from __future__ import annotations

import csv
import hashlib
import json
import time
from dataclasses import dataclass, field
from pathlib import Path

from . import __version__

VERIFIED = "Verified"
INCONCLUSIVE = "Inconclusive"
FAILED = "Failed"
VERDICTS = (VERIFIED, INCONCLUSIVE, FAILED)

TSV_COLUMNS = ("claim_id", "verdict", "value", "inputs_digest", "wall_time_s", "summary")


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (set, frozenset)):
        return sorted(_jsonable(v) for v in x)
    if hasattr(x, "numerator") and hasattr(x, "denominator") and not isinstance(x, (int, bool)):
        return str(x) if x.denominator != 1 else int(x)
    if hasattr(x, "to_json"):
        return _jsonable(x.to_json())
    return x


def inputs_digest(inputs) -> str:
    raw = json.dumps(_jsonable(inputs), sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(raw.encode()).hexdigest()[:16]


@dataclass
class ClaimReport:
    claim_id: str
    verdict: str
    value: object = None
    summary: str = ""
    inputs: dict = field(default_factory=dict)
    evidence: dict = field(default_factory=dict)
    wall_time: float = 0.0

    def __post_init__(self):
        if self.verdict not in VERDICTS:
            raise ValueError(f"unknown verdict {self.verdict!r}")

    @property
    def digest(self):
        return inputs_digest({"claim": self.claim_id, **self.inputs})

    def to_json(self, timings: bool = True):
        d = {
            "claim_id": self.claim_id,
            "verdict": self.verdict,
            "value": _jsonable(self.value),
            "summary": self.summary,
            "inputs": _jsonable(self.inputs),
            "inputs_digest": self.digest,
            "evidence": _jsonable(self.evidence),
        }
        if timings:
            d["wall_time_s"] = round(self.wall_time, 4)
        return d


def timed(claim_id, fn, inputs=None):
    """Run ``fn() -> (verdict, value, summary, evidence)`` into a ClaimReport.

    Exceptions become Failed claims so one bad claim does not stop a run.
    """
    t0 = time.perf_counter()
    try:
        verdict, value, summary, evidence = fn()
    except Exception as exc:  # isolation of per-claim failures
        verdict, value, summary, evidence = FAILED, None, f"{type(exc).__name__}: {exc}", {}
    return ClaimReport(claim_id, verdict, value, summary, dict(inputs or {}), evidence, time.perf_counter() - t0)


def run_document(claims, config: dict, timings: bool = True) -> dict:
    counts = {v: sum(1 for c in claims if c.verdict == v) for v in VERDICTS}
    doc = {
        "tool": "enriques-cert",
        "version": __version__,
        "config": _jsonable(config),
        "counts": counts,
        "claims": [c.to_json(timings) for c in claims],
    }
    return doc


def write_report(claims, config: dict, out_dir) -> dict:
    """Write report.json and claims.tsv into ``out_dir``; return the paths."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    doc = run_document(claims, config)
    json_path = out / "report.json"
    json_path.write_text(json.dumps(doc, indent=2, sort_keys=False) + "\n", encoding="utf-8")
    tsv_path = out / "claims.tsv"
    with tsv_path.open("w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, delimiter="\t", lineterminator="\n")
        w.writerow(TSV_COLUMNS)
        for c in claims:
            w.writerow([c.claim_id, c.verdict, json.dumps(_jsonable(c.value)), c.digest,
                        f"{c.wall_time:.4f}", c.summary])
    return {"report": json_path, "claims": tsv_path}


def read_claims_tsv(path):
    with open(path, newline="", encoding="utf-8") as fh:
        return list(csv.DictReader(fh, delimiter="\t"))
