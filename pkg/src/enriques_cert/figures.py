"""Figures written next to the report: Galois cycle counts and lattice dimensions."""

from __future__ import annotations

from collections import Counter
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

STYLE = {
    "font.size": 9,
    "axes.spines.top": False,
    "axes.spines.right": False,
    "figure.dpi": 120,
    "savefig.bbox": "tight",
}


def cycle_count_histogram(census, path, n: int = 24):
    """Observed number of cycles of Frobenius against the S_n distribution."""
    from .galois import stirling_cycle_distribution

    counts = Counter(len(ct) for _, ct in census)
    total = max(len(census), 1)
    expected = stirling_cycle_distribution(n)
    ks = list(range(1, 11))
    with plt.rc_context(STYLE):
        fig, ax = plt.subplots(figsize=(5.0, 3.0))
        ax.bar([k - 0.2 for k in ks], [counts.get(k, 0) / total for k in ks], width=0.4,
               label=f"observed ({len(census)} primes)", color="#4c72b0")
        ax.bar([k + 0.2 for k in ks], [float(expected[k]) for k in ks], width=0.4,
               label=f"uniform on S{n}", color="#dd8452")
        ax.set_xlabel("number of irreducible factors mod q")
        ax.set_ylabel("frequency")
        ax.set_xticks(ks)
        ax.legend(frameon=False)
        fig.savefig(path)
        plt.close(fig)
    return Path(path)


def lattice_dimension_chart(report, path):
    """Bar chart of the GF(2) dimensions entering the defect computation."""
    items = [
        ("H4/2", report.h4_mod2_dim),
        ("van", report.van_dim),
        ("alg", report.alg_dim),
        ("alg ∩ van", report.alg_cap_van_dim),
        ("defect", report.defect_route_dims),
    ]
    with plt.rc_context(STYLE):
        fig, ax = plt.subplots(figsize=(4.5, 3.0))
        bars = ax.bar([a for a, _ in items], [b for _, b in items], color="#55a868")
        for bar, (_, v) in zip(bars, items):
            ax.annotate(str(v), (bar.get_x() + bar.get_width() / 2, v), ha="center", va="bottom", fontsize=8)
        ax.set_ylabel("dimension over GF(2)")
        fig.savefig(path)
        plt.close(fig)
    return Path(path)


def render_figures(cfg, out_dir, claims):
    """Figures for the subcommands that ran; returns the written paths."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    ran = {c.claim_id for c in claims}
    paths = []
    if "t2.defect-46" in ran:
        from .lattice import defect_report

        paths.append(lattice_dimension_chart(defect_report(), out / "lattice_dimensions.png"))
    galois = next((c for c in claims if c.claim_id == "t1Q.galois-S24"), None)
    if galois is not None and galois.value is not None:
        from .galois import cycle_type_census

        census = cycle_type_census(cfg.load_polyset(), galois.value, count=40)
        paths.append(cycle_count_histogram(census, out / "galois_cycle_counts.png"))
    return paths
