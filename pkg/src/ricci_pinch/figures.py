"""Figure rendering for the report path.

Each function saves one PNG summarizing a computed quantity: the Ricci
spectrum against the pinching threshold, the functional maxima against the
p(n-p) ceiling, or the window of radii on which a product of spheres meets
the threshold.  All figures use the non-interactive Agg backend.
"""

from __future__ import annotations

import math
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from .catalog import clifford_torus, clifford_window
from .curvature import PinchingParams, ShapeOperatorSet, mean_curvature, pinch_bound, ricci_operator
from .lawson_simons import ls_max
from .verdict import check_pinching


def fig_ricci_spectrum(ops: ShapeOperatorSet, k: int, path: Path) -> Path:
    """Sorted Ricci eigenvalues with the pinching threshold at level k."""
    eigs = np.linalg.eigvalsh(ricci_operator(ops))
    h = mean_curvature(ops)
    bound = pinch_bound(PinchingParams(ops.n, k, h.length if h.direction is not None else 0.0))
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.plot(np.arange(1, ops.n + 1), eigs, "o", label="Ricci eigenvalues")
    ax.axhline(bound, color="crimson", ls="--", label=f"threshold at k={k}")
    ax.set_xlabel("eigenvalue index")
    ax.set_ylabel("Ricci curvature")
    ax.set_title(ops.label or "Ricci spectrum")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def fig_ls_profile(ops: ShapeOperatorSet, p_max: int, path: Path, seed: int = 0,
                   restarts: int = 40) -> Path:
    """Best functional value per plane dimension against the p(n-p) ceiling."""
    ps = np.arange(1, p_max + 1)
    values = [ls_max(ops, int(p), restarts=restarts, seed=seed).value for p in ps]
    bounds = [p * (ops.n - p) for p in ps]
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.plot(ps, values, "o-", label="maximized functional")
    ax.plot(ps, bounds, "s--", color="crimson", label="p(n-p)")
    ax.set_xlabel("plane dimension p")
    ax.set_ylabel("functional value")
    ax.set_title(ops.label or "functional profile")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def fig_torus_window(n: int, p: int, path: Path, points: int = 200) -> Path:
    """Margin min Ricci - threshold across the r^2 sweep, with the window."""
    lo, hi = clifford_window(n, p)
    k = min(p, n - p)
    grid = np.linspace(0.02, 0.98, points)
    margins = []
    for t in grid:
        entry = clifford_torus(n, p, math.sqrt(t))
        v = check_pinching(entry.data, k)
        margins.append(v.ricci_min - v.bound)
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.plot(grid, margins, label="min Ricci - threshold")
    ax.axhline(0.0, color="gray", lw=0.8)
    ax.axvline(lo, color="crimson", ls="--", label="window endpoints")
    ax.axvline(hi, color="crimson", ls="--")
    ax.set_xlabel("r²")
    ax.set_ylabel("margin")
    ax.set_title(f"product of spheres, n={n}, p={p}")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def render_report_figures(config: dict, report: dict, outdir: Path) -> list[str]:
    """Render the figures appropriate to a report configuration; returns the
    file names written (relative to outdir)."""
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    written: list[str] = []
    results = report.get("results", {})
    if "entry" in report and "star" in results:
        from .report import _resolve_operators

        ops, _ = _resolve_operators(config)
        k = int(config.get("k", 2))
        fig_ricci_spectrum(ops, k, outdir / "ricci_spectrum.png")
        written.append("ricci_spectrum.png")
        if "ls-max" in results:
            fig_ls_profile(ops, k, outdir / "ls_profile.png", seed=int(config.get("seed", 0)))
            written.append("ls_profile.png")
        if config.get("entry") == "clifford-torus":
            fig_torus_window(int(config["n"]), int(config["p"]), outdir / "torus_window.png")
            written.append("torus_window.png")
    return written
