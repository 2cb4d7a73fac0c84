"""Figures for density sweeps and the S-construction curves (PNG via Agg)."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from .densitylab import (  # noqa: E402
    DensityReport,
    collapsing_series_density,
    s_base_density,
    s_iterated_density,
)

__all__ = ["plot_density_report", "plot_s_curves"]

# fixed metadata keeps PNG bytes stable across runs
_PNG_META = {"Software": None}


def plot_density_report(report: DensityReport, path) -> Path:
    path = Path(path)
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.plot(report.n_values, report.densities, "o-", ms=3, label="edge density")
    ax.axhline(report.limit_claim, color="k", ls="--", lw=1, label=f"limit {report.limit_claim:.6f}")
    ax.set_xlabel("n")
    ax.set_ylabel("e(G) / C(n, 3)")
    ax.set_title(report.construction.describe())
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=120, metadata=_PNG_META)
    plt.close(fig)
    return path


def plot_s_curves(path, marks: dict[str, tuple[float, float]] | None = None) -> Path:
    """Base, iterated and collapsing-series densities over ``alpha``; ``marks`` maps label to ``(x, y)``."""
    path = Path(path)
    xs = np.linspace(0.0, 1.0, 401)
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.plot(xs, [s_base_density(x) for x in xs], label="base")
    ax.plot(xs, [s_iterated_density(x) for x in xs], label="iterated (closed form)")
    ax.plot(xs, [collapsing_series_density(x) for x in xs], ":", label="collapsing series")
    for label, (x, y) in (marks or {}).items():
        ax.plot([x], [y], "k.", ms=6)
        ax.annotate(label, (x, y), textcoords="offset points", xytext=(4, -12), fontsize=8)
    ax.set_xlabel("alpha (fraction outside V1)")
    ax.set_ylabel("asymptotic density")
    ax.set_ylim(0, 0.65)
    ax.legend(loc="lower center")
    fig.tight_layout()
    fig.savefig(path, dpi=120, metadata=_PNG_META)
    plt.close(fig)
    return path
