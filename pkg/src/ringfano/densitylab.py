"""Closed-form densities, ring bounds and convergence sweeps.

Convention for the S construction: ``alpha`` is the fraction of
vertices outside ``V1``.  One round of iteration places a scaled copy
inside each of ``V2`` and ``V3`` (each holding ``alpha / 2`` of the
vertices), which multiplies the added density by ``2 (alpha/2)^3 =
alpha^3 / 4``.  Summing that geometric series gives
``s_iterated_density``.
"""

from __future__ import annotations

import dataclasses
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from math import sqrt
from typing import Callable, NamedTuple

import numpy as np
from scipy.optimize import minimize_scalar

from .constructions import ConstructionSpec, Kind, construction_density
from .errors import InvalidInputError

__all__ = [
    "s_base_density",
    "s_iterated_density",
    "s_finite_depth_density",
    "collapsing_series_density",
    "OptimumResult",
    "optimize_alpha",
    "codegree_bound_rings",
    "turan_bound_rings",
    "DensityReport",
    "density_sweep",
    "default_limit",
]


def s_base_density(alpha: float) -> float:
    """Asymptotic density of S(n) without iteration."""
    return 3 * alpha * (alpha * alpha / 2 - 3 * alpha / 2 + 1)


def s_iterated_density(alpha: float) -> float:
    """Asymptotic density of S(n) iterated without end inside ``V2`` and ``V3``."""
    return s_base_density(alpha) / (1 - alpha**3 / 4)


def s_finite_depth_density(alpha: float, depth: int) -> float:
    """Asymptotic density of S(n) after ``depth`` rounds of iteration."""
    if depth < 0:
        raise InvalidInputError(f"depth must be non-negative, got {depth}")
    r = alpha**3 / 4
    return s_base_density(alpha) * sum(r**i for i in range(depth + 1))


def collapsing_series_density(alpha: float) -> float:
    """``s_base(alpha) * sum_i (2 / 8^i)^i alpha^(3i)``, kept for comparison only.

    The inner exponent makes the terms collapse after ``i = 1``, so this
    behaves like a single round of iteration.
    """
    total, i = 0.0, 0
    while True:
        term = (2 / 8**i) ** i * alpha ** (3 * i)
        total += term
        if term < 1e-18 or i > 64:
            break
        i += 1
    return s_base_density(alpha) * total


class OptimumResult(NamedTuple):
    argmax: float
    value: float


def optimize_alpha(
    f: Callable[[float], float],
    lo: float = 0.0,
    hi: float = 1.0,
    tol: float = 1e-7,
    grid: int = 201,
) -> OptimumResult:
    """Maximise ``f`` on ``[lo, hi]``.

    A coarse grid brackets the best point, golden-section search narrows
    it to ``tol``, and a final sweep of 41 points over ``argmax +- tol``
    keeps the best value seen.
    """
    if not hi > lo:
        raise InvalidInputError(f"need lo < hi, got [{lo}, {hi}]")
    if tol <= 0:
        raise InvalidInputError("tol must be positive")
    xs = np.linspace(lo, hi, grid)
    ys = np.array([f(float(x)) for x in xs])
    i = int(np.argmax(ys))
    best_x, best_y = float(xs[i]), float(ys[i])
    if 0 < i < grid - 1 and ys[i] > ys[i - 1] and ys[i] > ys[i + 1]:
        res = minimize_scalar(
            lambda x: -f(x),
            bracket=(xs[i - 1], xs[i], xs[i + 1]),
            method="golden",
            tol=tol,
        )
        if -res.fun >= best_y:
            best_x, best_y = float(res.x), float(-res.fun)
    for x in np.linspace(max(lo, best_x - tol), min(hi, best_x + tol), 41):
        y = f(float(x))
        if y > best_y:
            best_x, best_y = float(x), float(y)
    return OptimumResult(best_x, best_y)


def codegree_bound_rings(t: int) -> float:
    """Upper bound ``sqrt(2 / t)`` on the co-degree density of ring-free graphs."""
    if t < 2:
        raise InvalidInputError(f"t must be at least 2, got {t}")
    return sqrt(2) / sqrt(t)


def turan_bound_rings(t: int) -> float | None:
    """Upper bound ``1/2 + 1/(t - 1)``; ``None`` at ``t = 2`` where it is undefined."""
    if t < 2:
        raise InvalidInputError(f"t must be at least 2, got {t}")
    if t == 2:
        return None
    return 0.5 + 1 / (t - 1)


def default_limit(spec: ConstructionSpec) -> float:
    match spec.kind:
        case Kind.B:
            return 3 / 4
        case Kind.G_HALF:
            return 1 / 2
        case Kind.TURAN_T:
            return 5 / 9
        case Kind.COMPLETE:
            return 1.0
        case Kind.S_ITER:
            return s_finite_depth_density(spec.alpha, spec.params.get("depth", 0))
    raise InvalidInputError(f"no known limit density for {spec.kind.value}; pass limit explicitly")


@dataclass
class DensityReport:
    construction: ConstructionSpec
    n_values: list[int]
    densities: list[float]
    limit_claim: float
    max_abs_gap: float

    def rows(self) -> list[tuple[int, float, float]]:
        return [(n, d, d - self.limit_claim) for n, d in zip(self.n_values, self.densities)]

    def to_dict(self) -> dict:
        return {
            "construction": self.construction.describe(),
            "n_values": list(self.n_values),
            "densities": list(self.densities),
            "limit_claim": self.limit_claim,
            "max_abs_gap": self.max_abs_gap,
        }


def _density_at(spec: ConstructionSpec, n: int) -> float:
    return construction_density(dataclasses.replace(spec, params={**spec.params, "n": n}))


def density_sweep(
    spec: ConstructionSpec,
    n_list,
    limit: float | None = None,
    workers: int = 1,
) -> DensityReport:
    """Densities of ``spec`` at each ``n`` in ``n_list`` and their largest gap to the limit."""
    n_values = [int(n) for n in n_list]
    if any(n < 3 for n in n_values):
        raise InvalidInputError("density sweep needs n >= 3")
    limit = default_limit(spec) if limit is None else limit
    if workers > 1:
        with ProcessPoolExecutor(workers) as pool:
            densities = list(pool.map(_density_at, [spec] * len(n_values), n_values))
    else:
        densities = [_density_at(spec, n) for n in n_values]
    gap = max((abs(d - limit) for d in densities), default=0.0)
    return DensityReport(spec, n_values, densities, limit, gap)
