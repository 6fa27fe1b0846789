"""Growth-rate extraction from finite-N invariant data.

The asymptotic claim under test is 2*pi*log|<L>| ~ N*V(L).  We collect
log|<L>| on an arithmetic window of N, fit the correction model

    log_abs ~= a*N + b*log(N) + c

(the log N term soaks up the generic power-law prefactor of a saddle-point
approximation; the growth law itself fixes only the leading term), and report
volume_estimate = 2*pi*a against the independently computed saddle volume.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .invariant import growth_point
from .knots import KnotId
from .saddle import hyperbolic_volume

__all__ = [
    "MODELS",
    "GrowthSeries",
    "FitResult",
    "MainClaimReport",
    "collect_series",
    "fit_growth",
    "main_claim_report",
]

MODELS = ("linear", "linear_plus_log")


@dataclass(frozen=True)
class GrowthSeries:
    """Points (N, log|<L>|) for one knot, held sorted by N.

    Construction sorts the points, so downstream fits cannot depend on
    input order; duplicate or non-finite entries are rejected.
    """

    knot: KnotId
    points: tuple[tuple[int, float], ...]

    def __post_init__(self) -> None:
        pts = tuple(sorted((int(n), float(y)) for n, y in self.points))
        for (n1, y1), (n2, _) in zip(pts, pts[1:]):
            if n1 == n2:
                raise ValueError(f"duplicate order N = {n1}")
        for n, y in pts:
            if n < 1:
                raise ValueError(f"order must be >= 1, got {n}")
            if not math.isfinite(y):
                raise ValueError(f"non-finite log_abs at N = {n}")
        object.__setattr__(self, "points", pts)

    def subset(self, n_min: int) -> "GrowthSeries":
        return GrowthSeries(
            self.knot, tuple(p for p in self.points if p[0] >= n_min)
        )


@dataclass(frozen=True)
class FitResult:
    """Least-squares coefficients (a, b, c) of log_abs ~ a*N + b*log N + c.

    For the plain linear model b is identically zero.  volume_estimate is
    2*pi*a by definition.
    """

    model: str
    coefficients: tuple[float, float, float]
    rms_residual: float
    volume_estimate: float
    window: tuple[int, int]


def collect_series(
    knot: KnotId,
    n_min: int,
    n_max: int,
    step: int = 1,
    threads: int = 1,
) -> GrowthSeries:
    """One logscale growth point per N in [n_min, n_max] with the given step.

    Different N values are independent, so with threads > 1 they are
    evaluated concurrently (each inner evaluation stays single-threaded).
    """
    if not 2 <= n_min < n_max:
        raise ValueError(
            f"need 2 <= n_min < n_max, got n_min={n_min}, n_max={n_max}"
        )
    if step < 1:
        raise ValueError(f"step must be >= 1, got {step}")
    orders = list(range(n_min, n_max + 1, step))
    if threads == 1:
        points = [growth_point(knot, n) for n in orders]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            points = list(pool.map(lambda n: growth_point(knot, n), orders))
    return GrowthSeries(knot, tuple(points))


def fit_growth(series: GrowthSeries, model: str = "linear_plus_log") -> FitResult:
    """Ordinary least squares over the series, no weighting.

    Needs >= 2 points for the linear model and >= 4 for linear_plus_log;
    a rank-deficient design matrix is an error rather than a silent
    pseudo-inverse answer.
    """
    if model not in MODELS:
        raise ValueError(f"model must be one of {MODELS}, got {model!r}")
    required = 2 if model == "linear" else 4
    if len(series.points) < required:
        raise ValueError(
            f"{model} needs >= {required} points, got {len(series.points)}"
        )
    ns = np.array([n for n, _ in series.points], dtype=float)
    ys = np.array([y for _, y in series.points])
    if model == "linear":
        design = np.column_stack([ns, np.ones_like(ns)])
    else:
        design = np.column_stack([ns, np.log(ns), np.ones_like(ns)])
    coef, _, rank, _ = np.linalg.lstsq(design, ys, rcond=None)
    if rank < design.shape[1]:
        raise ArithmeticError(
            f"rank-deficient design (rank {rank}) for model {model}"
        )
    if model == "linear":
        a, c = coef
        b = 0.0
    else:
        a, b, c = coef
    rms = float(np.sqrt(np.mean((design @ coef - ys) ** 2)))
    window = (series.points[0][0], series.points[-1][0])
    return FitResult(
        model,
        (float(a), float(b), float(c)),
        rms,
        2.0 * math.pi * float(a),
        window,
    )


@dataclass(frozen=True)
class MainClaimReport:
    """Fitted growth rate versus saddle volume over one window."""

    knot: KnotId
    model: str
    fit: FitResult
    volume_estimate: float
    saddle_volume: float
    absolute_gap: float
    relative_gap: float
    # the same comparison after doubling the window's lower end
    shifted_relative_gap: float
    gap_shrinks: bool


def main_claim_report(
    knot: KnotId,
    n_min: int,
    n_max: int,
    step: int = 10,
    model: str = "linear_plus_log",
    threads: int = 1,
) -> MainClaimReport:
    """Test 2*pi*log|<L>| ~ N*V(L) on [n_min, n_max].

    Fits the window, compares 2*pi*a against the saddle volume, then
    refits on the sub-window N >= 2*n_min of the same data to report
    whether the relative gap shrinks as the window moves out.
    """
    series = collect_series(knot, n_min, n_max, step, threads=threads)
    fit = fit_growth(series, model)
    volume = hyperbolic_volume(knot).volume
    gap = abs(fit.volume_estimate - volume)
    shifted = fit_growth(series.subset(2 * n_min), model)
    shifted_gap = abs(shifted.volume_estimate - volume)
    return MainClaimReport(
        knot,
        model,
        fit,
        fit.volume_estimate,
        volume,
        gap,
        gap / volume,
        shifted_gap / volume,
        shifted_gap < gap,
    )
