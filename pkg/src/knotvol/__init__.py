"""Quantum invariants of 4_1, 5_2, 6_1 and hyperbolic volumes.

Public surface: the knot enum, the state-sum engine (`quantum_invariant`
with direct/logscale/exact modes), the special functions (`li2`,
`lobachevsky`, `faddeev_s` and friends), the saddle-point volume
machinery, and the growth-rate fit that ties them together.
"""

from .asymfit import (
    FitResult,
    GrowthSeries,
    MainClaimReport,
    collect_series,
    fit_growth,
    main_claim_report,
)
from .cyclo import CycElement, cyclotomic_polynomial, exact_invariant
from .invariant import (
    InvariantValue,
    LogComplex,
    PochhammerTable,
    alexander_check,
    growth_point,
    pochhammer_table,
    quantum_invariant,
)
from .knots import KnotId
from .qdilog import (
    PolarPoint,
    QdParams,
    f_bar_gamma,
    f_gamma,
    faddeev_log_s,
    faddeev_s,
    funeq_residual,
    im_li2_polar,
    li2,
    lobachevsky,
    phi_angle,
)
from .saddle import (
    SaddleSolution,
    VolumeResult,
    hyperbolic_volume,
    potential,
    select_geometric,
    solve_stationary,
)

__version__ = "0.1.0"

__all__ = [
    "KnotId",
    "CycElement",
    "cyclotomic_polynomial",
    "exact_invariant",
    "InvariantValue",
    "LogComplex",
    "PochhammerTable",
    "alexander_check",
    "growth_point",
    "pochhammer_table",
    "quantum_invariant",
    "PolarPoint",
    "QdParams",
    "li2",
    "lobachevsky",
    "phi_angle",
    "im_li2_polar",
    "faddeev_s",
    "faddeev_log_s",
    "f_gamma",
    "f_bar_gamma",
    "funeq_residual",
    "SaddleSolution",
    "VolumeResult",
    "potential",
    "solve_stationary",
    "select_geometric",
    "hyperbolic_volume",
    "GrowthSeries",
    "FitResult",
    "MainClaimReport",
    "collect_series",
    "fit_growth",
    "main_claim_report",
    "__version__",
]
