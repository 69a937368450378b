"""Sorted-L1 penalized classification with smoothed hinge and quantile losses."""

from ._core import (
    DivergenceError,
    empirical_risk,
    eta_max,
    fit,
    fit_path,
    generate,
    lipschitz_constant,
    loss_value,
    prox_sorted_l1,
    run_table,
    slope_norm,
    slope_weights_default,
    smoothed_gradient,
    smoothed_risk,
    soft_threshold,
)

__all__ = [
    "DivergenceError",
    "empirical_risk",
    "eta_max",
    "fit",
    "fit_path",
    "generate",
    "lipschitz_constant",
    "loss_value",
    "prox_sorted_l1",
    "run_table",
    "slope_norm",
    "slope_weights_default",
    "smoothed_gradient",
    "smoothed_risk",
    "soft_threshold",
]
