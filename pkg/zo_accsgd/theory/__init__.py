"""Complexity planning for ZO-AccSGD."""

from .complexity import (
    BETA_THRESHOLD,
    ComplexityPlan,
    Regime,
    classify_regime,
    delta_branch,
    error_floor_terms,
    max_noise,
    plan,
    required_batch,
    smoothing_choice,
)

__all__ = [
    "BETA_THRESHOLD",
    "ComplexityPlan",
    "Regime",
    "classify_regime",
    "delta_branch",
    "error_floor_terms",
    "max_noise",
    "plan",
    "required_batch",
    "smoothing_choice",
]
