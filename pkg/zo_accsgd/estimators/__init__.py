"""Zero-order gradient estimators and their Monte-Carlo diagnostics."""

from .diagnostics import (
    BiasReport,
    SecondMomentReport,
    estimate_bias,
    estimate_second_moment,
    second_moment_bound,
)
from .kernel import (
    EstimatorConfig,
    EstimatorMode,
    GradientEstimate,
    batched_estimate,
    central_l2_sample,
    kernel_gradient_sample,
    sample_block,
    smoothing_warning,
)
from .sampling import sample_probes, sample_sphere

__all__ = [
    "BiasReport",
    "EstimatorConfig",
    "EstimatorMode",
    "GradientEstimate",
    "SecondMomentReport",
    "batched_estimate",
    "central_l2_sample",
    "estimate_bias",
    "estimate_second_moment",
    "kernel_gradient_sample",
    "sample_block",
    "sample_probes",
    "sample_sphere",
    "second_moment_bound",
    "smoothing_warning",
]
