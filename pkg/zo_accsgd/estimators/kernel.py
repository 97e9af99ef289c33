"""Randomized finite-difference gradient estimators.

kernel_onepoint:  d * (f~(x + h r e) - f~(x - h r e)) / (2h) * K(r) * e
central_l2:       d * (f~(x + h e)   - f~(x - h e))   / (2h) * e
"""

import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Union

import numpy as np

from ..core.oracle import ZeroOrderOracle
from ..core.rng import RngLike, as_generator
from ..errors import UsageError
from ..kernels import KernelSpec
from .sampling import sample_probes

CANCELLATION_RATIO: float = 1e-3


class EstimatorMode(Enum):
    KERNEL_ONEPOINT = "kernel_onepoint"
    CENTRAL_L2 = "central_l2"


@dataclass(frozen=True)
class EstimatorConfig:
    """Settings of the batched gradient estimator.

    Args:
        h: Smoothing radius, > 0
        batch_size: Samples averaged per estimate, >= 1
        kernel: Smoothing kernel; required for kernel_onepoint, ignored for central_l2
        mode: Estimator family
    """

    h: float
    batch_size: int = 1
    kernel: Optional[KernelSpec] = None
    mode: EstimatorMode = EstimatorMode.KERNEL_ONEPOINT

    def __post_init__(self) -> None:
        if isinstance(self.mode, str):
            object.__setattr__(self, "mode", EstimatorMode(self.mode))
        if not (math.isfinite(self.h) and self.h > 0):
            raise UsageError(f"smoothing parameter h must be > 0, got {self.h}")
        if int(self.batch_size) != self.batch_size or self.batch_size < 1:
            raise UsageError(f"batch size must be an integer >= 1, got {self.batch_size}")
        if self.mode is EstimatorMode.KERNEL_ONEPOINT and self.kernel is None:
            raise UsageError("kernel_onepoint mode needs a kernel")
        if self.mode is EstimatorMode.CENTRAL_L2 and self.kernel is not None:
            object.__setattr__(self, "kernel", None)


@dataclass(frozen=True)
class GradientEstimate:
    vector: np.ndarray
    samples_used: int
    oracle_calls: int
    h_used: float


def _validate_point(oracle: ZeroOrderOracle, x: np.ndarray) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if x.shape != (oracle.dim,):
        raise UsageError(f"point must have shape ({oracle.dim},), got {x.shape}")
    if not np.all(np.isfinite(x)):
        raise UsageError("point has non-finite entries")
    return x


def sample_block(
    oracle: ZeroOrderOracle,
    mode: EstimatorMode,
    kernel: Optional[KernelSpec],
    x: np.ndarray,
    h: float,
    gen: np.random.Generator,
    n: int,
) -> np.ndarray:
    """``n`` independent estimator samples as rows, 2n oracle calls.

    Draw order inside ``gen``: directions, radii (kernel mode only), noise for
    the n forward points, noise for the n backward points.
    """
    d = oracle.dim
    kernel_mode = mode is EstimatorMode.KERNEL_ONEPOINT
    directions, radii = sample_probes(gen, n, d, with_radius=kernel_mode)
    steps = h * radii[:, None] * directions
    values = oracle.query_batch(np.vstack([x + steps, x - steps]), gen)
    coef = d * (values[:n] - values[n:]) / (2.0 * h)
    if kernel_mode:
        coef = coef * kernel(radii)
    return coef[:, None] * directions


def kernel_gradient_sample(
    oracle: ZeroOrderOracle,
    kernel: KernelSpec,
    x: np.ndarray,
    h: float,
    rng: RngLike,
) -> np.ndarray:
    """One kernel-smoothed sample; exactly two oracle calls."""
    if not (h > 0):
        raise UsageError(f"smoothing parameter h must be > 0, got {h}")
    x = _validate_point(oracle, x)
    return sample_block(oracle, EstimatorMode.KERNEL_ONEPOINT, kernel, x, h, as_generator(rng), 1)[0]


def central_l2_sample(oracle: ZeroOrderOracle, x: np.ndarray, h: float, rng: RngLike) -> np.ndarray:
    """One plain l2-randomized central-difference sample; two oracle calls."""
    if not (h > 0):
        raise UsageError(f"smoothing parameter h must be > 0, got {h}")
    x = _validate_point(oracle, x)
    return sample_block(oracle, EstimatorMode.CENTRAL_L2, None, x, h, as_generator(rng), 1)[0]


def batched_estimate(
    oracle: ZeroOrderOracle,
    cfg: EstimatorConfig,
    x: np.ndarray,
    rng: RngLike,
) -> GradientEstimate:
    """Average of ``cfg.batch_size`` independent samples drawn from one stream."""
    x = _validate_point(oracle, x)
    B = int(cfg.batch_size)
    samples = sample_block(oracle, cfg.mode, cfg.kernel, x, cfg.h, as_generator(rng), B)
    return GradientEstimate(
        vector=samples.sum(axis=0) / B,
        samples_used=B,
        oracle_calls=2 * B,
        h_used=cfg.h,
    )


def smoothing_warning(h: float, f_scale: Union[float, np.floating]) -> bool:
    """True when rounding in f~(x+) - f~(x-) dominates the difference quotient."""
    eps = np.finfo(float).eps
    return bool(eps * max(1.0, abs(float(f_scale))) / h > CANCELLATION_RATIO)
