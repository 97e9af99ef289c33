"""Gradient providers fed to the accelerated core."""

from typing import Callable, Optional, Protocol, Tuple, Union, runtime_checkable

import numpy as np

from ..core.objective import ObjectiveFunction
from ..core.oracle import ZeroOrderOracle
from ..core.rng import RngLike
from ..errors import UsageError
from ..estimators import EstimatorConfig, batched_estimate

BiasField = Union[np.ndarray, Callable[[np.ndarray], np.ndarray]]


@runtime_checkable
class GradientProvider(Protocol):
    dim: int

    def estimate(self, x: np.ndarray, rng: RngLike) -> Tuple[np.ndarray, int]:
        """Gradient estimate at ``x`` and the number of oracle calls it cost."""
        ...


class ExactGradient:
    """Analytic gradient; zero oracle calls."""

    def __init__(self, objective: ObjectiveFunction):
        if not objective.has_gradient:
            raise UsageError(f"{type(objective).__name__} has no analytic gradient")
        self.objective = objective
        self.dim = objective.dim

    def estimate(self, x: np.ndarray, rng: RngLike) -> Tuple[np.ndarray, int]:
        return self.objective.true_gradient(x), 0


class BiasedExactGradient(ExactGradient):
    """Analytic gradient plus a deterministic bias b(x).

    Args:
        objective: Objective with an analytic gradient
        bias: A fixed vector or a function x -> b(x)
    """

    def __init__(self, objective: ObjectiveFunction, bias: BiasField):
        super().__init__(objective)
        if not callable(bias):
            vector = np.asarray(bias, dtype=float)
            if vector.shape != (self.dim,):
                raise UsageError(f"bias must have shape ({self.dim},), got {vector.shape}")
            bias = lambda _x: vector  # noqa: E731
        self.bias = bias

    def estimate(self, x: np.ndarray, rng: RngLike) -> Tuple[np.ndarray, int]:
        g, _ = super().estimate(x, rng)
        return g + np.asarray(self.bias(x), dtype=float), 0

    @classmethod
    def constant(cls, objective: ObjectiveFunction, delta: float, axis: int = 0) -> "BiasedExactGradient":
        """Bias vector delta * e_axis."""
        b = np.zeros(objective.dim)
        b[axis] = delta
        return cls(objective, b)


class ZeroOrderGradient:
    """Batched two-point estimator over a noisy oracle."""

    def __init__(self, oracle: ZeroOrderOracle, cfg: EstimatorConfig):
        self.oracle = oracle
        self.cfg = cfg
        self.dim = oracle.dim

    def estimate(self, x: np.ndarray, rng: RngLike) -> Tuple[np.ndarray, int]:
        est = batched_estimate(self.oracle, self.cfg, x, rng)
        return est.vector, est.oracle_calls


def provider_kind(provider: GradientProvider) -> Optional[str]:
    if isinstance(provider, ZeroOrderGradient):
        return "zero_order"
    if isinstance(provider, BiasedExactGradient):
        return "exact_plus_bias"
    if isinstance(provider, ExactGradient):
        return "exact"
    return None
