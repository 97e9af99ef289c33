"""Black-box objective abstraction."""

from typing import Callable, Optional

import numpy as np

from ..errors import UsageError


class ObjectiveFunction:
    """Deterministic objective f: R^d -> R.

    Subclasses implement ``value``; ``values`` evaluates a block of query points
    (one per row) and should be overridden with a vectorized version when
    possible. ``true_gradient`` exists for validation only and is never called
    by the zero-order methods.
    """

    dim: int
    L: Optional[float] = None
    L_beta: Optional[float] = None
    beta: Optional[float] = None
    f_star: Optional[float] = None
    x_star: Optional[np.ndarray] = None

    def value(self, x: np.ndarray) -> float:
        raise NotImplementedError

    def values(self, X: np.ndarray) -> np.ndarray:
        return np.array([self.value(row) for row in X], dtype=float)

    def true_gradient(self, x: np.ndarray) -> np.ndarray:
        raise NotImplementedError(f"{type(self).__name__} has no analytic gradient")

    @property
    def has_gradient(self) -> bool:
        return type(self).true_gradient is not ObjectiveFunction.true_gradient

    def gap(self, x: np.ndarray) -> float:
        """f(x) - f*, or f(x) when the optimum is unknown."""
        fx = self.value(x)
        return fx - self.f_star if self.f_star is not None else fx


class CallableObjective(ObjectiveFunction):
    """Objective built from plain callables.

    Args:
        value_fn: Maps a length-d vector to a real
        dim: Problem dimension
        gradient_fn: Optional analytic gradient
        values_fn: Optional vectorized evaluation over rows
    """

    def __init__(
        self,
        value_fn: Callable[[np.ndarray], float],
        dim: int,
        gradient_fn: Optional[Callable[[np.ndarray], np.ndarray]] = None,
        values_fn: Optional[Callable[[np.ndarray], np.ndarray]] = None,
        L: Optional[float] = None,
        L_beta: Optional[float] = None,
        beta: Optional[float] = None,
        f_star: Optional[float] = None,
    ) -> None:
        if dim < 1:
            raise UsageError(f"dimension must be >= 1, got {dim}")
        self.dim = int(dim)
        self._value_fn = value_fn
        self._gradient_fn = gradient_fn
        self._values_fn = values_fn
        self.L = L
        self.L_beta = L_beta
        self.beta = beta
        self.f_star = f_star

    def value(self, x: np.ndarray) -> float:
        return float(self._value_fn(x))

    def values(self, X: np.ndarray) -> np.ndarray:
        if self._values_fn is not None:
            return np.asarray(self._values_fn(X), dtype=float)
        return super().values(X)

    def true_gradient(self, x: np.ndarray) -> np.ndarray:
        if self._gradient_fn is None:
            raise NotImplementedError("no gradient_fn was supplied")
        return np.asarray(self._gradient_fn(x), dtype=float)

    @property
    def has_gradient(self) -> bool:
        return self._gradient_fn is not None


def check_gradient(
    objective: ObjectiveFunction,
    points: np.ndarray,
    step: float = 1e-6,
    rtol: float = 1e-4,
    atol: float = 1e-6,
) -> float:
    """Compare the analytic gradient with symmetric finite differences.

    Args:
        objective: Objective exposing ``true_gradient``
        points: Array of shape (n, d) of evaluation points
        step: Finite-difference step
        rtol: Relative tolerance per coordinate
        atol: Absolute floor for coordinates whose gradient is ~0

    Returns:
        The largest relative discrepancy seen

    Raises:
        AssertionError if any coordinate is out of tolerance
    """
    worst = 0.0
    eye = np.eye(objective.dim)
    for x in np.atleast_2d(points):
        grad = objective.true_gradient(x)
        plus = objective.values(x + step * eye)
        minus = objective.values(x - step * eye)
        fd = (plus - minus) / (2.0 * step)
        err = np.abs(fd - grad) / np.maximum(np.abs(grad), atol / rtol)
        worst = max(worst, float(err.max()))
        if worst > rtol:
            raise AssertionError(f"gradient mismatch {worst:.3e} at x={x}")
    return worst
