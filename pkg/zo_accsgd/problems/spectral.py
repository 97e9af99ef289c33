"""Largest eigenvalue of A^T A by power iteration."""

from typing import Callable, Optional

import numpy as np

from ..core.rng import RngStream
from ..errors import NumericalError

Operator = Callable[[np.ndarray], np.ndarray]


def power_iteration(
    matvec: Operator,
    rmatvec: Operator,
    dim: int,
    tol: float = 1e-6,
    max_iter: int = 10_000,
    seed: int = 0,
) -> float:
    """lambda_max(A^T A) for the operator pair (A, A^T).

    Args:
        matvec: x -> A x
        rmatvec: y -> A^T y
        dim: Number of columns of A
        tol: Relative change of the estimate that stops the iteration
        max_iter: Iteration cap
        seed: Seed of the random start vector

    Raises:
        NumericalError if the estimate has not settled after ``max_iter`` steps
    """
    x = RngStream(seed).generator().standard_normal(dim)
    x /= np.linalg.norm(x)
    previous: Optional[float] = None
    rel = float("inf")
    for _ in range(max_iter):
        w = rmatvec(matvec(x))
        val = float(np.linalg.norm(w))
        if val == 0.0:
            return 0.0
        if previous is not None:
            rel = abs(val - previous) / val
            if rel < tol:
                return val
        previous = val
        x = w / val
    raise NumericalError(f"power iteration did not converge in {max_iter} steps", residual=rel)
