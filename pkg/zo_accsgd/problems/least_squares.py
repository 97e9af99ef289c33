"""Linear-system least squares f(x) = ||A x - b||^2."""

from typing import Optional

import numpy as np

from ..core.objective import ObjectiveFunction
from ..core.rng import RngStream
from ..errors import UsageError
from .spectral import power_iteration


class LeastSquaresProblem(ObjectiveFunction):
    """f(x) = ||A x - b||^2 with L = 2 lambda_max(A^T A).

    Args:
        A: Dense p x d matrix
        b: Length-p right-hand side
        x_star: Known minimizer, if any (f* is then f(x_star))
    """

    def __init__(self, A: np.ndarray, b: np.ndarray, x_star: Optional[np.ndarray] = None):
        A = np.asarray(A, dtype=float)
        b = np.asarray(b, dtype=float)
        if A.ndim != 2 or b.shape != (A.shape[0],):
            raise UsageError(f"incompatible shapes A{A.shape} and b{b.shape}")
        self.A = A
        self.b = b
        self.dim = A.shape[1]
        self.L = self.smoothness_constant()
        if x_star is not None:
            self.x_star = np.asarray(x_star, dtype=float)
            self.f_star = self.value(self.x_star)

    def value(self, x: np.ndarray) -> float:
        r = self.A @ x - self.b
        return float(r @ r)

    def values(self, X: np.ndarray) -> np.ndarray:
        R = X @ self.A.T - self.b
        return np.einsum("ij,ij->i", R, R)

    def true_gradient(self, x: np.ndarray) -> np.ndarray:
        return 2.0 * self.A.T @ (self.A @ x - self.b)

    def smoothness_constant(self) -> float:
        lam = power_iteration(lambda v: self.A @ v, lambda v: self.A.T @ v, self.dim)
        return 2.0 * lam


def least_squares_make(
    d: int,
    p: int,
    seed: int = 0,
    condition_target: float = 1.0,
    scale: float = 1.0,
) -> LeastSquaresProblem:
    """Random consistent system with a planted solution, so f* = 0.

    A = U diag(s) V^T with singular values log-uniform in [1, condition_target]
    (both ends included), multiplied by ``scale``.
    """
    if d < 1 or p < 1:
        raise UsageError(f"d and p must be >= 1, got d={d}, p={p}")
    if condition_target < 1:
        raise UsageError(f"condition_target must be >= 1, got {condition_target}")
    if not scale > 0:
        raise UsageError(f"scale must be > 0, got {scale}")
    gen = RngStream(seed).generator()
    k = min(d, p)
    U, _ = np.linalg.qr(gen.standard_normal((p, k)))
    V, _ = np.linalg.qr(gen.standard_normal((d, k)))
    log_s = gen.uniform(0.0, np.log(condition_target), size=k)
    if k >= 2:
        log_s[0], log_s[-1] = np.log(condition_target), 0.0
    s = scale * np.exp(log_s)
    A = (U * s) @ V.T
    planted = gen.standard_normal(d)
    b = A @ planted
    problem = LeastSquaresProblem(A, b, x_star=planted if p >= d else None)
    problem.f_star = 0.0
    return problem
