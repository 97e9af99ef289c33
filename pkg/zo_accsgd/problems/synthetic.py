"""Synthetic objectives with closed-form optima."""

from typing import Optional

import numpy as np

from ..core.objective import ObjectiveFunction
from ..core.rng import RngStream
from ..errors import UsageError


class QuadraticProblem(ObjectiveFunction):
    """f(x) = 1/2 (x - c)^T H (x - c); f* = 0 at x* = c.

    Args:
        H: Symmetric positive semidefinite d x d matrix
        c: Minimizer
    """

    def __init__(self, H: np.ndarray, c: np.ndarray):
        H = np.asarray(H, dtype=float)
        c = np.asarray(c, dtype=float)
        if H.shape != (c.shape[0], c.shape[0]):
            raise UsageError(f"incompatible shapes H{H.shape} and c{c.shape}")
        self.H = 0.5 * (H + H.T)
        self.c = c
        self.dim = c.shape[0]
        spectrum = np.linalg.eigvalsh(self.H)
        if spectrum[0] < -1e-12 * max(1.0, abs(spectrum[-1])):
            raise UsageError("H must be positive semidefinite")
        self.L = float(spectrum[-1])
        self.mu = float(max(spectrum[0], 0.0))
        # a quadratic has no third-order term, so any beta > 2 has Holder constant 0
        self.L_beta = 0.0
        self.f_star = 0.0
        self.x_star = c

    def value(self, x: np.ndarray) -> float:
        r = x - self.c
        return 0.5 * float(r @ self.H @ r)

    def values(self, X: np.ndarray) -> np.ndarray:
        R = X - self.c
        return 0.5 * np.einsum("ij,ij->i", R @ self.H, R)

    def true_gradient(self, x: np.ndarray) -> np.ndarray:
        return self.H @ (x - self.c)


def quadratic_make(d: int, seed: int = 0, condition: float = 1.0, center: Optional[np.ndarray] = None) -> QuadraticProblem:
    """Random rotation of a spectrum log-uniform in [1/condition, 1] (ends included)."""
    if d < 1:
        raise UsageError(f"dimension must be >= 1, got {d}")
    if condition < 1:
        raise UsageError(f"condition must be >= 1, got {condition}")
    gen = RngStream(seed).generator()
    Q, _ = np.linalg.qr(gen.standard_normal((d, d)))
    log_s = gen.uniform(-np.log(condition), 0.0, size=d)
    log_s[0] = 0.0
    if d >= 2:
        log_s[-1] = -np.log(condition)
    H = (Q * np.exp(log_s)) @ Q.T
    c = gen.standard_normal(d) if center is None else np.asarray(center, dtype=float)
    return QuadraticProblem(H, c)


class LinearFunction(ObjectiveFunction):
    """f(x) = <c, x> + offset."""

    def __init__(self, c: np.ndarray, offset: float = 0.0):
        self.c = np.asarray(c, dtype=float)
        self.offset = float(offset)
        self.dim = self.c.shape[0]

    def value(self, x: np.ndarray) -> float:
        return float(self.c @ x) + self.offset

    def values(self, X: np.ndarray) -> np.ndarray:
        return X @ self.c + self.offset

    def true_gradient(self, x: np.ndarray) -> np.ndarray:
        return self.c.copy()
