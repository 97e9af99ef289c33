"""Logistic regression f(x) = (1/M) sum_i log(1 + exp(-y_i <a_i, x>))."""

from typing import Union

import numpy as np
from scipy import sparse
from scipy.special import expit

from ..core.objective import ObjectiveFunction
from ..errors import UsageError
from .spectral import power_iteration

Matrix = Union[np.ndarray, sparse.spmatrix]

BLOCK_ELEMENTS: int = 1 << 22


class LogisticRegressionProblem(ObjectiveFunction):
    """Unregularized binary logistic loss.

    Args:
        A: M x d instance matrix, dense or scipy sparse
        y: Labels in {-1, +1}
        spectral_root: Use sqrt(lambda_max)/(4M) as L instead of lambda_max/(4M)
    """

    def __init__(self, A: Matrix, y: np.ndarray, spectral_root: bool = False):
        y = np.asarray(y, dtype=float)
        if A.shape[0] != y.shape[0]:
            raise UsageError(f"{A.shape[0]} instances but {y.shape[0]} labels")
        if not np.all(np.isin(y, (-1.0, 1.0))):
            raise UsageError("labels must be -1 or +1")
        self.A = sparse.csr_matrix(A) if sparse.issparse(A) else np.asarray(A, dtype=float)
        self.y = y
        self.M = A.shape[0]
        self.dim = A.shape[1]
        self.spectral_root = spectral_root
        self.L = self.smoothness_constant(spectral_root)

    def value(self, x: np.ndarray) -> float:
        margins = self.y * (self.A @ x)
        return float(np.mean(np.logaddexp(0.0, -margins)))

    def values(self, X: np.ndarray) -> np.ndarray:
        # keep the M x rows margin block around BLOCK_ELEMENTS entries
        rows = max(1, BLOCK_ELEMENTS // max(1, self.M))
        out = np.empty(X.shape[0])
        for lo in range(0, X.shape[0], rows):
            Z = np.asarray(self.A @ X[lo : lo + rows].T)
            out[lo : lo + rows] = np.mean(np.logaddexp(0.0, -self.y[:, None] * Z), axis=0)
        return out

    def true_gradient(self, x: np.ndarray) -> np.ndarray:
        margins = self.y * (self.A @ x)
        weights = -self.y * expit(-margins)
        return np.asarray(self.A.T @ weights).ravel() / self.M

    def smoothness_constant(self, spectral_root: bool = False) -> float:
        lam = power_iteration(lambda v: self.A @ v, lambda v: self.A.T @ v, self.dim)
        return (np.sqrt(lam) if spectral_root else lam) / (4.0 * self.M)
