"""The noisy zero-order oracle: returns f(x) + xi with fresh noise on every call."""

import threading
from typing import Optional

import numpy as np

from ..config import ordered_map, worker_count
from ..errors import EvaluationError, UsageError
from .noise import NoiseModel
from .objective import ObjectiveFunction
from .rng import RngLike, RngStream, as_generator


class ZeroOrderOracle:
    """One-point feedback oracle around a black-box objective.

    Args:
        objective: The function being optimized
        noise: Additive noise model
        workers: Evaluation workers for large query blocks (None = ZO_THREADS)
    """

    PARALLEL_MIN_ROWS: int = 4096

    def __init__(
        self,
        objective: ObjectiveFunction,
        noise: Optional[NoiseModel] = None,
        workers: Optional[int] = None,
    ) -> None:
        self.objective = objective
        self.noise = noise if noise is not None else NoiseModel()
        self.workers = workers
        self._count = 0
        self._lock = threading.Lock()

    @property
    def dim(self) -> int:
        return self.objective.dim

    @property
    def query_count(self) -> int:
        return self._count

    def reset_count(self) -> None:
        with self._lock:
            self._count = 0

    def _charge(self, n: int) -> int:
        """Add n queries; return the count before them."""
        with self._lock:
            position = self._count
            self._count += n
        return position

    def _evaluate(self, X: np.ndarray) -> np.ndarray:
        n = X.shape[0]
        n_workers = worker_count(self.workers)
        if n < self.PARALLEL_MIN_ROWS or n_workers <= 1:
            return self.objective.values(X)
        # fixed chunk boundaries so placement never depends on the worker count
        bounds = list(range(0, n, self.PARALLEL_MIN_ROWS)) + [n]
        chunks = [X[lo:hi] for lo, hi in zip(bounds[:-1], bounds[1:])]
        return np.concatenate(ordered_map(self.objective.values, chunks, n_workers))

    def query_batch(self, X: np.ndarray, rng: RngLike) -> np.ndarray:
        """Query every row of ``X`` once.

        Noise is drawn for all rows first (row order), then the objective is
        evaluated, so results do not depend on evaluation order.
        """
        X = np.asarray(X, dtype=float)
        if X.ndim != 2 or X.shape[1] != self.dim:
            raise UsageError(f"query block must have shape (n, {self.dim}), got {X.shape}")
        if not np.all(np.isfinite(X)):
            bad = X[~np.all(np.isfinite(X), axis=1)][0]
            raise UsageError(f"query point has non-finite entries: {bad}")
        position = self._charge(X.shape[0])
        if isinstance(rng, RngStream):
            # a bare stream handle is re-keyed by the call position, so repeating
            # the same handle still yields a fresh realization
            rng = rng.split(position)
        gen = as_generator(rng)
        fx = self._evaluate(X)
        if not np.all(np.isfinite(fx)):
            row = int(np.flatnonzero(~np.isfinite(fx))[0])
            raise EvaluationError(f"objective returned {fx[row]} at query point", x=X[row].copy())
        return fx + self.noise.draw(gen, fx)


def oracle_query(oracle: ZeroOrderOracle, x: np.ndarray, rng: RngLike) -> float:
    """Single noisy evaluation f(x) + xi; increments the query counter by one."""
    x = np.asarray(x, dtype=float)
    if x.ndim != 1:
        raise UsageError(f"query point must be a vector, got shape {x.shape}")
    return float(oracle.query_batch(x[None, :], rng)[0])
