"""Monte-Carlo diagnostics of estimator bias and second moment.

Work is cut into fixed-size chunks; chunk c draws from ``rng.split(c)`` and the
partial sums are combined in chunk order, so the result does not depend on the
worker count.
"""

from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from ..config import ordered_map
from ..core.oracle import ZeroOrderOracle
from ..core.rng import RngStream
from ..errors import UsageError
from ..kernels import Convention, compute_constants
from .kernel import EstimatorConfig, EstimatorMode, _validate_point, sample_block

MIN_MC_SAMPLES: int = 1000
CHUNK_SIZE: int = 8192
SIGMA_SLACK: float = 3.0


@dataclass(frozen=True)
class BiasReport:
    bias: float
    stderr: float
    mean: np.ndarray
    bound: Optional[float]
    calibration: float
    n_mc: int

    @property
    def passed(self) -> bool:
        return self.bias <= (self.bound or 0.0) + SIGMA_SLACK * self.stderr


@dataclass(frozen=True)
class SecondMomentReport:
    value: float
    stderr: float
    bound: Optional[float]
    n_mc: int

    @property
    def passed(self) -> bool:
        if self.bound is None:
            return True
        return self.value <= self.bound + SIGMA_SLACK * self.stderr


def _accumulate(
    oracle: ZeroOrderOracle,
    cfg: EstimatorConfig,
    x: np.ndarray,
    n_mc: int,
    rng: RngStream,
    workers: Optional[int],
) -> Tuple[np.ndarray, np.ndarray, float, float]:
    sizes = [CHUNK_SIZE] * (n_mc // CHUNK_SIZE)
    if n_mc % CHUNK_SIZE:
        sizes.append(n_mc % CHUNK_SIZE)

    def run_chunk(item: Tuple[int, int]) -> Tuple[np.ndarray, np.ndarray, float, float]:
        index, size = item
        gen = rng.split(index).generator()
        G = sample_block(oracle, cfg.mode, cfg.kernel, x, cfg.h, gen, size)
        sq = np.einsum("ij,ij->i", G, G)
        return G.sum(axis=0), (G * G).sum(axis=0), float(sq.sum()), float((sq * sq).sum())

    parts = ordered_map(run_chunk, list(enumerate(sizes)), workers)
    s1 = np.zeros(oracle.dim)
    s2 = np.zeros(oracle.dim)
    n1 = 0.0
    n2 = 0.0
    for a, b, c, e in parts:
        s1 += a
        s2 += b
        n1 += c
        n2 += e
    return s1, s2, n1, n2


def _check_n(n_mc: int) -> None:
    if n_mc < MIN_MC_SAMPLES:
        raise UsageError(f"n_mc must be >= {MIN_MC_SAMPLES} for a meaningful estimate, got {n_mc}")


def estimate_bias(
    oracle: ZeroOrderOracle,
    cfg: EstimatorConfig,
    x: np.ndarray,
    n_mc: int,
    reference_grad: np.ndarray,
    rng: RngStream = RngStream(0),
    calibration: float = 1.0,
    workers: Optional[int] = None,
) -> BiasReport:
    """|| MC mean of the estimator - reference_grad || with its standard error.

    When the objective declares ``L_beta`` and ``beta`` and the estimator uses a
    kernel, the report carries the bound calibration * kappa_beta * L_beta * h^(beta-1).
    """
    _check_n(n_mc)
    x = _validate_point(oracle, x)
    reference_grad = np.asarray(reference_grad, dtype=float)
    s1, s2, _, _ = _accumulate(oracle, cfg, x, n_mc, rng, workers)
    mean = s1 / n_mc
    var = np.maximum(s2 / n_mc - mean**2, 0.0) * n_mc / (n_mc - 1)
    stderr = float(np.sqrt(var.sum() / n_mc))

    bound = None
    objective = oracle.objective
    if cfg.mode is EstimatorMode.KERNEL_ONEPOINT and objective.L_beta is not None and objective.beta is not None:
        constants = compute_constants(cfg.kernel, objective.beta, check_bounds=False).expectation
        bound = calibration * constants.kappa_beta * objective.L_beta * cfg.h ** (objective.beta - 1.0)
    return BiasReport(
        bias=float(np.linalg.norm(mean - reference_grad)),
        stderr=stderr,
        mean=mean,
        bound=bound,
        calibration=calibration,
        n_mc=n_mc,
    )


def second_moment_bound(
    d: int,
    kappa: float,
    grad_norm: float,
    L: float,
    h: float,
    delta: float,
) -> float:
    """4 d kappa |grad|^2 + 4 d kappa L^2 h^2 + kappa d^2 Delta^2 / h^2."""
    return 4 * d * kappa * grad_norm**2 + 4 * d * kappa * L**2 * h**2 + kappa * d**2 * delta**2 / h**2


def estimate_second_moment(
    oracle: ZeroOrderOracle,
    cfg: EstimatorConfig,
    x: np.ndarray,
    n_mc: int,
    rng: RngStream = RngStream(0),
    workers: Optional[int] = None,
) -> SecondMomentReport:
    """MC estimate of E||g||^2 against the second-moment bound.

    The bound uses the expectation-convention kappa (1 for central_l2) and needs
    the objective's analytic gradient and smoothness constant L; otherwise it is
    reported as ``None``.
    """
    _check_n(n_mc)
    x = _validate_point(oracle, x)
    _, _, n1, n2 = _accumulate(oracle, cfg, x, n_mc, rng, workers)
    value = n1 / n_mc
    var = max(n2 / n_mc - value**2, 0.0) * n_mc / (n_mc - 1)

    bound = None
    objective = oracle.objective
    if objective.has_gradient and objective.L is not None:
        if cfg.mode is EstimatorMode.KERNEL_ONEPOINT:
            kappa = compute_constants(cfg.kernel, min(cfg.kernel.beta_targets), check_bounds=False).expectation.kappa
        else:
            kappa = 1.0
        grad_norm = float(np.linalg.norm(objective.true_gradient(x)))
        bound = second_moment_bound(oracle.dim, kappa, grad_norm, objective.L, cfg.h, oracle.noise.level)
    return SecondMomentReport(value=value, stderr=float(np.sqrt(var / n_mc)), bound=bound, n_mc=n_mc)
