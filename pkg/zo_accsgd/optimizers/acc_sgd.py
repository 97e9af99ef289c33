"""Accelerated SGD with a biased gradient provider, and its zero-order driver.

One iteration, with the gradient taken at y_k:

    advance (gamma, a, alpha) once
    z_{k+1} = z_k - gamma_{k+1} eta g
    x_{k+1} = y_k - eta g
    y_{k+1} = alpha_{k+1} z_{k+1} + (1 - alpha_{k+1}) x_{k+1}
"""

from dataclasses import asdict, dataclass, replace
from typing import Any, Callable, Dict, Iterable, Optional, Tuple

import numpy as np

from ..core.noise import NoiseModel
from ..core.objective import ObjectiveFunction
from ..core.oracle import ZeroOrderOracle
from ..core.rng import RngLike, RngStream
from ..errors import DivergenceError, UsageError
from ..estimators import EstimatorConfig, EstimatorMode, smoothing_warning
from ..kernels import expectation_constants
from ..log_util import log, warn
from .providers import GradientProvider, ZeroOrderGradient, provider_kind
from .schedule import AccSgdParams, rho_b, schedule_advance
from .trace import RunStatus, RunTrace, TraceRecord, TraceRecorder

DIVERGENCE_FACTOR: float = 1e6


@dataclass(frozen=True)
class StopRule:
    """When a run ends and how often it is recorded.

    Args:
        max_iter: Iteration budget N (0 records only the start point)
        record_every: Trace stride
        target_gap: Stop as soon as f(x_k) - f* <= target_gap
    """

    max_iter: int
    record_every: int = 1
    target_gap: Optional[float] = None

    def __post_init__(self) -> None:
        if self.max_iter < 0:
            raise UsageError(f"max_iter must be >= 0, got {self.max_iter}")
        if self.record_every < 1:
            raise UsageError(f"record_every must be >= 1, got {self.record_every}")


@dataclass(frozen=True)
class AccSgdConfig:
    """Optimizer settings of ZO-AccSGD.

    Args:
        L: Smoothness constant; None takes the objective's
        eta: Step size; None means 1 / (rho_B L)
        rho_B: Schedule parameter; None computes max{1, 4 d kappa / B}
        track_radius: Record ||z - y|| and, when x* is known, ||z - x*||
    """

    L: Optional[float] = None
    eta: Optional[float] = None
    rho_B: Optional[float] = None
    track_radius: bool = False


@dataclass(frozen=True)
class AccSgdState:
    x: np.ndarray
    y: np.ndarray
    z: np.ndarray
    k: int = 0

    @classmethod
    def start(cls, x0: np.ndarray) -> "AccSgdState":
        x0 = np.asarray(x0, dtype=float)
        return cls(x0.copy(), x0.copy(), x0.copy(), 0)

    def is_finite(self) -> bool:
        return bool(np.all(np.isfinite(self.x)) and np.all(np.isfinite(self.y)) and np.all(np.isfinite(self.z)))


def acc_sgd_step(
    state: AccSgdState,
    params: AccSgdParams,
    provider: GradientProvider,
    rng: RngLike,
) -> Tuple[AccSgdState, AccSgdParams, int]:
    """One iteration; returns the new state, the advanced schedule and the oracle calls spent.

    Raises:
        DivergenceError when the gradient or an iterate is non-finite; the
        error carries ``state`` (the last finite one)
    """
    if provider.dim != state.x.shape[0]:
        raise UsageError(f"provider dimension {provider.dim} does not match iterate dimension {state.x.shape[0]}")
    g, calls = provider.estimate(state.y, rng)
    g = np.asarray(g, dtype=float)
    if not np.all(np.isfinite(g)):
        raise DivergenceError(f"non-finite gradient estimate at iteration {state.k}", state=state)

    nxt = schedule_advance(params)
    z = state.z - nxt.gamma * nxt.eta * g
    x = state.y - nxt.eta * g
    y = nxt.alpha * z + (1.0 - nxt.alpha) * x
    new_state = AccSgdState(x, y, z, state.k + 1)
    if not new_state.is_finite():
        raise DivergenceError(f"non-finite iterate at iteration {new_state.k}", state=state)
    return new_state, nxt, calls


def divergence_limit(x0: np.ndarray) -> float:
    return DIVERGENCE_FACTOR * (1.0 + float(np.linalg.norm(x0)))


def _radius(state: AccSgdState, x_star: Optional[np.ndarray], track: bool) -> Dict[str, Optional[float]]:
    if not track:
        return {}
    out: Dict[str, Optional[float]] = {"z_minus_y": float(np.linalg.norm(state.z - state.y))}
    if x_star is not None:
        out["z_minus_xstar"] = float(np.linalg.norm(state.z - x_star))
    return out


def run_acc_sgd(
    objective: ObjectiveFunction,
    provider: GradientProvider,
    x0: np.ndarray,
    params: AccSgdParams,
    stop: StopRule,
    seed: int,
    metadata: Optional[Dict[str, Any]] = None,
    listeners: Iterable[Callable[[TraceRecord], None]] = (),
    track_radius: bool = False,
) -> RunTrace:
    """Provider-generic accelerated loop.

    Iteration k draws from ``RngStream(seed).split(k)``. f-gaps in the trace
    are computed on the noiseless objective and are not charged as oracle calls.

    Raises:
        DivergenceError with the partial trace when an iterate becomes non-finite
        or its norm exceeds 1e6 (1 + ||x0||)
    """
    x0 = np.asarray(x0, dtype=float)
    if x0.shape != (objective.dim,):
        raise UsageError(f"x0 must have shape ({objective.dim},), got {x0.shape}")
    meta = dict(metadata or {})
    meta.setdefault("method", "zo_acc_sgd" if isinstance(provider, ZeroOrderGradient) else "acc_sgd")
    meta.setdefault("provider", provider_kind(provider))
    meta.update(eta=params.eta, rho_B=params.rho_B, L=params.L, seed=seed, max_iter=stop.max_iter)
    recorder = TraceRecorder(seed, stop.record_every, meta)
    for listener in listeners:
        recorder.subscribe(listener)

    stream = RngStream(seed)
    limit = divergence_limit(x0)
    state = AccSgdState.start(x0)
    calls = 0
    recorder.record(0, 0, objective.gap(state.x), **_radius(state, objective.x_star, track_radius))
    status = RunStatus.COMPLETED

    for k in range(stop.max_iter):
        try:
            state, params, spent = acc_sgd_step(state, params, provider, stream.split(k))
        except DivergenceError as e:
            raise DivergenceError(str(e), state=e.state, trace=recorder.finish(RunStatus.DIVERGED, e.state.x)) from e
        calls += spent
        if np.linalg.norm(state.x) > limit:
            msg = f"iterate norm exceeded {limit:.3e} at iteration {state.k}"
            warn(msg)
            raise DivergenceError(msg, state=state, trace=recorder.finish(RunStatus.DIVERGED, state.x))

        last = state.k == stop.max_iter
        gap = None
        if stop.target_gap is not None:
            gap = objective.gap(state.x)
        if last or recorder.due(state.k) or (gap is not None and gap <= stop.target_gap):
            if gap is None:
                gap = objective.gap(state.x)
            recorder.record(state.k, calls, gap, **_radius(state, objective.x_star, track_radius))
        if gap is not None and stop.target_gap is not None and gap <= stop.target_gap:
            status = RunStatus.TARGET_REACHED
            break

    log(f"{meta['method']} seed={seed} finished after {state.k} iterations, f-gap {recorder.trace.final_gap:.6e}")
    return recorder.finish(status, state.x)


def default_kappa(cfg: EstimatorConfig) -> float:
    """Expectation-convention kappa of the estimator's kernel; 1 for central_l2."""
    if cfg.mode is EstimatorMode.CENTRAL_L2:
        return 1.0
    return expectation_constants(cfg.kernel).kappa


def resolve_params(objective: ObjectiveFunction, est_cfg: EstimatorConfig, opt_cfg: AccSgdConfig) -> AccSgdParams:
    L = opt_cfg.L if opt_cfg.L is not None else objective.L
    if L is None:
        raise UsageError("smoothness constant L is unknown; set it in the optimizer config")
    rho = opt_cfg.rho_B
    if rho is None:
        rho = rho_b(objective.dim, default_kappa(est_cfg), est_cfg.batch_size)
    return AccSgdParams.initial(L, rho, opt_cfg.eta)


def estimator_metadata(objective: ObjectiveFunction, est_cfg: EstimatorConfig, noise: NoiseModel, x0: np.ndarray) -> Dict[str, Any]:
    meta: Dict[str, Any] = {
        "dim": objective.dim,
        "h": est_cfg.h,
        "batch_size": est_cfg.batch_size,
        "mode": est_cfg.mode.value,
        "kernel": est_cfg.kernel.name if est_cfg.kernel is not None else None,
        "noise": noise.variant.value,
        "noise_level": noise.level,
        "kappa_convention": "expectation",
    }
    degenerate = smoothing_warning(est_cfg.h, objective.value(x0))
    if degenerate:
        warn(f"smoothing parameter h={est_cfg.h:g} is small enough for rounding to dominate the difference quotient")
    meta["smoothing_warning"] = degenerate
    return meta


def run_zo_acc_sgd(
    objective: ObjectiveFunction,
    noise: Optional[NoiseModel],
    est_cfg: EstimatorConfig,
    opt_cfg: AccSgdConfig,
    stop: StopRule,
    seed: int,
    x0: Optional[np.ndarray] = None,
    workers: Optional[int] = None,
    listeners: Iterable[Callable[[TraceRecord], None]] = (),
) -> RunTrace:
    """ZO-AccSGD: the accelerated loop on the batched zero-order estimator.

    Every iteration costs 2B oracle calls; x0 defaults to the origin.
    """
    noise = noise if noise is not None else NoiseModel()
    x0 = np.zeros(objective.dim) if x0 is None else np.asarray(x0, dtype=float)
    params = resolve_params(objective, est_cfg, opt_cfg)
    oracle = ZeroOrderOracle(objective, noise, workers=workers)
    meta = estimator_metadata(objective, est_cfg, noise, x0)
    meta["method"] = "zo_acc_sgd"
    meta["optimizer"] = asdict(replace(opt_cfg, L=params.L, eta=params.eta, rho_B=params.rho_B))
    return run_acc_sgd(
        objective,
        ZeroOrderGradient(oracle, est_cfg),
        x0,
        params,
        stop,
        seed,
        metadata=meta,
        listeners=listeners,
        track_radius=opt_cfg.track_radius,
    )
