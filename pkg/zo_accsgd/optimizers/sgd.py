"""Unaccelerated baseline: x_{k+1} = x_k - eta g_k."""

import math
from typing import Callable, Iterable, Optional

import numpy as np

from ..core.noise import NoiseModel
from ..core.objective import ObjectiveFunction
from ..core.oracle import ZeroOrderOracle
from ..core.rng import RngStream
from ..errors import DivergenceError, UsageError
from ..estimators import EstimatorConfig
from ..log_util import log, warn
from .acc_sgd import StopRule, divergence_limit, estimator_metadata
from .providers import GradientProvider, ZeroOrderGradient, provider_kind
from .trace import RunStatus, RunTrace, TraceRecord, TraceRecorder


def run_sgd(
    objective: ObjectiveFunction,
    provider: GradientProvider,
    x0: np.ndarray,
    step_size: float,
    stop: StopRule,
    seed: int,
    metadata: Optional[dict] = None,
    listeners: Iterable[Callable[[TraceRecord], None]] = (),
) -> RunTrace:
    if not (math.isfinite(step_size) and step_size > 0):
        raise UsageError(f"step size must be > 0, got {step_size}")
    x = np.asarray(x0, dtype=float).copy()
    if x.shape != (objective.dim,):
        raise UsageError(f"x0 must have shape ({objective.dim},), got {x.shape}")
    meta = dict(metadata or {})
    meta.setdefault("method", "zo_sgd" if isinstance(provider, ZeroOrderGradient) else "sgd")
    meta.setdefault("provider", provider_kind(provider))
    meta.update(eta=step_size, seed=seed, max_iter=stop.max_iter)
    recorder = TraceRecorder(seed, stop.record_every, meta)
    for listener in listeners:
        recorder.subscribe(listener)

    stream = RngStream(seed)
    limit = divergence_limit(x)
    calls = 0
    recorder.record(0, 0, objective.gap(x))
    status = RunStatus.COMPLETED

    for k in range(stop.max_iter):
        g, spent = provider.estimate(x, stream.split(k))
        calls += spent
        nxt = x - step_size * np.asarray(g, dtype=float)
        if not np.all(np.isfinite(nxt)) or np.linalg.norm(nxt) > limit:
            msg = f"iterate diverged at iteration {k + 1}"
            warn(msg)
            raise DivergenceError(msg, state=x, trace=recorder.finish(RunStatus.DIVERGED, x))
        x = nxt

        it = k + 1
        gap = objective.gap(x) if stop.target_gap is not None else None
        reached = gap is not None and gap <= stop.target_gap
        if it == stop.max_iter or recorder.due(it) or reached:
            recorder.record(it, calls, gap if gap is not None else objective.gap(x))
        if reached:
            status = RunStatus.TARGET_REACHED
            break

    log(f"{meta['method']} seed={seed} finished, f-gap {recorder.trace.final_gap:.6e}")
    return recorder.finish(status, x)


def run_zo_sgd(
    objective: ObjectiveFunction,
    noise: Optional[NoiseModel],
    est_cfg: EstimatorConfig,
    step_size: float,
    stop: StopRule,
    seed: int,
    x0: Optional[np.ndarray] = None,
    workers: Optional[int] = None,
    listeners: Iterable[Callable[[TraceRecord], None]] = (),
) -> RunTrace:
    """ZO-SGD with the same estimator and trace format as ZO-AccSGD."""
    noise = noise if noise is not None else NoiseModel()
    x0 = np.zeros(objective.dim) if x0 is None else np.asarray(x0, dtype=float)
    oracle = ZeroOrderOracle(objective, noise, workers=workers)
    meta = estimator_metadata(objective, est_cfg, noise, x0)
    meta["method"] = "zo_sgd"
    return run_sgd(objective, ZeroOrderGradient(oracle, est_cfg), x0, step_size, stop, seed, meta, listeners)
