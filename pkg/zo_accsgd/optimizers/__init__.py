"""Accelerated and plain stochastic gradient methods over gradient providers."""

from .acc_sgd import (
    DIVERGENCE_FACTOR,
    AccSgdConfig,
    AccSgdState,
    StopRule,
    acc_sgd_step,
    default_kappa,
    resolve_params,
    run_acc_sgd,
    run_zo_acc_sgd,
)
from .providers import BiasedExactGradient, ExactGradient, GradientProvider, ZeroOrderGradient
from .schedule import IDENTITY_RTOL, AccSgdParams, identity_residual, rho_b, schedule_advance
from .sgd import run_sgd, run_zo_sgd
from .trace import RunStatus, RunTrace, TraceRecord, TraceRecorder

__all__ = [
    "DIVERGENCE_FACTOR",
    "IDENTITY_RTOL",
    "AccSgdConfig",
    "AccSgdParams",
    "AccSgdState",
    "BiasedExactGradient",
    "ExactGradient",
    "GradientProvider",
    "RunStatus",
    "RunTrace",
    "StopRule",
    "TraceRecord",
    "TraceRecorder",
    "ZeroOrderGradient",
    "acc_sgd_step",
    "default_kappa",
    "identity_residual",
    "resolve_params",
    "rho_b",
    "run_acc_sgd",
    "run_sgd",
    "run_zo_acc_sgd",
    "run_zo_sgd",
    "schedule_advance",
]
