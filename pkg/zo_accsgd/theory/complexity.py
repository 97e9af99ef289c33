"""Closed-form iteration, oracle and noise budgets of ZO-AccSGD.

All O(.) expressions are evaluated with constant 1; the outputs are scale-free
and meant for planning and for checking scaling laws, not absolute values.
"""

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, Optional

from ..errors import UsageError
from ..kernels import Convention, KernelConstants
from ..optimizers.schedule import rho_b

BETA_THRESHOLD: float = 7.0 / 3.0
BOUNDARY_RTOL: float = 1e-12


class Regime(Enum):
    """Batch-size regime relative to the critical batch 4 d kappa."""
    B_EQ_1 = "B_eq_1"
    B_LT_4DK = "B_lt_4dk"
    B_EQ_4DK = "B_eq_4dk"
    B_GT_4DK = "B_gt_4dk"


def classify_regime(B: int, d: int, kappa: float) -> Regime:
    """
    Returns:
      The Regime of batch size B for a d-dimensional problem with kernel constant kappa

    Policy:
      1) B = 1 -> B_eq_1 (checked first, even when 4 d kappa <= 1).
      2) B = 4 d kappa within relative tolerance 1e-12 -> B_eq_4dk.
      3) B < 4 d kappa -> B_lt_4dk.
      4) Else -> B_gt_4dk.
    """
    if B < 1 or d < 1 or not kappa > 0:
        raise UsageError(f"need B >= 1, d >= 1, kappa > 0; got B={B}, d={d}, kappa={kappa}")
    critical = 4.0 * d * kappa

    # (1) Single sample
    if B == 1:
        return Regime.B_EQ_1

    # (2) Critical batch
    if math.isclose(B, critical, rel_tol=BOUNDARY_RTOL):
        return Regime.B_EQ_4DK

    # (3) / (4) Under- or over-batched
    return Regime.B_LT_4DK if B < critical else Regime.B_GT_4DK


def _check(eps: float, d: int, beta: float) -> None:
    if not 0 < eps < 1:
        raise UsageError(f"target accuracy must lie in (0, 1), got {eps}")
    if d < 1:
        raise UsageError(f"dimension must be >= 1, got {d}")
    if not beta > 2:
        raise UsageError(f"smoothness order beta must be > 2, got {beta}")


def _noise_exponent(beta: float) -> float:
    return (3.0 * beta + 1.0) / (4.0 * (beta - 1.0))


def smoothing_choice(eps: float, d: int, beta: float, case_id: Regime) -> float:
    """Smoothing radius h for the given regime.

    Cases 1-3 take min{eps^(3/4), eps^(1/(beta-1)), eps^(3/(4(beta-1))) / d^(1/(2(beta-1)))}.
    For beta >= 7/3 that is eps^(3/4) unless d > eps^(-3(beta-2)/2), where the
    dimension term binds. The overbatched case takes eps^(1/(beta-1)).
    """
    _check(eps, d, beta)
    case_id = Regime(case_id)
    if case_id is Regime.B_GT_4DK:
        return eps ** (1.0 / (beta - 1.0))
    dim_term = eps ** (0.75 / (beta - 1.0)) / d ** (0.5 / (beta - 1.0))
    return min(eps**0.75, eps ** (1.0 / (beta - 1.0)), dim_term)


def delta_branch(beta: float, case_id: Regime) -> str:
    if Regime(case_id) is Regime.B_GT_4DK:
        return "overbatched"
    return "beta_ge_7_3" if beta >= BETA_THRESHOLD else "beta_lt_7_3"


def max_noise(eps: float, d: int, beta: float, B: int, kappa: float) -> float:
    """Largest noise level Delta that keeps the eps target reachable."""
    _check(eps, d, beta)
    branch = delta_branch(beta, classify_regime(B, d, kappa))
    if branch == "overbatched":
        return eps ** _noise_exponent(beta) * math.sqrt(B) / d
    if branch == "beta_ge_7_3":
        return eps**1.5 / math.sqrt(d)
    return eps ** _noise_exponent(beta) / math.sqrt(d)


def required_batch(eps: float, d: int, beta: float, delta: float) -> float:
    """Batch size needed to tolerate noise ``delta``: d^2 Delta^2 / eps^(3/2 + 2/(beta-1))."""
    _check(eps, d, beta)
    if delta < 0:
        raise UsageError(f"noise level must be >= 0, got {delta}")
    return d * d * delta * delta / eps ** (1.5 + 2.0 / (beta - 1.0))


@dataclass(frozen=True)
class ComplexityPlan:
    case_id: Regime
    N: float
    T: float
    h: float
    delta_max: float
    rho_B: float
    n_schedule: float
    delta_branch: str
    required_batch: Optional[float]
    inputs: Dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "case_id": self.case_id.value,
            "N": self.N,
            "T": self.T,
            "h": self.h,
            "delta_max": self.delta_max,
            "rho_B": self.rho_B,
            "n_schedule": self.n_schedule,
            "delta_branch": self.delta_branch,
            "required_batch": self.required_batch,
            "scale_free": True,
            "inputs": dict(self.inputs),
        }


def plan(
    d: int,
    beta: float,
    L: float,
    R: float,
    eps: float,
    B: int,
    constants: KernelConstants,
    delta_target: Optional[float] = None,
) -> ComplexityPlan:
    """Iterations N, oracle calls T, h and the noise budget for one configuration.

    Args:
        d: Dimension
        beta: Smoothness order, > 2
        L: Smoothness constant
        R: Initial distance to the solution
        eps: Target accuracy in (0, 1)
        B: Batch size
        constants: Kernel constants; converted to the expectation convention
        delta_target: Noise level the run must tolerate, if known

    Returns:
        A ComplexityPlan
    """
    _check(eps, d, beta)
    if not (L > 0 and R > 0):
        raise UsageError(f"L and R must be > 0, got L={L}, R={R}")
    if B < 1:
        raise UsageError(f"batch size must be >= 1, got {B}")
    kappa = constants.to_convention(Convention.EXPECTATION).kappa
    case_id = classify_regime(B, d, kappa)

    base = math.sqrt(L * R * R / eps)
    if case_id is Regime.B_EQ_1:
        N = d * base
    elif case_id is Regime.B_LT_4DK:
        N = d * base / B
    else:
        N = base

    h = smoothing_choice(eps, d, beta, case_id)
    delta_max = max_noise(eps, d, beta, B, kappa)
    if case_id is Regime.B_GT_4DK:
        delta = delta_target if delta_target is not None else delta_max
        T = max(d * base, d * d * delta * delta / eps ** (2.0 + 2.0 / (beta - 1.0)))
    else:
        T = N * B

    rho = rho_b(d, kappa, B)
    return ComplexityPlan(
        case_id=case_id,
        N=N,
        T=T,
        h=h,
        delta_max=delta_max,
        rho_B=rho,
        n_schedule=rho * base,
        delta_branch=delta_branch(beta, case_id),
        required_batch=None if delta_target is None else required_batch(eps, d, beta, delta_target),
        inputs={
            "d": d,
            "beta": beta,
            "L": L,
            "R": R,
            "eps": eps,
            "B": B,
            "kappa": kappa,
            "kappa_convention": Convention.EXPECTATION.value,
            "delta_target": delta_target,
        },
    )


def error_floor_terms(
    N: int,
    d: int,
    L: float,
    R: float,
    h: float,
    delta: float,
    B: int,
    constants: KernelConstants,
    L_beta: float,
    R_tilde: Optional[float] = None,
) -> Dict[str, float]:
    """The five terms of the ZO-AccSGD bound with constant 1.

    ``R_tilde`` is a trajectory radius with no a-priori formula; it defaults to R.
    """
    c = constants.to_convention(Convention.EXPECTATION)
    rho = rho_b(d, c.kappa, B)
    R_tilde = R if R_tilde is None else R_tilde
    bias = c.kappa_beta * L_beta * h ** (c.beta - 1.0)
    terms = {
        "rate": rho * rho * L * R * R / (N * N),
        "curvature_variance": N * d * c.kappa * L * L * h * h / (rho * rho * L * B),
        "noise_variance": N * c.kappa * d * d * delta * delta / (h * h * rho * rho * L * B),
        "bias": R_tilde * bias,
        "accumulated_bias": N * bias * bias / L,
    }
    terms["total"] = sum(terms.values())
    return terms
