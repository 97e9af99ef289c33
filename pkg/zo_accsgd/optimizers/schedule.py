"""Step-size schedule of the accelerated method with a biased oracle."""

import math
from dataclasses import dataclass, replace
from typing import Optional

from ..errors import UsageError

IDENTITY_RTOL: float = 1e-10


def rho_b(d: int, kappa: float, B: int) -> float:
    """max{1, 4 d kappa / B}."""
    if d < 1 or B < 1:
        raise UsageError(f"d and B must be >= 1, got d={d}, B={B}")
    if not kappa > 0:
        raise UsageError(f"kappa must be > 0, got {kappa}")
    return max(1.0, 4.0 * d * kappa / B)


@dataclass(frozen=True)
class AccSgdParams:
    """Step size plus the (gamma, a, alpha) schedule at iteration ``k``.

    ``zeta`` and ``b`` of the general scheme are fixed to 1 and not stored.
    """

    eta: float
    rho_B: float
    L: float
    gamma: float = 0.0
    a: float = 0.0
    alpha: float = 0.0
    k: int = 0

    def __post_init__(self) -> None:
        if not (math.isfinite(self.eta) and self.eta > 0):
            raise UsageError(f"step size must be > 0, got {self.eta}")
        if not self.rho_B >= 1:
            raise UsageError(f"rho_B must be >= 1, got {self.rho_B}")
        if not self.L > 0:
            raise UsageError(f"smoothness constant L must be > 0, got {self.L}")

    @classmethod
    def initial(cls, L: float, rho_B: float = 1.0, eta: Optional[float] = None) -> "AccSgdParams":
        """Schedule at k = 0; ``eta`` defaults to 1 / (rho_B L)."""
        if eta is None:
            if not L > 0:
                raise UsageError(f"smoothness constant L must be > 0, got {L}")
            eta = 1.0 / (rho_B * L)
        return cls(eta=eta, rho_B=rho_B, L=L)


def schedule_advance(params: AccSgdParams) -> AccSgdParams:
    """(gamma_k, a_k, alpha_k) -> (gamma_{k+1}, a_{k+1}, alpha_{k+1}).

    gamma_{k+1}^2 - gamma_{k+1} / rho_B = gamma_k^2 holds up to roundoff, which
    makes alpha_{k+1} = 1 / (rho_B gamma_{k+1}).
    """
    inv_rho = 1.0 / params.rho_B
    gamma = 0.5 * (inv_rho + math.sqrt(inv_rho**2 + 4.0 * params.gamma**2))
    a = params.gamma * math.sqrt(params.eta * params.rho_B)
    alpha = gamma * params.eta / (gamma * params.eta + a * a)
    return replace(params, gamma=gamma, a=a, alpha=alpha, k=params.k + 1)


def identity_residual(previous: AccSgdParams, current: AccSgdParams) -> float:
    """Relative residual of gamma_k^2 - gamma_k / rho_B - gamma_{k-1}^2."""
    g = current.gamma
    return abs(g * g - g / current.rho_B - previous.gamma**2) / max(1.0, g * g)
