"""Gauss-Legendre checks of the kernel moment conditions and the kernel constants.

Moments are taken under the uniform law on [-1, 1] (the estimator samples r
there), i.e. E[g(r)] = (1/2) * integral of g over [-1, 1].
"""

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Optional, Tuple

import numpy as np
from numpy.polynomial import legendre, polynomial as P

from ..errors import ConsistencyError, UsageError
from .legendre import KernelSpec

MOMENT_TOL: float = 1e-10
CONVERGENCE_TOL: float = 1e-8


class Convention(Enum):
    """How a kernel constant integrates over [-1, 1]."""
    EXPECTATION = "expectation"        # uniform expectation, half the plain integral
    PLAIN_INTEGRAL = "plain_integral"


@dataclass(frozen=True)
class MomentCheck:
    j: int
    value: float
    expected: float
    error: float
    passed: bool


@dataclass(frozen=True)
class MomentReport:
    kernel: str
    quad_points: int
    checks: Tuple[MomentCheck, ...]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def first_failure(self) -> Optional[MomentCheck]:
        return next((c for c in self.checks if not c.passed), None)

    def to_dict(self) -> Dict[str, object]:
        return {
            "kernel": self.kernel,
            "quad_points": self.quad_points,
            "passed": self.passed,
            "moments": [
                {"j": c.j, "value": c.value, "expected": c.expected, "error": c.error, "passed": c.passed}
                for c in self.checks
            ],
        }


@dataclass(frozen=True)
class KernelConstants:
    """kappa = int K^2 and kappa_beta = int |u|^beta |K(u)| under one convention."""

    kappa: float
    kappa_beta: float
    beta: float
    convention: Convention = Convention.EXPECTATION

    def to_convention(self, convention: Convention) -> "KernelConstants":
        if convention is self.convention:
            return self
        factor = 0.5 if convention is Convention.EXPECTATION else 2.0
        return KernelConstants(self.kappa * factor, self.kappa_beta * factor, self.beta, convention)

    def to_dict(self) -> Dict[str, object]:
        return {
            "kappa": self.kappa,
            "kappa_beta": self.kappa_beta,
            "beta": self.beta,
            "convention": self.convention.value,
        }


@dataclass(frozen=True)
class ConstantsReport:
    plain: KernelConstants
    expectation: KernelConstants
    kappa_bound: float
    kappa_beta_bound: float
    bounds_hold: bool = field(default=True)

    def to_dict(self) -> Dict[str, object]:
        return {
            "plain_integral": self.plain.to_dict(),
            "expectation": self.expectation.to_dict(),
            "kappa_bound": self.kappa_bound,
            "kappa_beta_bound": self.kappa_beta_bound,
            "bounds_hold": self.bounds_hold,
        }


def validate_moments(spec: KernelSpec, quad_points: int = 32) -> MomentReport:
    """E[r^j K(r)] for j = 0..l: must be 0 except E[r K(r)] = 1."""
    if quad_points < spec.degree + 2:
        raise UsageError(
            f"quad_points={quad_points} too small for degree {spec.degree}; need >= {spec.degree + 2}"
        )
    nodes, weights = legendre.leggauss(quad_points)
    k_vals = spec(nodes)
    checks: List[MomentCheck] = []
    for j in range(spec.l + 1):
        value = 0.5 * float(np.dot(weights, nodes**j * k_vals))
        expected = 1.0 if j == 1 else 0.0
        error = abs(value - expected)
        checks.append(MomentCheck(j, value, expected, error, error < MOMENT_TOL))
    return MomentReport(spec.name, quad_points, tuple(checks))


def _breakpoints(spec: KernelSpec) -> np.ndarray:
    roots = P.polyroots(spec.coefficients) if spec.degree > 0 else np.array([])
    real = [float(z.real) for z in np.atleast_1d(roots) if abs(z.imag) < 1e-12 and -1.0 < z.real < 1.0]
    return np.unique(np.array([-1.0, 0.0, 1.0] + real))


def _piecewise_abs_moment(spec: KernelSpec, beta: float, quad_points: int) -> float:
    nodes, weights = legendre.leggauss(quad_points)
    pts = _breakpoints(spec)
    total = 0.0
    for lo, hi in zip(pts[:-1], pts[1:]):
        half = 0.5 * (hi - lo)
        u = lo + half * (nodes + 1.0)
        total += half * float(np.dot(weights, np.abs(u) ** beta * np.abs(spec(u))))
    return total


def compute_constants(
    spec: KernelSpec,
    beta: float,
    quad_points: int = 64,
    check_bounds: bool = True,
) -> ConstantsReport:
    """kappa and kappa_beta under both conventions.

    The absolute moment is integrated piecewise between the kernel's roots (and
    0), where the integrand is smooth; the result must be stable when the
    quadrature order doubles.

    Raises:
        UsageError: beta < 1, or the quadrature has not converged
        ConsistencyError: the plain-integral constants break
            kappa <= 3 beta^3 or kappa_beta <= 2 sqrt(2) (beta - 1)
    """
    if beta < 1:
        raise UsageError(f"beta must be >= 1, got {beta}")
    if quad_points < spec.degree + 1:
        raise UsageError(f"quad_points={quad_points} too small for degree {spec.degree}")

    nodes, weights = legendre.leggauss(quad_points)
    kappa = float(np.dot(weights, spec(nodes) ** 2))

    kappa_beta = _piecewise_abs_moment(spec, beta, quad_points)
    refined = _piecewise_abs_moment(spec, beta, 2 * quad_points)
    if abs(refined - kappa_beta) > CONVERGENCE_TOL:
        raise UsageError(
            f"quadrature not converged for kappa_beta at {quad_points} points "
            f"(change {abs(refined - kappa_beta):.2e}); increase quad_points"
        )

    plain = KernelConstants(kappa, refined, float(beta), Convention.PLAIN_INTEGRAL)
    kappa_bound = 3.0 * beta**3
    kappa_beta_bound = 2.0 * math.sqrt(2.0) * (beta - 1.0)
    holds = bool(plain.kappa <= kappa_bound and plain.kappa_beta <= kappa_beta_bound)
    if check_bounds and not holds:
        raise ConsistencyError(
            f"kernel {spec.name} breaks the constant bounds at beta={beta}: "
            f"kappa={plain.kappa:.4f} (bound {kappa_bound:.4f}), "
            f"kappa_beta={plain.kappa_beta:.4f} (bound {kappa_beta_bound:.4f})"
        )
    return ConstantsReport(
        plain=plain,
        expectation=plain.to_convention(Convention.EXPECTATION),
        kappa_bound=kappa_bound,
        kappa_beta_bound=kappa_beta_bound,
        bounds_hold=holds,
    )


def expectation_constants(spec: KernelSpec, beta: Optional[float] = None) -> KernelConstants:
    """Expectation-convention constants, the ones that feed algorithm parameters."""
    order = float(beta if beta is not None else min(spec.beta_targets))
    return compute_constants(spec, order, check_bounds=False).expectation
