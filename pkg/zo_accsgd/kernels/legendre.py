"""Odd polynomial smoothing kernels on [-1, 1]."""

import json
import math
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, Sequence, Tuple, Union

import numpy as np
from numpy.polynomial import polynomial as P

from ..errors import UsageError

SUPPORTED_BETAS: Tuple[int, ...] = (3, 4, 5, 6)


@dataclass(frozen=True)
class KernelSpec:
    """Polynomial kernel K(r) = sum_i coefficients[i] * r**i.

    Args:
        coefficients: Ascending-power coefficients; even powers must be zero
        beta_targets: Smoothness orders the kernel serves
        name: Label used in reports
    """

    coefficients: Tuple[float, ...]
    beta_targets: FrozenSet[int]
    name: str = "custom"

    def __post_init__(self) -> None:
        coeffs = tuple(float(c) for c in self.coefficients)
        if not coeffs or not all(math.isfinite(c) for c in coeffs):
            raise UsageError("kernel coefficients must be a non-empty list of finite reals")
        if any(c != 0.0 for c in coeffs[0::2]):
            raise UsageError("kernel must be an odd polynomial (even-power coefficients must be zero)")
        if not self.beta_targets:
            raise UsageError("kernel must serve at least one smoothness order")
        object.__setattr__(self, "coefficients", coeffs)
        object.__setattr__(self, "beta_targets", frozenset(self.beta_targets))

    @property
    def degree(self) -> int:
        nonzero = [i for i, c in enumerate(self.coefficients) if c != 0.0]
        return nonzero[-1] if nonzero else 0

    @property
    def l(self) -> int:
        """Largest integer strictly below the maximal served order."""
        return math.ceil(max(self.beta_targets)) - 1

    def __call__(self, r: Union[float, np.ndarray]) -> Union[float, np.ndarray]:
        return P.polyval(r, self.coefficients)

    def to_dict(self) -> Dict[str, object]:
        return {
            "name": self.name,
            "coefficients": list(self.coefficients),
            "beta_targets": sorted(self.beta_targets),
        }


def _scaled(scale: float, coeffs: Sequence[float]) -> Tuple[float, ...]:
    return tuple(scale * c for c in coeffs)


# (15 r / 4)(5 - 7 r^2)
_CUBIC = _scaled(15.0 / 4.0, (0.0, 5.0, 0.0, -7.0))
# (105 r / 64)(99 r^4 - 126 r^2 + 35): sum of orthonormal Legendre terms up to degree 5
_QUINTIC = _scaled(105.0 / 64.0, (0.0, 35.0, 0.0, -126.0, 0.0, 99.0))


def legendre_kernel(beta: int) -> KernelSpec:
    """Shipped Legendre kernel for smoothness order ``beta`` in {3, 4, 5, 6}."""
    if isinstance(beta, bool) or beta not in SUPPORTED_BETAS:
        supported = ", ".join(str(b) for b in SUPPORTED_BETAS)
        raise UsageError(f"no shipped kernel for beta={beta!r}; supported: {{{supported}}}")
    if beta in (3, 4):
        return KernelSpec(_CUBIC, frozenset({3, 4}), name="legendre-3-4")
    return KernelSpec(_QUINTIC, frozenset({5, 6}), name="legendre-5-6")


def kernel_for_beta(beta: float) -> KernelSpec:
    """Pick the shipped kernel whose moment conditions cover order ``beta``."""
    if beta <= 2:
        raise UsageError(f"kernel smoothing needs beta > 2, got {beta}")
    if beta <= 4:
        return legendre_kernel(3)
    if beta <= 6:
        return legendre_kernel(5)
    raise UsageError(f"no shipped kernel covers beta={beta} (maximum 6)")


def kernel_eval(spec: KernelSpec, r: float) -> float:
    """K(r) for a scalar r in [-1, 1]."""
    if not -1.0 <= r <= 1.0:
        raise UsageError(f"kernel argument must lie in [-1, 1], got {r}")
    return float(spec(r))


def custom_kernel(coefficients: Iterable[float], beta_targets: Iterable[int], name: str = "custom") -> KernelSpec:
    return KernelSpec(tuple(coefficients), frozenset(int(b) for b in beta_targets), name=name)


def load_kernel_file(path: str) -> KernelSpec:
    """Read a kernel from JSON ``{"coefficients": [...], "beta_targets": [...]}``."""
    try:
        with open(path, "r", encoding="utf-8") as f:
            payload = json.load(f)
    except (OSError, json.JSONDecodeError) as e:
        raise UsageError(f"cannot read kernel file {path}: {e}") from e
    try:
        return custom_kernel(payload["coefficients"], payload["beta_targets"], payload.get("name", path))
    except (KeyError, TypeError) as e:
        raise UsageError(f"kernel file {path} needs 'coefficients' and 'beta_targets'") from e
