"""Smoothing kernels and their quadrature-based validation."""

from .legendre import (
    SUPPORTED_BETAS,
    KernelSpec,
    custom_kernel,
    kernel_eval,
    kernel_for_beta,
    legendre_kernel,
    load_kernel_file,
)
from .quadrature import (
    ConstantsReport,
    Convention,
    KernelConstants,
    MomentCheck,
    MomentReport,
    compute_constants,
    expectation_constants,
    validate_moments,
)

__all__ = [
    "SUPPORTED_BETAS",
    "ConstantsReport",
    "Convention",
    "KernelConstants",
    "KernelSpec",
    "MomentCheck",
    "MomentReport",
    "compute_constants",
    "custom_kernel",
    "expectation_constants",
    "kernel_eval",
    "kernel_for_beta",
    "legendre_kernel",
    "load_kernel_file",
    "validate_moments",
]
