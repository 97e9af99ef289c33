import numpy as np
import pytest

from zo_accsgd.core import CallableObjective
from zo_accsgd.kernels import legendre_kernel
from zo_accsgd.problems import least_squares_make, quadratic_make


@pytest.fixture(autouse=True)
def _single_thread_default(monkeypatch):
    monkeypatch.setenv("ZO_THREADS", "1")


@pytest.fixture
def cubic_kernel():
    return legendre_kernel(3)


@pytest.fixture
def quintic_kernel():
    return legendre_kernel(5)


@pytest.fixture
def half_norm_sq():
    """f(x) = 1/2 ||x||^2 in two dimensions."""
    return CallableObjective(
        lambda x: 0.5 * float(x @ x),
        dim=2,
        gradient_fn=lambda x: np.asarray(x, dtype=float),
        values_fn=lambda X: 0.5 * np.einsum("ij,ij->i", X, X),
        L=1.0,
        f_star=0.0,
    )


@pytest.fixture
def planted_system():
    """The default linear-system benchmark: d = p = 64, L ~ 2."""
    return least_squares_make(64, 64, seed=0, condition_target=10.0, scale=0.1)


@pytest.fixture
def small_quadratic():
    return quadratic_make(8, seed=3, condition=10.0)
