import numpy as np
import pytest

from zo_accsgd.core import CallableObjective, ObjectiveFunction, check_gradient
from zo_accsgd.errors import UsageError


class _Cube(ObjectiveFunction):
    dim = 1

    def value(self, x):
        return float(x[0] ** 3)


def test_default_values_loops_over_rows():
    np.testing.assert_allclose(_Cube().values(np.array([[1.0], [2.0]])), [1.0, 8.0])


def test_missing_gradient_is_reported():
    assert not _Cube().has_gradient
    with pytest.raises(NotImplementedError):
        _Cube().true_gradient(np.zeros(1))


def test_gap_uses_f_star(half_norm_sq):
    assert half_norm_sq.gap(np.array([1.0, 1.0])) == pytest.approx(1.0)
    assert _Cube().gap(np.array([2.0])) == pytest.approx(8.0)


def test_callable_objective_requires_positive_dim():
    with pytest.raises(UsageError):
        CallableObjective(lambda x: 0.0, dim=0)


def test_check_gradient_accepts_correct_gradient(half_norm_sq):
    points = np.random.default_rng(0).standard_normal((10, 2))
    assert check_gradient(half_norm_sq, points) < 1e-4


def test_check_gradient_flags_wrong_gradient():
    wrong = CallableObjective(lambda x: float(x @ x), dim=2, gradient_fn=lambda x: x)
    with pytest.raises(AssertionError):
        check_gradient(wrong, np.array([[1.0, 2.0]]))
