import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from zo_accsgd.errors import UsageError
from zo_accsgd.kernels import Convention, KernelConstants, expectation_constants, legendre_kernel
from zo_accsgd.theory import (
    Regime,
    classify_regime,
    error_floor_terms,
    max_noise,
    plan,
    required_batch,
    smoothing_choice,
)

CUBIC = KernelConstants(18.75, 0.5, 3.0, Convention.EXPECTATION)


@pytest.mark.parametrize(
    "B, d, kappa, expected",
    [
        (1, 64, 18.75, Regime.B_EQ_1),
        (1, 1, 0.1, Regime.B_EQ_1),
        (50, 64, 18.75, Regime.B_LT_4DK),
        (4800, 64, 18.75, Regime.B_EQ_4DK),
        (4801, 64, 18.75, Regime.B_GT_4DK),
    ],
)
def test_classify_regime(B, d, kappa, expected):
    assert classify_regime(B, d, kappa) is expected


@pytest.mark.parametrize(
    "eps, beta, case_id, expected",
    [
        (1e-2, 3.0, Regime.B_EQ_1, 1e-2**0.75),
        (1e-2, 2.2, Regime.B_EQ_1, 1e-2 ** (1 / 1.2)),
        (1e-4, 5.0, Regime.B_GT_4DK, 0.1),
    ],
)
def test_smoothing_choice(eps, beta, case_id, expected):
    assert smoothing_choice(eps, 10, beta, case_id) == pytest.approx(expected)


def test_smoothing_choice_dimension_term():
    # beta = 3, eps = 1e-2: the dimension term eps^(3/8) / d^(1/4) binds past d = 1000
    assert smoothing_choice(1e-2, 1000, 3.0, Regime.B_LT_4DK) == pytest.approx(1e-2**0.75)
    assert smoothing_choice(1e-2, 10**5, 3.0, Regime.B_LT_4DK) == pytest.approx(1e-2**0.375 / 10**1.25)
    assert smoothing_choice(1e-2, 10**5, 3.0, Regime.B_GT_4DK) == pytest.approx(0.1)


def test_smoothing_choice_examples_rounded():
    assert round(smoothing_choice(1e-2, 10, 3.0, Regime.B_EQ_1), 4) == 0.0316
    assert round(smoothing_choice(1e-2, 10, 2.2, Regime.B_EQ_1), 4) == 0.0215


@pytest.mark.parametrize("eps", [0.0, 1.0, 2.0])
def test_accuracy_outside_unit_interval(eps):
    with pytest.raises(UsageError):
        smoothing_choice(eps, 10, 3.0, Regime.B_EQ_1)


@pytest.mark.parametrize("beta", [2.0, 1.5])
def test_beta_at_most_two_rejected(beta):
    with pytest.raises(UsageError):
        plan(10, beta, 1.0, 1.0, 1e-2, 1, CUBIC)


def test_max_noise_example():
    assert max_noise(1e-2, 100, 3.0, 1, 18.75) == pytest.approx(1e-4)


def test_overbatched_noise_grows_with_root_batch():
    a = max_noise(1e-2, 4, 3.0, 1000, 1.0)
    b = max_noise(1e-2, 4, 3.0, 2000, 1.0)
    assert b / a == pytest.approx(math.sqrt(2))


def test_low_beta_noise_branch():
    eps, d, beta = 1e-2, 9, 2.2
    expected = eps ** ((3 * beta + 1) / (4 * (beta - 1))) / math.sqrt(d)
    assert max_noise(eps, d, beta, 1, 1.0) == pytest.approx(expected)
    assert plan(d, beta, 1.0, 1.0, eps, 1, CUBIC).delta_branch == "beta_lt_7_3"


def test_plan_default_linear_system():
    p = plan(64, 3.0, 2.0, 1.0, 1e-2, 50, CUBIC)
    assert p.case_id is Regime.B_LT_4DK
    assert p.N == pytest.approx(math.sqrt(64**2 * 2.0 / (1e-2 * 50**2)))
    assert p.T == pytest.approx(p.N * 50)
    assert p.rho_B == pytest.approx(96.0)
    assert p.n_schedule == pytest.approx(96.0 * math.sqrt(2.0 / 1e-2))


def test_plan_converts_plain_constants():
    plain = CUBIC.to_convention(Convention.PLAIN_INTEGRAL)
    assert plan(64, 3.0, 1.0, 1.0, 1e-2, 4800, plain).case_id is Regime.B_EQ_4DK


def test_critical_batch_is_dimension_free():
    p = plan(64, 3.0, 1.0, 2.0, 1e-2, 4800, CUBIC)
    assert p.case_id is Regime.B_EQ_4DK
    assert p.N == pytest.approx(math.sqrt(4.0 / 1e-2))
    assert p.rho_B == 1.0


def test_overbatched_oracle_count():
    eps, d, beta, B = 1e-2, 4, 3.0, 1000
    p = plan(d, beta, 1.0, 1.0, eps, B, KernelConstants(1.0, 1.0, beta))
    assert p.case_id is Regime.B_GT_4DK
    noise_term = d * d * p.delta_max**2 / eps ** (2 + 2 / (beta - 1))
    assert p.T == pytest.approx(max(d * math.sqrt(1 / eps), noise_term))
    assert p.h == pytest.approx(eps ** 0.5)


def test_required_batch_formula():
    assert required_batch(1e-2, 10, 3.0, 1e-3) == pytest.approx(100 * 1e-6 / 1e-2 ** 2.5)
    p = plan(10, 3.0, 1.0, 1.0, 1e-2, 1, CUBIC, delta_target=1e-3)
    assert p.required_batch == pytest.approx(required_batch(1e-2, 10, 3.0, 1e-3))
    assert plan(10, 3.0, 1.0, 1.0, 1e-2, 1, CUBIC).required_batch is None


def test_plan_dict_is_labelled_scale_free():
    out = plan(8, 4.0, 1.0, 1.0, 0.1, 2, expectation_constants(legendre_kernel(4))).to_dict()
    assert out["scale_free"] is True
    assert out["inputs"]["kappa_convention"] == "expectation"
    assert out["case_id"] in {r.value for r in Regime}


@given(
    st.floats(min_value=1e-6, max_value=0.5),
    st.integers(min_value=1, max_value=10_000),
    st.integers(min_value=1, max_value=256),
)
def test_quartering_accuracy_doubles_iterations(eps, B, d):
    a = plan(d, 3.0, 1.0, 1.0, eps, B, CUBIC)
    b = plan(d, 3.0, 1.0, 1.0, eps / 4, B, CUBIC)
    assert b.N == pytest.approx(2 * a.N, rel=1e-9)


@given(st.integers(min_value=1, max_value=4800), st.floats(min_value=1e-6, max_value=0.5))
def test_oracle_count_is_n_times_b_up_to_critical(B, eps):
    p = plan(64, 3.0, 1.0, 1.0, eps, B, CUBIC)
    assert p.T == pytest.approx(p.N * B, rel=1e-12)


@given(st.floats(min_value=1e-6, max_value=0.5), st.floats(min_value=0.1, max_value=100.0))
def test_continuity_at_critical_batch(eps, R):
    under = 64 * math.sqrt(R * R / eps) / 4800
    at = plan(64, 3.0, 1.0, R, eps, 4800, CUBIC).N
    assert at / under == pytest.approx(4 * 18.75, rel=1e-9)


def test_iterations_non_increasing_in_batch():
    Ns = [plan(64, 3.0, 1.0, 1.0, 1e-2, B, CUBIC).N for B in (1, 2, 10, 100, 4800, 10_000)]
    assert all(a >= b for a, b in zip(Ns, Ns[1:]))


def test_oracle_count_constant_below_critical_batch():
    Ts = [plan(64, 3.0, 1.0, 1.0, 1e-2, B, CUBIC).T for B in (2, 10, 100, 4799)]
    assert max(Ts) == pytest.approx(min(Ts))


def test_noise_budget_non_decreasing_above_critical_batch():
    deltas = [plan(64, 3.0, 1.0, 1.0, 1e-2, B, CUBIC).delta_max for B in (4801, 10_000, 100_000)]
    assert all(a <= b for a, b in zip(deltas, deltas[1:]))


@given(st.floats(min_value=7 / 3, max_value=50.0), st.floats(min_value=1e-6, max_value=0.5))
def test_noise_exponent_is_three_halves_for_smooth_kernels(beta, eps):
    d = 16
    assert max_noise(eps, d, beta, 1, 1.0) == pytest.approx(eps**1.5 / 4)


def test_schedule_length_non_decreasing_in_rho():
    runs = [plan(64, 3.0, 1.0, 1.0, 1e-2, B, CUBIC).n_schedule for B in (10_000, 1000, 100, 10)]
    assert all(a <= b for a, b in zip(runs, runs[1:]))


def test_error_floor_terms():
    terms = error_floor_terms(100, 8, 1.0, 1.0, 0.1, 1e-3, 10, CUBIC, L_beta=1.0)
    assert set(terms) == {"rate", "curvature_variance", "noise_variance", "bias", "accumulated_bias", "total"}
    assert terms["total"] == pytest.approx(sum(v for k, v in terms.items() if k != "total"))
    assert terms["bias"] == pytest.approx(0.5 * 0.1**2)


def test_error_floor_noise_term_grows_with_delta():
    low = error_floor_terms(100, 8, 1.0, 1.0, 0.1, 1e-4, 10, CUBIC, L_beta=1.0)
    high = error_floor_terms(100, 8, 1.0, 1.0, 0.1, 1e-2, 10, CUBIC, L_beta=1.0)
    assert high["noise_variance"] == pytest.approx(1e4 * low["noise_variance"])
