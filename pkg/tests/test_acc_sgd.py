import numpy as np
import pytest

from zo_accsgd.core import RngStream
from zo_accsgd.errors import DivergenceError, UsageError
from zo_accsgd.estimators import EstimatorConfig
from zo_accsgd.optimizers import (
    AccSgdConfig,
    AccSgdParams,
    AccSgdState,
    BiasedExactGradient,
    ExactGradient,
    GradientProvider,
    RunStatus,
    StopRule,
    ZeroOrderGradient,
    acc_sgd_step,
    resolve_params,
    run_acc_sgd,
    run_zo_acc_sgd,
)
from zo_accsgd.problems import LinearFunction, QuadraticProblem, quadratic_make


def test_one_step_solves_unit_quadratic(half_norm_sq):
    state = AccSgdState.start(np.array([1.0, 0.0]))
    params = AccSgdParams.initial(L=1.0, rho_B=1.0, eta=1.0)
    new, nxt, calls = acc_sgd_step(state, params, ExactGradient(half_norm_sq), RngStream(0))
    np.testing.assert_allclose(new.x, [0.0, 0.0])
    np.testing.assert_allclose(new.y, [0.0, 0.0])
    assert nxt.k == 1
    assert calls == 0


def test_zero_gradient_is_a_fixed_point():
    objective = LinearFunction(np.zeros(3), offset=2.0)
    state = AccSgdState(np.ones(3), np.full(3, 2.0), np.full(3, 3.0), 0)
    new, _, _ = acc_sgd_step(state, AccSgdParams.initial(L=1.0), ExactGradient(objective), RngStream(0))
    np.testing.assert_array_equal(new.x, state.y)
    np.testing.assert_array_equal(new.z, state.z)


def test_providers_satisfy_protocol(half_norm_sq, cubic_kernel):
    from zo_accsgd.core import ZeroOrderOracle

    assert isinstance(ExactGradient(half_norm_sq), GradientProvider)
    assert isinstance(ZeroOrderGradient(ZeroOrderOracle(half_norm_sq), EstimatorConfig(0.1, 1, cubic_kernel)), GradientProvider)


def test_exact_provider_needs_gradient():
    from zo_accsgd.core import CallableObjective

    with pytest.raises(UsageError):
        ExactGradient(CallableObjective(lambda x: 0.0, dim=1))


def test_zero_iterations_records_only_the_start(half_norm_sq):
    x0 = np.array([1.0, -1.0])
    trace = run_acc_sgd(half_norm_sq, ExactGradient(half_norm_sq), x0, AccSgdParams.initial(L=1.0), StopRule(0), seed=0)
    assert trace.iterations == [0]
    np.testing.assert_array_equal(trace.final_x, x0)
    assert trace.status is RunStatus.COMPLETED


def test_record_stride_keeps_the_last_iteration(small_quadratic):
    trace = run_acc_sgd(
        small_quadratic, ExactGradient(small_quadratic), np.zeros(8), AccSgdParams.initial(L=small_quadratic.L),
        StopRule(25, record_every=10), seed=0,
    )
    assert trace.iterations == [0, 10, 20, 25]


def test_target_gap_stops_early(small_quadratic):
    trace = run_acc_sgd(
        small_quadratic, ExactGradient(small_quadratic), np.zeros(8), AccSgdParams.initial(L=small_quadratic.L),
        StopRule(10_000, record_every=100, target_gap=1e-3), seed=0,
    )
    assert trace.status is RunStatus.TARGET_REACHED
    assert trace.final_gap <= 1e-3
    assert trace.iterations[-1] < 10_000
    assert trace.iterations_to(1e-3) == trace.iterations[-1]


def test_too_large_step_diverges_with_partial_trace(half_norm_sq):
    with pytest.raises(DivergenceError) as info:
        run_acc_sgd(
            half_norm_sq, ExactGradient(half_norm_sq), np.array([1.0, 1.0]),
            AccSgdParams.initial(L=1.0, eta=5.0), StopRule(1000), seed=0,
        )
    err = info.value
    assert err.trace.status is RunStatus.DIVERGED
    assert err.trace.records[0].iteration == 0
    assert err.state.is_finite()


def test_radius_tracking(small_quadratic):
    trace = run_acc_sgd(
        small_quadratic, ExactGradient(small_quadratic), np.zeros(8), AccSgdParams.initial(L=small_quadratic.L),
        StopRule(5), seed=0, track_radius=True,
    )
    assert trace.records[0].z_minus_y == 0.0
    assert trace.records[0].z_minus_xstar == pytest.approx(np.linalg.norm(small_quadratic.x_star))
    assert all(r.z_minus_y is not None for r in trace.records)


def test_subscribers_receive_every_record(small_quadratic):
    seen = []
    run_acc_sgd(
        small_quadratic, ExactGradient(small_quadratic), np.zeros(8), AccSgdParams.initial(L=small_quadratic.L),
        StopRule(4), seed=0, listeners=[seen.append],
    )
    assert [r.iteration for r in seen] == [0, 1, 2, 3, 4]


def test_failing_subscriber_does_not_stop_the_run(small_quadratic):
    def broken(_record):
        raise RuntimeError("listener failure")

    trace = run_acc_sgd(
        small_quadratic, ExactGradient(small_quadratic), np.zeros(8), AccSgdParams.initial(L=small_quadratic.L),
        StopRule(3), seed=0, listeners=[broken],
    )
    assert trace.iterations == [0, 1, 2, 3]


def test_oracle_calls_are_two_b_per_iteration(planted_system, cubic_kernel):
    cfg = EstimatorConfig(0.5, 5, cubic_kernel)
    trace = run_zo_acc_sgd(planted_system, None, cfg, AccSgdConfig(eta=0.02), StopRule(20, record_every=3), seed=1)
    for record in trace.records:
        assert record.oracle_calls == 2 * 5 * record.iteration
    assert np.all(np.diff([r.oracle_calls for r in trace.records]) >= 0)


def test_resolve_params_uses_expectation_kappa(planted_system, cubic_kernel):
    params = resolve_params(planted_system, EstimatorConfig(0.5, 50, cubic_kernel), AccSgdConfig())
    assert params.rho_B == pytest.approx(96.0)
    assert params.eta == pytest.approx(1.0 / (96.0 * planted_system.L))


def test_resolve_params_needs_l(cubic_kernel):
    with pytest.raises(UsageError):
        resolve_params(LinearFunction(np.ones(2)), EstimatorConfig(0.5, 1, cubic_kernel), AccSgdConfig())


def test_same_seed_same_trace(planted_system, cubic_kernel):
    from zo_accsgd.core import make_noise

    cfg = EstimatorConfig(0.5, 10, cubic_kernel)
    runs = [
        run_zo_acc_sgd(planted_system, make_noise("uniform", 1e-5), cfg, AccSgdConfig(eta=0.02), StopRule(30), seed=4)
        for _ in range(2)
    ]
    np.testing.assert_array_equal(runs[0].gaps, runs[1].gaps)
    np.testing.assert_array_equal(runs[0].final_x, runs[1].final_x)


def test_metadata_echoes_configuration(planted_system, cubic_kernel):
    trace = run_zo_acc_sgd(planted_system, None, EstimatorConfig(0.5, 50, cubic_kernel), AccSgdConfig(eta=0.02), StopRule(1), seed=0)
    meta = trace.metadata
    assert meta["method"] == "zo_acc_sgd"
    assert meta["batch_size"] == 50
    assert meta["kernel"] == "legendre-3-4"
    assert meta["rho_B"] == pytest.approx(96.0)
    assert meta["smoothing_warning"] is False


def test_bias_raises_the_error_floor(small_quadratic):
    gaps = []
    for delta in (0.0, 1e-3, 1e-2):
        trace = run_acc_sgd(
            small_quadratic, BiasedExactGradient.constant(small_quadratic, delta), np.zeros(8),
            AccSgdParams.initial(L=small_quadratic.L), StopRule(20_000, record_every=1000), seed=0,
        )
        gaps.append(trace.final_gap)
    assert gaps[0] <= gaps[1] <= gaps[2]
    assert gaps[2] > 0


def test_accelerated_rate_on_exact_gradients():
    problem = quadratic_make(32, seed=0, condition=1e3)
    trace = run_acc_sgd(problem, ExactGradient(problem), np.zeros(32), AccSgdParams.initial(L=problem.L), StopRule(1000), seed=0)
    k = np.array(trace.iterations)
    window = (k >= 100) & (k <= 1000)
    slope = np.polyfit(np.log(k[window]), np.log(trace.gaps[window]), 1)[0]
    assert slope <= -1.7


def test_biased_provider_shape_checked(half_norm_sq):
    with pytest.raises(UsageError):
        BiasedExactGradient(half_norm_sq, np.zeros(3))


def test_callable_bias_field(half_norm_sq):
    provider = BiasedExactGradient(half_norm_sq, lambda x: 0.5 * x)
    g, _ = provider.estimate(np.array([2.0, 0.0]), RngStream(0))
    np.testing.assert_allclose(g, [3.0, 0.0])


def test_quadratic_minimizer_unchanged_by_zero_bias():
    H = np.diag([1.0, 2.0])
    problem = QuadraticProblem(H, np.array([1.0, 1.0]))
    trace = run_acc_sgd(problem, BiasedExactGradient.constant(problem, 0.0), np.zeros(2), AccSgdParams.initial(L=2.0), StopRule(2000), seed=0)
    np.testing.assert_allclose(trace.final_x, [1.0, 1.0], atol=1e-3)
