import math

import numpy as np
import pytest

from fojeffreys import (
    FitConfig,
    FitNonConvergenceError,
    FoJeffreysParams,
    FrfDataset,
    fit,
    freq_response,
    objective,
    residual_report,
    validate,
)
from fojeffreys.identify import _pack, _run_restart

from conftest import add_frf_noise, make_synthetic_frf, perturbed_guess

DB_FOR_DOUBLED_GAIN = (20.0 * math.log10(2.0)) ** 2  # 36.2471 dB^2


def low_frequency_dataset(params, n_points=4):
    freqs = np.geomspace(1e-4, 4e-4, n_points)
    gains = freq_response(params, 2.0 * math.pi * freqs)
    return FrfDataset(frequencies_hz=freqs, gains=gains)


class TestFrfDataset:
    def test_requires_four_points(self, cylinder_params):
        freqs = np.array([0.1, 0.2, 0.4])
        gains = freq_response(cylinder_params, 2.0 * math.pi * freqs)
        with pytest.raises(ValueError):
            FrfDataset(frequencies_hz=freqs, gains=gains)

    def test_rejects_zero_gain(self):
        freqs = np.array([0.1, 0.2, 0.4, 0.8])
        gains = np.array([1.0 + 0j, 0.0 + 0j, 1.0 + 0j, 1.0 + 0j])
        with pytest.raises(ValueError):
            FrfDataset(frequencies_hz=freqs, gains=gains)

    def test_rejects_non_increasing_frequencies(self):
        freqs = np.array([0.1, 0.1, 0.4, 0.8])
        gains = np.full(4, 1.0 + 0j)
        with pytest.raises(ValueError):
            FrfDataset(frequencies_hz=freqs, gains=gains)

    def test_rejects_non_finite(self):
        freqs = np.array([0.1, 0.2, 0.4, 0.8])
        gains = np.array([1.0, math.inf, 1.0, 1.0], dtype=complex)
        with pytest.raises(ValueError):
            FrfDataset(frequencies_hz=freqs, gains=gains)


class TestObjective:
    def test_zero_for_generating_parameters(self, cylinder_params):
        data = make_synthetic_frf(cylinder_params)
        assert objective(cylinder_params, data) == 0.0

    def test_doubled_gain_shifts_magnitude_only(self, cylinder_params):
        # mu is a real gain: doubling it moves every point by -6.0206 dB and
        # leaves the phase untouched, so each point contributes 36.2471.
        data = low_frequency_dataset(cylinder_params)
        doubled = FoJeffreysParams(
            mu=2.0 * cylinder_params.mu,
            lambda1=cylinder_params.lambda1,
            lambda2=cylinder_params.lambda2,
            alpha=cylinder_params.alpha,
            beta=cylinder_params.beta,
            gamma=cylinder_params.gamma,
        )
        total = objective(doubled, data)
        assert math.isclose(total, len(data) * DB_FOR_DOUBLED_GAIN, rel_tol=1e-12)
        report = residual_report(
            fit_result_stub(doubled, data), data
        )
        np.testing.assert_allclose(report.residual_db, -20.0 * math.log10(2.0))
        np.testing.assert_allclose(report.residual_deg, 0.0, atol=1e-12)

    def test_uniform_phase_shift(self, cylinder_params):
        data = make_synthetic_frf(cylinder_params, n_points=10)
        shifted = FrfDataset(
            frequencies_hz=data.frequencies_hz,
            gains=data.gains * np.exp(1j * math.radians(1.0)),
        )
        assert math.isclose(objective(cylinder_params, shifted), 10.0, rel_tol=1e-9)


def fit_result_stub(params, data):
    from fojeffreys.identify import FitResult, _residual_arrays

    res_db, res_deg = _residual_arrays(params, data)
    return FitResult(
        params=params,
        objective=float(np.sum(res_db**2) + np.sum(res_deg**2)),
        iterations=0,
        converged=True,
        per_point_residuals=np.column_stack([res_db, res_deg]),
    )


class TestResidualReport:
    def test_perfect_fit_all_zero(self, cylinder_params):
        data = make_synthetic_frf(cylinder_params)
        report = residual_report(fit_result_stub(cylinder_params, data), data)
        np.testing.assert_allclose(report.residual_db, 0.0, atol=1e-12)
        np.testing.assert_allclose(report.residual_deg, 0.0, atol=1e-12)

    def test_sum_squared_equals_objective(self, cylinder_params):
        data = make_synthetic_frf(cylinder_params)
        perturbed = perturbed_guess(cylinder_params, seed=5)
        result = fit_result_stub(perturbed, data)
        report = residual_report(result, data)
        assert math.isclose(report.sum_squared, result.objective, rel_tol=1e-12)

    def test_perturbed_model_has_positive_residuals(self, cylinder_params):
        data = make_synthetic_frf(cylinder_params)
        perturbed = perturbed_guess(cylinder_params, seed=5)
        report = residual_report(fit_result_stub(perturbed, data), data)
        per_point = report.residual_db**2 + report.residual_deg**2
        assert np.all(per_point > 0.0)


class TestFitConfig:
    @pytest.mark.parametrize(
        "kwargs",
        [
            {"model_class": "XX"},
            {"max_iterations": 0},
            {"tolerance": 0.0},
            {"multistart": 0},
            {"jobs": 0},
        ],
    )
    def test_invalid_config(self, kwargs):
        with pytest.raises(ValueError):
            FitConfig(**kwargs)


class TestFit:
    def test_noiseless_recovery_within_two_percent(self, cylinder_params):
        data = make_synthetic_frf(cylinder_params)
        guess = perturbed_guess(cylinder_params, seed=42)
        result = fit(data, FitConfig(initial_guess=guess, seed=0))
        assert result.objective < 1e-6
        for name in ("mu", "lambda1", "lambda2", "alpha"):
            got = getattr(result.params, name)
            want = getattr(cylinder_params, name)
            assert abs(got - want) / want <= 0.02

    def test_result_is_constrained_valid(self, cylinder_params):
        data = make_synthetic_frf(cylinder_params)
        result = fit(data, FitConfig(seed=0))
        assert validate(result.params, "constrained") == []
        assert result.params.gamma == 1.0

    def test_io_class_pins_integer_orders(self, cylinder_params):
        data = make_synthetic_frf(cylinder_params)
        result = fit(data, FitConfig(model_class="IO", seed=0))
        assert result.params.alpha == 1.0
        assert result.params.beta == 1.0
        assert result.params.gamma == 1.0

    def test_io_objective_exceeds_fo_objective(self, cylinder_params):
        data = make_synthetic_frf(cylinder_params)
        fo = fit(data, FitConfig(model_class="FO", seed=0))
        io = fit(data, FitConfig(model_class="IO", seed=0))
        assert io.objective > fo.objective

    def test_noisy_recovery_within_ten_percent(self, cylinder_params):
        data = add_frf_noise(
            make_synthetic_frf(cylinder_params), db_sigma=0.5, deg_sigma=2.0, seed=0
        )
        guess = perturbed_guess(cylinder_params, seed=0)
        result = fit(data, FitConfig(initial_guess=guess, seed=0))
        for name in ("mu", "lambda1", "lambda2", "alpha"):
            got = getattr(result.params, name)
            want = getattr(cylinder_params, name)
            assert abs(got - want) / want <= 0.10

    def test_dashpot_data_reproduces_response(self):
        # Parameter values are non-identifiable on pure dashpot data; only
        # the response is checked against the generating 1/(mu s).
        freqs = np.geomspace(0.005, 1.6, 20)
        omega = 2.0 * math.pi * freqs
        mu = 1000.0
        data = FrfDataset(frequencies_hz=freqs, gains=1.0 / (mu * 1j * omega))
        result = fit(data, FitConfig(seed=0))
        gains = freq_response(result.params, omega)
        db_err = 20.0 * np.log10(np.abs(gains) * mu * omega)
        deg_err = np.degrees(np.angle(gains)) + 90.0
        assert np.max(np.abs(db_err)) <= 0.1
        assert np.max(np.abs(deg_err)) <= 0.1
        assert validate(result.params, "constrained") == []

    def test_gain_scaling_moves_only_mu(self, cylinder_params):
        data = make_synthetic_frf(cylinder_params)
        scale = 3.7
        scaled = FrfDataset(
            frequencies_hz=data.frequencies_hz, gains=scale * data.gains
        )
        base = fit(data, FitConfig(seed=0))
        moved = fit(scaled, FitConfig(seed=0))
        assert abs(base.params.mu / moved.params.mu - scale) / scale <= 0.01
        for name in ("lambda1", "lambda2", "alpha"):
            got = getattr(moved.params, name)
            want = getattr(base.params, name)
            assert abs(got - want) / want <= 0.01

    def test_incumbent_objective_monotone_within_restart(self, cylinder_params):
        data = make_synthetic_frf(cylinder_params)
        config = FitConfig(seed=0, max_iterations=300)
        start = _pack(perturbed_guess(cylinder_params, seed=1), "FO")
        outcome = _run_restart(0, start, data, config)
        trace = np.array(outcome.incumbent_trace)
        assert np.all(np.diff(trace) <= 0.0)

    def test_non_convergence_carries_incumbent(self, cylinder_params):
        data = make_synthetic_frf(cylinder_params)
        with pytest.raises(FitNonConvergenceError) as excinfo:
            fit(data, FitConfig(max_iterations=2, multistart=2, seed=0))
        incumbent = excinfo.value.result
        assert incumbent.converged is False
        assert math.isfinite(incumbent.objective)
        assert validate(incumbent.params, "constrained") == []

    def test_per_point_residuals_consistent(self, cylinder_params):
        data = make_synthetic_frf(cylinder_params)
        result = fit(data, FitConfig(seed=0))
        total = float(np.sum(result.per_point_residuals**2))
        assert math.isclose(total, result.objective, rel_tol=1e-12, abs_tol=1e-30)
