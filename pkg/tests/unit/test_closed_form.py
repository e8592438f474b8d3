"""Unit tests for the small-sigma closed forms and timescales.

Tests core/closed_form/:
- eigen-density and A_q approximations
- closed-form density limits
- decay rate, onset/decay times, suppression time
- wall-width estimates in physical units
"""
from math import cos, exp, inf, pi, sin, sqrt

import pytest

from core.closed_form import (
    EigenDensityForm,
    InterferenceForm,
    a_q_approx,
    a_q_late,
    approx_density,
    approx_eigen_density,
    approx_interference,
    approx_mixture,
    assess_regime,
    boundary_width_estimate,
    decay_parameters,
    sigma_from_boundary_width,
    suppression_time,
    time_from_phase,
)
from core.ensemble import NoiseModel
from core.errors import DomainError
from core.well import (
    AMU,
    EvalPoint,
    SuperpositionSpec,
    WellConfig,
    fixed_density,
    interference_bracket,
    mixture_density,
)

OMEGA_BAR = 1.5 * pi * pi


@pytest.fixture
def cfg():
    return WellConfig.dimensionless()


@pytest.fixture
def spec():
    return SuperpositionSpec()


def at(x, omega_t):
    return EvalPoint.from_phase(x, omega_t, OMEGA_BAR)


class TestApproxEigenDensity:
    """Tests for approx_eigen_density()."""

    def test_unperturbed_is_fixed_modulus(self, cfg):
        value = approx_eigen_density(
            2, EvalPoint(0.3), NoiseModel(0.01), cfg, EigenDensityForm.UNPERTURBED
        )
        assert value == pytest.approx(2.0 * sin(2 * pi * 0.3) ** 2)

    def test_damped_reduces_to_unperturbed_without_noise(self, cfg):
        damped = approx_eigen_density(1, EvalPoint(0.4), NoiseModel.fixed(), cfg)
        assert damped == pytest.approx(2.0 * sin(1 * pi * 0.4) ** 2, rel=1e-14)

    def test_damping_grows_towards_wall(self, cfg):
        """cos(2 n pi x) loses contrast as x approaches a_bar."""
        noise = NoiseModel(0.05)
        near = approx_eigen_density(1, EvalPoint(0.02), noise, cfg)
        far = approx_eigen_density(1, EvalPoint(0.98), noise, cfg)
        assert far > near

    def test_zero_outside_well(self, cfg):
        assert approx_eigen_density(1, EvalPoint(1.2), NoiseModel(0.01), cfg) == 0.0

    def test_rejects_bad_index(self, cfg):
        with pytest.raises(DomainError):
            approx_eigen_density(0, EvalPoint(0.5), NoiseModel(0.01), cfg)


class TestAqApproximations:
    """Tests for a_q_approx() and a_q_late()."""

    def test_late_damping_is_gamma(self, cfg):
        noise = NoiseModel(0.01)
        value = a_q_late(1, 1, at(0.7, 50.0), noise, cfg)
        expected = sqrt(pi / noise.theta) * exp(-2.0 * 1e-4 * 50.0**2)
        assert abs(value) == pytest.approx(expected, rel=1e-12)

    @pytest.mark.parametrize("q", [1, -3])
    @pytest.mark.parametrize("sign", [1, -1])
    def test_expanded_to_late_ratio(self, cfg, q, sign):
        """The two forms differ by exp(-sigma^2 (k^2 + 4 sign k w_bar t) / 2)."""
        noise = NoiseModel(0.01)
        point = at(0.7, 50.0)
        k = q * pi * 0.7
        ratio = a_q_approx(q, sign, point, noise, cfg) / a_q_late(q, sign, point, noise, cfg)
        expected = exp(-0.5 * 1e-4 * (k * k + 4.0 * sign * k * 50.0))
        assert ratio.real == pytest.approx(expected, rel=1e-12)
        assert ratio.imag == pytest.approx(0.0, abs=1e-12)

    def test_phase(self, cfg):
        noise = NoiseModel(0.01)
        value = a_q_late(1, -1, at(0.25, 3.0), noise, cfg)
        expected_phase = 0.25 * pi - 3.0
        assert value.real == pytest.approx(abs(value) * cos(expected_phase), rel=1e-10)

    def test_q_zero_rejected(self, cfg):
        with pytest.raises(DomainError):
            a_q_approx(0, 1, EvalPoint(0.5), NoiseModel(0.01), cfg)

    def test_bad_sign_rejected(self, cfg):
        with pytest.raises(DomainError):
            a_q_late(1, 0, EvalPoint(0.5), NoiseModel(0.01), cfg)


class TestApproxDensity:
    """Tests for approx_interference() and approx_density()."""

    def test_late_form_at_t_zero_is_fixed_density(self, cfg, spec):
        for x in (0.2, 0.5, 0.7):
            point = EvalPoint(x)
            assert approx_density(spec, point, NoiseModel(0.01), cfg) == pytest.approx(
                fixed_density(spec, point, 1.0, cfg), abs=1e-12
            )

    def test_late_interference_envelope(self, cfg, spec):
        noise = NoiseModel(0.01)
        value = approx_interference(spec, at(0.7, 100.0), noise, cfg)
        bracket = float(interference_bracket(spec, 0.7, cfg))
        assert value == pytest.approx(bracket * cos(100.0) * exp(-2.0), rel=1e-10)

    @pytest.mark.parametrize("x", [0.2, 0.7])
    def test_envelope_never_grows(self, cfg, spec, x):
        """|interference| at w_bar t = k pi is non-increasing in k."""
        noise = NoiseModel(0.01)
        magnitudes = [
            abs(approx_interference(spec, at(x, k * pi), noise, cfg)) for k in range(100)
        ]
        assert magnitudes[0] > 0.0
        assert all(b <= a for a, b in zip(magnitudes, magnitudes[1:]))

    def test_expanded_form_close_to_late(self, cfg, spec):
        noise = NoiseModel(0.01)
        point = at(0.7, 20.0)
        late = approx_interference(spec, point, noise, cfg)
        expanded = approx_interference(spec, point, noise, cfg, InterferenceForm.EXPANDED)
        assert expanded == pytest.approx(late, abs=5e-2)

    def test_expanded_form_at_t_zero(self, cfg, spec):
        """Without noise both forms reduce to the bracket."""
        point = EvalPoint(0.7)
        expanded = approx_interference(
            spec, point, NoiseModel.fixed(), cfg, InterferenceForm.EXPANDED
        )
        assert expanded == pytest.approx(float(interference_bracket(spec, 0.7, cfg)))

    @pytest.mark.parametrize("x", [0.2, 0.7])
    def test_late_time_mixture(self, cfg, spec, x):
        value = approx_density(spec, at(x, 300.0), NoiseModel(0.01), cfg)
        assert value == pytest.approx(mixture_density(spec, x, 1.0), abs=1e-7)

    def test_stationary_state_is_mixture(self, cfg):
        single = SuperpositionSpec.single(1)
        noise = NoiseModel(0.01)
        point = at(0.4, 10.0)
        assert approx_density(single, point, noise, cfg) == approx_mixture(
            single, point, noise, cfg
        )

    def test_zero_outside_well(self, cfg, spec):
        assert approx_density(spec, at(1.5, 10.0), NoiseModel(0.01), cfg) == 0.0


class TestAssessRegime:
    """Tests for assess_regime()."""

    def test_valid_after_onset(self, cfg, spec):
        info = assess_regime(spec, at(0.7, 10.0), NoiseModel(0.01), cfg)
        assert info.past_onset
        assert info.valid
        assert info.small_parameter == pytest.approx(pi * 0.01 * 0.7)

    def test_before_onset(self, cfg, spec):
        info = assess_regime(spec, at(0.7, 0.5), NoiseModel(0.01), cfg)
        assert not info.past_onset
        assert not info.valid

    def test_sigma_at_cap(self, cfg, spec):
        info = assess_regime(spec, at(0.7, 10.0), NoiseModel(0.05), cfg)
        assert info.sigma_at_cap
        assert info.to_dict()["valid"] is False


class TestDecayParameters:
    """Tests for decay_parameters() and suppression_time()."""

    def test_gamma(self, cfg, spec):
        params = decay_parameters(spec, NoiseModel(0.01), cfg)
        assert params.gamma == pytest.approx(4.3834e-2, rel=1e-4)
        assert params.omega_bar == pytest.approx(OMEGA_BAR)

    def test_timescales(self, cfg, spec):
        params = decay_parameters(spec, NoiseModel(0.01), cfg)
        assert params.t_onset == pytest.approx(1.0 / OMEGA_BAR)
        assert params.t_decay == pytest.approx(1.0 / sqrt(params.gamma))

    def test_doubling_sigma_halves_decay_time(self, cfg, spec):
        narrow = decay_parameters(spec, NoiseModel(0.01), cfg)
        wide = decay_parameters(spec, NoiseModel(0.02), cfg)
        assert wide.t_decay == pytest.approx(narrow.t_decay / 2.0, rel=1e-12)
        assert wide.gamma == pytest.approx(4.0 * narrow.gamma, rel=1e-12)

    def test_fixed_boundaries_never_decay(self, cfg, spec):
        params = decay_parameters(spec, NoiseModel.fixed(), cfg)
        assert params.gamma == 0.0
        assert params.t_decay == inf
        assert suppression_time(params, 1.5, 1e-3) == inf

    def test_suppression_time(self, cfg, spec):
        params = decay_parameters(spec, NoiseModel(0.01), cfg)
        t = suppression_time(params, 1.5, 1e-3)
        assert 1.5 * exp(-params.gamma * t * t) == pytest.approx(1e-3)

    def test_suppression_time_below_threshold(self, cfg, spec):
        params = decay_parameters(spec, NoiseModel(0.01), cfg)
        assert suppression_time(params, 1e-4, 1e-3) == 0.0

    def test_suppression_time_rejects_zero_threshold(self, cfg, spec):
        params = decay_parameters(spec, NoiseModel(0.01), cfg)
        with pytest.raises(DomainError):
            suppression_time(params, 1.0, 0.0)

    def test_physical_units(self, spec):
        """Electron in a 1 Angstrom well."""
        params = decay_parameters(spec, NoiseModel(0.01), WellConfig.physical())
        assert params.omega_bar == pytest.approx(1.71387e17, rel=1e-4)
        assert params.t_onset == pytest.approx(5.835e-18, rel=1e-3)
        assert time_from_phase(200.0, params) == pytest.approx(1.167e-15, rel=1e-3)


class TestBoundaryWidth:
    """Tests for boundary_width_estimate() and sigma_from_boundary_width()."""

    def test_heavy_wall_estimate(self):
        """30 amu at 1e15 rad/s gives sigma ~ 0.01 for a 1 Angstrom well."""
        cfg = WellConfig.physical()
        delta_x = boundary_width_estimate(30 * AMU, 1e15, cfg)
        assert delta_x == pytest.approx(1.0288e-12, rel=1e-3)
        assert sigma_from_boundary_width(delta_x, cfg) == pytest.approx(0.01, rel=5e-2)

    def test_rejects_non_positive_mass(self):
        with pytest.raises(DomainError):
            boundary_width_estimate(0.0, 1e15, WellConfig.physical())

    def test_rejects_non_positive_frequency(self):
        with pytest.raises(DomainError):
            boundary_width_estimate(AMU, -1.0, WellConfig.physical())

    def test_rejects_negative_width(self):
        with pytest.raises(DomainError):
            sigma_from_boundary_width(-1e-12, WellConfig.physical())
