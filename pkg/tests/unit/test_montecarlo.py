"""Unit tests for the Monte-Carlo oracle.

Tests core/ensemble/montecarlo.py:
- agreement with the quadrature path
- seeding and worker independence
- resampling of unphysical widths
"""
from math import pi

import numpy as np
import pytest

from core.ensemble import MonteCarloSpec, NoiseModel, QuadratureSpec, averaged_density
from core.ensemble import montecarlo
from core.ensemble.montecarlo import (
    BLOCK_SIZE,
    MonteCarloResult,
    block_seed_sequence,
    mc_averaged_density,
)
from core.errors import NoiseRegimeError
from core.well import EvalPoint, SuperpositionSpec, WellConfig, fixed_density

OMEGA_BAR = 1.5 * pi * pi


@pytest.fixture
def cfg():
    return WellConfig.dimensionless()


@pytest.fixture
def spec():
    return SuperpositionSpec()


class TestMonteCarloResult:
    """Tests for MonteCarloResult."""

    def test_z_score(self):
        result = MonteCarloResult(mean=1.0, stderr=0.01, samples=1000)
        assert result.z_score(1.02) == pytest.approx(2.0)

    def test_z_score_without_spread(self):
        result = MonteCarloResult(mean=1.0, stderr=0.0, samples=1000)
        assert result.z_score(1.0) == 0.0
        assert result.z_score(1.1) == float("inf")

    def test_to_dict(self):
        result = MonteCarloResult(mean=1.0, stderr=0.5, samples=100, rejected=2)
        assert result.to_dict()["rejected"] == 2


class TestSeeding:
    """Tests for block seeding."""

    def test_same_block_same_stream(self):
        a = np.random.default_rng(block_seed_sequence(12345, 3)).normal(size=4)
        b = np.random.default_rng(block_seed_sequence(12345, 3)).normal(size=4)
        assert np.array_equal(a, b)

    def test_blocks_differ(self):
        a = np.random.default_rng(block_seed_sequence(12345, 0)).normal(size=4)
        b = np.random.default_rng(block_seed_sequence(12345, 1)).normal(size=4)
        assert not np.array_equal(a, b)

    def test_block_sizes(self):
        sizes = montecarlo._block_sizes(2 * BLOCK_SIZE + 5)
        assert sizes == [BLOCK_SIZE, BLOCK_SIZE, 5]


class TestMcAveragedDensity:
    """Tests for mc_averaged_density()."""

    def test_agrees_with_quadrature(self, cfg, spec):
        noise = NoiseModel(0.01)
        point = EvalPoint.from_phase(0.7, 50.0, OMEGA_BAR)
        result = mc_averaged_density(spec, point, noise, MonteCarloSpec(samples=200_000), cfg)
        exact = averaged_density(spec, point, noise, QuadratureSpec(), cfg)
        assert result.samples == 200_000
        assert result.stderr > 0
        assert abs(result.mean - exact) <= 4.5 * result.stderr

    def test_deterministic(self, cfg, spec):
        noise = NoiseModel(0.02)
        point = EvalPoint.from_phase(0.3, 20.0, OMEGA_BAR)
        mc = MonteCarloSpec(samples=5000, seed=99)
        first = mc_averaged_density(spec, point, noise, mc, cfg)
        second = mc_averaged_density(spec, point, noise, mc, cfg)
        assert first == second

    def test_seed_changes_estimate(self, cfg, spec):
        noise = NoiseModel(0.02)
        point = EvalPoint.from_phase(0.3, 20.0, OMEGA_BAR)
        a = mc_averaged_density(spec, point, noise, MonteCarloSpec(samples=5000, seed=1), cfg)
        b = mc_averaged_density(spec, point, noise, MonteCarloSpec(samples=5000, seed=2), cfg)
        assert a.mean != b.mean

    def test_independent_of_workers(self, cfg, spec):
        """Parallelism changes the schedule, never the numbers."""
        noise = NoiseModel(0.01)
        point = EvalPoint.from_phase(0.7, 80.0, OMEGA_BAR)
        serial = mc_averaged_density(
            spec, point, noise, MonteCarloSpec(samples=50_000, workers=1), cfg
        )
        parallel = mc_averaged_density(
            spec, point, noise, MonteCarloSpec(samples=50_000, workers=4), cfg
        )
        assert serial.mean == parallel.mean
        assert serial.stderr == parallel.stderr

    def test_fixed_boundaries(self, cfg, spec):
        point = EvalPoint.from_phase(0.7, 42.0, OMEGA_BAR)
        result = mc_averaged_density(
            spec, point, NoiseModel.fixed(), MonteCarloSpec(samples=1000), cfg
        )
        assert result.mean == pytest.approx(fixed_density(spec, point, 1.0, cfg), rel=1e-12)
        assert result.stderr == pytest.approx(0.0, abs=1e-12)

    def test_resampling_of_unphysical_draws(self):
        """Draws with 1 + eps <= 0 are replaced and counted."""
        eps, rejected = montecarlo._draw_block(7, 0, BLOCK_SIZE, 0.5)
        assert rejected > 0
        assert np.all(1.0 + eps > 0.0)

    def test_rejection_rate_limit(self, cfg, spec, monkeypatch):
        """Too many unphysical draws mean sigma is out of regime."""

        def noisy_block(seed, block, size, sigma):
            return np.zeros(size), 5

        monkeypatch.setattr(montecarlo, "_draw_block", noisy_block)
        with pytest.raises(NoiseRegimeError) as exc_info:
            mc_averaged_density(
                spec, EvalPoint(0.5), NoiseModel(0.01), MonteCarloSpec(samples=1000), cfg
            )
        assert exc_info.value.rejected == 5
