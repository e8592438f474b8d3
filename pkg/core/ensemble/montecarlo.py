"""Monte-Carlo oracle for the width-averaged density.

Draws eps ~ Normal(0, sigma^2), evaluates the fixed-width density of each
realization at the lab-frame point and reports the sample mean with its
standard error. Samples are generated in fixed-size blocks; block b is
seeded from SeedSequence(seed, spawn_key=(b,)), so every sample depends
only on (seed, its index) and the output is identical for any number of
workers.
"""
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from math import sqrt
from typing import Dict, List, Tuple

import numpy as np

from core.errors import NoiseRegimeError
from core.well import EvalPoint, SuperpositionSpec, WellConfig
from core.well.eigenstates import density_at_widths

from .noise import MonteCarloSpec, NoiseModel

logger = logging.getLogger(__name__)

BLOCK_SIZE = 8192

# Tolerated fraction of draws with 1 + eps <= 0
MAX_REJECTION_RATE = 1e-6


@dataclass(frozen=True)
class MonteCarloResult:
    """Sample mean and standard error of the averaged density."""

    mean: float
    stderr: float
    samples: int
    rejected: int = 0

    def z_score(self, reference: float) -> float:
        """|mean - reference| in units of stderr (0 or inf for stderr == 0)."""
        diff = abs(self.mean - reference)
        if self.stderr > 0:
            return diff / self.stderr
        return 0.0 if diff <= 1e-9 else float("inf")

    def to_dict(self) -> Dict[str, float]:
        """Convert to dictionary."""
        return {
            "mean": self.mean,
            "stderr": self.stderr,
            "samples": self.samples,
            "rejected": self.rejected,
        }


def block_seed_sequence(seed: int, block: int) -> np.random.SeedSequence:
    """Seed material for one sample block."""
    return np.random.SeedSequence(entropy=seed, spawn_key=(block,))


def _draw_block(seed: int, block: int, size: int, sigma: float) -> Tuple[np.ndarray, int]:
    """Width fluctuations of one block, resampling unphysical draws in place."""
    rng = np.random.default_rng(block_seed_sequence(seed, block))
    eps = rng.normal(0.0, sigma, size)
    rejected = 0
    bad = 1.0 + eps <= 0.0
    while np.any(bad):
        count = int(np.count_nonzero(bad))
        rejected += count
        eps[bad] = rng.normal(0.0, sigma, count)
        bad = 1.0 + eps <= 0.0
    return eps, rejected


def _block_sizes(samples: int) -> List[int]:
    full, rest = divmod(samples, BLOCK_SIZE)
    return [BLOCK_SIZE] * full + ([rest] if rest else [])


def mc_averaged_density(
    spec: SuperpositionSpec,
    point: EvalPoint,
    noise: NoiseModel,
    mc: MonteCarloSpec,
    cfg: WellConfig,
) -> MonteCarloResult:
    """
    Monte-Carlo estimate of the averaged density at a lab-frame point.

    Args:
        spec: Superposition
        point: Lab-frame evaluation point
        noise: Width-noise model
        mc: Sample count, seed and worker count
        cfg: Unit system

    Returns:
        MonteCarloResult with mean, standard error and resampling count

    Raises:
        NoiseRegimeError: more than MAX_REJECTION_RATE of the draws had
            1 + eps <= 0
    """
    sizes = _block_sizes(mc.samples)

    def run_block(block: int) -> Tuple[np.ndarray, int]:
        eps, rejected = _draw_block(mc.seed, block, sizes[block], noise.sigma)
        widths = cfg.a_bar * (1.0 + eps)
        return np.asarray(density_at_widths(spec, point.x, point.t, widths, cfg)), rejected

    if mc.workers > 1 and len(sizes) > 1:
        logger.debug("running %d MC blocks on %d workers", len(sizes), mc.workers)
        with ThreadPoolExecutor(max_workers=mc.workers) as pool:
            results = list(pool.map(run_block, range(len(sizes))))
    else:
        results = [run_block(block) for block in range(len(sizes))]

    values = np.concatenate([values for values, _ in results])
    rejected = sum(count for _, count in results)
    if rejected > MAX_REJECTION_RATE * mc.samples:
        raise NoiseRegimeError(rejected, mc.samples, MAX_REJECTION_RATE)
    if rejected:
        logger.warning("resampled %d unphysical width draws", rejected)

    mean = float(np.mean(values))
    stderr = float(np.std(values, ddof=1) / sqrt(values.size))
    return MonteCarloResult(mean, stderr, int(values.size), rejected)
