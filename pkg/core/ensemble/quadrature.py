"""Quadrature of Gaussian expectations <G> = integral G(eps) f(eps) d eps.

Gauss-Hermite after the substitution eps = u / sqrt(theta), with the node
count doubled until two successive estimates agree. Integrands of the
averaging path are hard-zeroed where the lab-frame point lies outside a
realization's well; when that cut falls inside the Gaussian bulk the
integral is taken over the remaining half-line with Gauss-Legendre so the
kink sits on an endpoint instead of between nodes.
"""
import logging
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from math import pi, sqrt
from typing import Callable, Optional, Tuple, Union

import numpy as np
from numpy.polynomial.hermite import hermgauss
from numpy.polynomial.legendre import leggauss

from core.errors import ConvergenceError

from .noise import NoiseModel, QuadratureSpec

logger = logging.getLogger(__name__)

Integrand = Callable[[np.ndarray], np.ndarray]
Scalar = Union[float, complex]

# |u| beyond which the Gaussian weight exp(-u^2) is below 1e-43
TAIL_CUTOFF = 10.0


class QuadratureRule(Enum):
    """Which rule produced a QuadratureResult."""

    HERMITE = "gauss-hermite"
    LEGENDRE = "gauss-legendre"  # truncated support
    DEGENERATE = "degenerate"  # fixed boundaries, G(0)


@dataclass(frozen=True)
class QuadratureResult:
    """An expectation together with its convergence evidence."""

    value: Scalar
    previous: Scalar  # estimate with half the nodes
    nodes: int
    converged: bool
    rule: QuadratureRule

    @property
    def error_estimate(self) -> float:
        return abs(self.value - self.previous)

    @property
    def real(self) -> float:
        return float(np.real(self.value))


@lru_cache(maxsize=None)
def _hermite_rule(nodes: int) -> Tuple[np.ndarray, np.ndarray]:
    """Nodes and weights normalized so that sum(w) == 1."""
    u, w = hermgauss(nodes)
    w = w / sqrt(pi)
    u.setflags(write=False)
    w.setflags(write=False)
    return u, w


@lru_cache(maxsize=None)
def _legendre_rule(nodes: int) -> Tuple[np.ndarray, np.ndarray]:
    z, w = leggauss(nodes)
    z.setflags(write=False)
    w.setflags(write=False)
    return z, w


def _apply_rule(
    G: Integrand,
    nodes: int,
    root_theta: float,
    u_min: Optional[float],
) -> Tuple[Scalar, float]:
    """One quadrature pass; returns (estimate, estimate of integral of |G| f)."""
    if u_min is None:
        u, w = _hermite_rule(nodes)
    else:
        z, wz = _legendre_rule(nodes)
        half = 0.5 * (TAIL_CUTOFF - u_min)
        u = half * z + (TAIL_CUTOFF + u_min) * 0.5
        w = half * wz * np.exp(-np.square(u)) / sqrt(pi)
    values = np.asarray(G(u / root_theta))
    estimate = np.sum(w * values)
    scale = float(np.sum(w * np.abs(values)))
    if np.iscomplexobj(values):
        return complex(estimate), scale
    return float(estimate), scale


def expectation(
    G: Integrand,
    noise: NoiseModel,
    quad: QuadratureSpec,
    support_min: Optional[float] = None,
    strict: bool = True,
    context: Optional[str] = None,
) -> QuadratureResult:
    """
    Gaussian expectation of G over the width-fluctuation parameter.

    Args:
        G: Vectorized integrand, called with an array of eps values. May be
           real or complex.
        noise: Width-noise model
        quad: Node count and convergence tolerance
        support_min: G vanishes identically for eps < support_min
        strict: Raise ConvergenceError on failure instead of returning an
                unconverged result
        context: Label used in log and error messages

    Returns:
        QuadratureResult; converged is True unless strict is False and the
        node budget ran out.

    Two estimates agree when |I_N - I_{N/2}| <= rtol * max(|I_N|, S_N),
    S_N being the same rule applied to |G|.
    """
    if noise.is_fixed:
        value = np.asarray(G(np.zeros(1)))[0]
        value = complex(value) if np.iscomplexobj(value) else float(value)
        return QuadratureResult(value, value, 1, True, QuadratureRule.DEGENERATE)

    root_theta = sqrt(noise.theta)
    u_min: Optional[float] = None
    rule = QuadratureRule.HERMITE
    if support_min is not None and support_min * root_theta > -TAIL_CUTOFF:
        u_min = support_min * root_theta
        rule = QuadratureRule.LEGENDRE
        if u_min >= TAIL_CUTOFF:
            # all of the Gaussian mass lies where G vanishes
            zero: Scalar = 0j if np.iscomplexobj(G(np.zeros(1))) else 0.0
            return QuadratureResult(zero, zero, 0, True, rule)

    nodes = quad.nodes
    previous, _ = _apply_rule(G, nodes // 2, root_theta, u_min)
    for attempt in range(quad.max_doublings + 1):
        estimate, scale = _apply_rule(G, nodes, root_theta, u_min)
        tolerance = quad.convergence_rtol * max(abs(estimate), scale)
        if abs(estimate - previous) <= tolerance:
            if attempt:
                logger.debug(
                    "%s converged at %d nodes (%s)", context or "expectation", nodes, rule.value
                )
            return QuadratureResult(estimate, previous, nodes, True, rule)
        if attempt == quad.max_doublings:
            break
        logger.debug(
            "%s: %d vs %d nodes differ by %.3e, doubling",
            context or "expectation",
            nodes,
            nodes // 2,
            abs(estimate - previous),
        )
        previous = estimate
        nodes *= 2

    if strict:
        raise ConvergenceError(
            estimate, previous, nodes, nodes // 2, quad.convergence_rtol, context
        )
    logger.warning(
        "%s not converged at %d nodes (difference %.3e); keeping last estimate",
        context or "expectation",
        nodes,
        abs(estimate - previous),
    )
    return QuadratureResult(estimate, previous, nodes, False, rule)
