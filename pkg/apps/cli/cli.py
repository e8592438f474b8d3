#!/usr/bin/env python3
"""
fluctwell CLI - decoherence of a particle in a box with fluctuating walls.

Every subcommand reads a RunConfig (defaults < --config < FLUCTWELL_SEED <
flags) and writes a dataset or report to --output or stdout. With no
arguments, `fluctwell evolve` emits the x/a_bar = 0.7, sigma = 0.01 time
series.
"""
import argparse
import logging
import sys
from pathlib import Path
from typing import Any, Dict, List, NoReturn, Optional

from core.analysis import compare_paths, density_record, extract_envelope, fit_gamma
from core.closed_form import (
    boundary_width_estimate,
    decay_parameters,
    sigma_from_boundary_width,
    suppression_time,
    time_from_phase,
)
from core.ensemble import NoiseModel
from core.errors import (
    ConfigValidationError,
    ConvergenceError,
    DomainError,
    NumericalConsistencyError,
)
from core.exporters import EVOLVE_COLUMNS, PROFILE_COLUMNS, DatasetExporter, records_payload
from core.well import EvalPoint, UnitMode

from .run_config import OutputFormat, RunConfig, resolve_run_config

logger = logging.getLogger(__name__)

SCHEMA_VERSION = 1

# w_bar t at which the interference counts as fully suppressed
SUPPRESSION_OMEGA_T = 200.0
# Envelope fraction defining the threshold suppression time
SUPPRESSION_FRACTION = 1e-3


def _float_list(text: str) -> List[float]:
    """Parse '0.2,0.5,0.7' into floats."""
    try:
        return [float(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")


# Flag dest -> dotted config path
FLAG_PATHS = {
    "sigma": "noise.sigma",
    "x_over_abar": "x_over_abar",
    "x_points": "x_points",
    "omega_t_start": "omega_t.start",
    "omega_t_max": "omega_t.stop",
    "steps": "omega_t.steps",
    "omega_t_points": "omega_t_points",
    "quad_nodes": "quadrature.nodes",
    "mc_samples": "monte_carlo.samples",
    "seed": "monte_carlo.seed",
    "workers": "monte_carlo.workers",
    "k_max": "envelope.k_max",
    "tolerance": "compare.tolerance",
    "a_bar": "well.a_bar",
    "particle_mass": "well.mass",
    "wall_mass_amu": "boundary.mass_amu",
    "wall_omega0": "boundary.omega0",
    "format": "format",
    "output": "output",
}


def load_run_config(args: argparse.Namespace) -> RunConfig:
    """Build the RunConfig for a parsed command line."""
    overrides: Dict[str, Any] = {
        path: getattr(args, dest, None) for dest, path in FLAG_PATHS.items()
    }
    if getattr(args, "physical", False):
        overrides["well.unit_mode"] = UnitMode.PHYSICAL.value
    if getattr(args, "no_mc", False):
        overrides["monte_carlo.enabled"] = False
    config_path = Path(args.config) if getattr(args, "config", None) else None
    return resolve_run_config(config_path, overrides)


def _single_x(config: RunConfig, command: str) -> float:
    grid = config.x_grid()
    if len(grid) != 1:
        raise ConfigValidationError(
            "x_over_abar", f"{command} needs a single position, got {len(grid)}"
        )
    return grid[0]


def _emit_report(config: RunConfig, payload: Dict[str, Any]) -> None:
    DatasetExporter(config.cfg.a_bar).export_json(payload, config.output_path)


# ============================================================================
# Datasets
# ============================================================================

def cmd_evolve(args: argparse.Namespace) -> int:
    """
    Time series of the averaged density at one position.

    Usage: fluctwell evolve [--x-over-abar 0.7] [--sigma 0.01] [--steps 601]
    """
    config = load_run_config(args)
    x = _single_x(config, "evolve") * config.cfg.a_bar
    omega_bar = decay_parameters(config.spec, config.noise, config.cfg).omega_bar

    records = [
        density_record(
            config.spec,
            EvalPoint.from_phase(x, omega_t, omega_bar),
            config.noise,
            config.quad,
            config.monte_carlo,
            config.cfg,
            omega_t=omega_t,
        )
        for omega_t in config.omega_t_grid()
    ]
    logger.info("evolve: %d time steps at x/a_bar=%g", len(records), x / config.cfg.a_bar)

    exporter = DatasetExporter(config.cfg.a_bar)
    if config.format is OutputFormat.JSON:
        payload = records_payload(records, EVOLVE_COLUMNS, config.cfg.a_bar)
        payload["config"] = config.to_dict()
        exporter.export_json(payload, config.output_path)
    else:
        exporter.export_csv(records, EVOLVE_COLUMNS, config.output_path)
    return 0


def cmd_profile(args: argparse.Namespace) -> int:
    """
    Spatial snapshot of the averaged density at w_bar t = --omega-t-max.

    Usage: fluctwell profile --x-points 99 [--omega-t-max 300]
    """
    config = load_run_config(args)
    omega_t = config.snapshot_omega_t
    omega_bar = decay_parameters(config.spec, config.noise, config.cfg).omega_bar
    a_bar = config.cfg.a_bar

    records = [
        density_record(
            config.spec,
            EvalPoint.from_phase(x_over_abar * a_bar, omega_t, omega_bar),
            config.noise,
            config.quad,
            config.monte_carlo,
            config.cfg,
            omega_t=omega_t,
        )
        for x_over_abar in config.x_grid()
    ]
    logger.info("profile: %d positions at omega_t=%g", len(records), omega_t)

    exporter = DatasetExporter(a_bar)
    if config.format is OutputFormat.JSON:
        payload = records_payload(records, PROFILE_COLUMNS, a_bar)
        payload["config"] = config.to_dict()
        exporter.export_json(payload, config.output_path)
    else:
        exporter.export_csv(records, PROFILE_COLUMNS, config.output_path)
    return 0


# ============================================================================
# Reports
# ============================================================================

def cmd_envelope(args: argparse.Namespace) -> int:
    """
    Sample the interference envelope and fit Gamma.

    Usage: fluctwell envelope [--x-over-abar 0.7] [--k-max 47]
    """
    config = load_run_config(args)
    x_over_abar = _single_x(config, "envelope")
    params = decay_parameters(config.spec, config.noise, config.cfg)

    samples = extract_envelope(
        config.spec,
        x_over_abar * config.cfg.a_bar,
        config.noise,
        config.quad,
        config.cfg,
        config.k_max,
    )
    fit = fit_gamma(samples)
    ratio = fit.gamma_fit / params.gamma if params.gamma > 0 else None
    logger.info("envelope: gamma_fit=%.6g predicted=%.6g", fit.gamma_fit, params.gamma)

    _emit_report(
        config,
        {
            "schema_version": SCHEMA_VERSION,
            "command": "envelope",
            "x_over_abar": x_over_abar,
            "sigma": config.noise.sigma,
            "samples": [s.to_dict() for s in samples],
            "fit": fit.to_dict(),
            "gamma_predicted": params.gamma,
            "ratio": ratio,
            "omega_bar": params.omega_bar,
            "t_onset": params.t_onset,
            "t_decay": params.t_decay,
        },
    )
    return 0


def cmd_timescales(args: argparse.Namespace) -> int:
    """
    Decoherence timescales, optionally with sigma from a wall oscillator.

    Usage: fluctwell timescales --physical [--wall-mass-amu 30 --wall-omega0 1e15]
    """
    config = load_run_config(args)
    cfg = config.cfg
    params = decay_parameters(config.spec, config.noise, cfg)
    report: Dict[str, Any] = {
        "schema_version": SCHEMA_VERSION,
        "command": "timescales",
        "unit_mode": cfg.unit_mode.value,
        "well": cfg.to_dict(),
        **params.to_dict(),
        "suppression": {
            "omega_t": SUPPRESSION_OMEGA_T,
            "time": time_from_phase(SUPPRESSION_OMEGA_T, params),
        },
        "suppression_threshold": {
            "fraction": SUPPRESSION_FRACTION,
            "time": suppression_time(params, 1.0, SUPPRESSION_FRACTION),
        },
    }

    if config.boundary is not None:
        if cfg.unit_mode is not UnitMode.PHYSICAL:
            raise ConfigValidationError("boundary", "needs well.unit_mode = physical")
        delta_x = boundary_width_estimate(config.boundary.mass, config.boundary.omega0, cfg)
        sigma = sigma_from_boundary_width(delta_x, cfg)
        wall_params = decay_parameters(config.spec, NoiseModel(sigma), cfg)
        report["boundary"] = {
            **config.boundary.to_dict(),
            "delta_x": delta_x,
            "sigma": sigma,
            "gamma": wall_params.gamma,
            "t_decay": wall_params.t_decay,
        }

    _emit_report(config, report)
    return 0


def cmd_compare(args: argparse.Namespace) -> int:
    """
    Exact vs closed-form vs Monte-Carlo over an x / w_bar t grid.

    Usage: fluctwell compare --x-over-abar 0.2,0.5,0.7 --omega-t-points 0,10,50,100,200
    """
    config = load_run_config(args)
    omega_bar = decay_parameters(config.spec, config.noise, config.cfg).omega_bar
    grid = [
        EvalPoint.from_phase(x_over_abar * config.cfg.a_bar, omega_t, omega_bar)
        for x_over_abar in config.x_grid()
        for omega_t in config.omega_t_grid()
    ]
    report = compare_paths(
        config.spec,
        grid,
        config.noise,
        config.quad,
        config.monte_carlo,
        config.cfg,
        tolerance=config.tolerance,
        workers=config.mc.workers,
    )
    payload = report.to_dict()
    payload["command"] = "compare"
    _emit_report(config, payload)
    return 0


# ============================================================================
# Entry point
# ============================================================================

class FluctwellArgumentParser(argparse.ArgumentParser):
    """ArgumentParser whose usage errors exit with the validation code (1)."""

    def error(self, message: str) -> NoReturn:
        self.print_usage(sys.stderr)
        self.exit(1, f"Error: {message}\n")


def build_parser() -> FluctwellArgumentParser:
    """Argument parser with one subparser per command."""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", "-c", help="YAML or JSON run configuration")
    common.add_argument("--sigma", type=float, help="Relative width fluctuation (0 to 0.05)")
    common.add_argument("--x-over-abar", type=_float_list, help="Position(s), comma-separated")
    common.add_argument("--x-points", type=int, help="Use N interior positions k/(N+1)")
    common.add_argument("--omega-t-start", type=float, help="First w_bar t of the range")
    common.add_argument("--omega-t-max", type=float, help="Last w_bar t (profile snapshot time)")
    common.add_argument("--steps", type=int, help="Number of w_bar t values in the range")
    common.add_argument("--omega-t-points", type=_float_list, help="Explicit w_bar t values")
    common.add_argument("--quad-nodes", type=int, help="Initial quadrature node count")
    common.add_argument("--mc-samples", type=int, help="Monte-Carlo samples per point")
    common.add_argument("--no-mc", action="store_true", help="Skip the Monte-Carlo path")
    common.add_argument("--seed", type=int, help="Monte-Carlo seed")
    common.add_argument("--workers", type=int, help="Worker threads")
    common.add_argument("--k-max", type=int, help="Last envelope extremum index")
    common.add_argument("--tolerance", type=float, help="Tolerance on max |exact - approx|")
    common.add_argument("--physical", action="store_true", help="SI units (electron, 1 Angstrom)")
    common.add_argument("--a-bar", type=float, help="Mean well width (m, physical mode)")
    common.add_argument("--particle-mass", type=float, help="Particle mass (kg, physical mode)")
    common.add_argument("--wall-mass-amu", type=float, help="Wall mass in amu")
    common.add_argument("--wall-omega0", type=float, help="Wall oscillator frequency (1/s)")
    common.add_argument("--format", choices=[f.value for f in OutputFormat], help="Dataset format")
    common.add_argument("--output", "-o", help="Output file (default stdout)")
    common.add_argument("--verbose", "-v", action="store_true", help="Debug logging on stderr")

    parser = FluctwellArgumentParser(
        prog="fluctwell",
        description="fluctwell - decoherence from fluctuating well boundaries",
    )
    subparsers = parser.add_subparsers(dest="command", help="Commands")

    p_evolve = subparsers.add_parser("evolve", parents=[common], help="Density time series")
    p_evolve.set_defaults(func=cmd_evolve)

    p_profile = subparsers.add_parser("profile", parents=[common], help="Density vs position")
    p_profile.set_defaults(func=cmd_profile)

    p_envelope = subparsers.add_parser("envelope", parents=[common], help="Fit the decay rate")
    p_envelope.set_defaults(func=cmd_envelope)

    p_times = subparsers.add_parser("timescales", parents=[common], help="Onset/decay times")
    p_times.set_defaults(func=cmd_timescales)

    p_compare = subparsers.add_parser("compare", parents=[common], help="Cross-check all paths")
    p_compare.set_defaults(func=cmd_compare)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """Main CLI entry point."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # --help exits 0, usage errors 1
        return exc.code if isinstance(exc.code, int) else 1

    if not args.command:
        parser.print_help()
        return 0

    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s",
    )

    try:
        return args.func(args)
    except DomainError as exc:
        print(f"Error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"Error: {exc}", file=sys.stderr)
        return 2
    except (ConvergenceError, NumericalConsistencyError) as exc:
        print(f"Error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
