"""Envelope fitting and cross-path comparison.

Key Components:
- Envelope: extract_envelope(), fit_gamma(), EnvelopeSample, FitResult
- Comparison: compare_paths(), density_record(), DensityRecord, ComparisonReport
"""

from .comparison import (
    ComparisonReport,
    DensityRecord,
    compare_paths,
    density_record,
    evaluate_grid,
)
from .envelope import (
    EnvelopeSample,
    FitResult,
    extract_envelope,
    extremum_times,
    fit_gamma,
)

__all__ = [
    # Envelope
    "EnvelopeSample",
    "FitResult",
    "extract_envelope",
    "extremum_times",
    "fit_gamma",
    # Comparison
    "ComparisonReport",
    "DensityRecord",
    "compare_paths",
    "density_record",
    "evaluate_grid",
]
