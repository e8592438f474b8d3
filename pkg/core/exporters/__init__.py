"""Exporters package for fluctwell datasets."""
from .dataset_writer import (
    EVOLVE_COLUMNS,
    PROFILE_COLUMNS,
    DatasetExporter,
    export_records_csv,
    export_report_json,
    format_float,
    records_payload,
)

__all__ = [
    "EVOLVE_COLUMNS",
    "PROFILE_COLUMNS",
    "DatasetExporter",
    "export_records_csv",
    "export_report_json",
    "format_float",
    "records_payload",
]
