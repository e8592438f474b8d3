"""Dataset export for the command-line front end.

Writes DensityRecord series as CSV and reports as JSON. Output is
bit-stable: CSV floats carry 17 significant digits, JSON floats use the
shortest round-trip repr, keys are sorted and line endings are LF.
"""
import csv
import json
import math
import sys
from pathlib import Path
from typing import IO, Any, Dict, Iterable, List, Optional, Sequence

import numpy as np

from core.analysis import DensityRecord

# Time-series columns (evolve)
EVOLVE_COLUMNS = [
    "omega_t",
    "exact",
    "approx",
    "mc_mean",
    "mc_stderr",
    "interference_exact",
    "envelope_predicted",
]

# Spatial snapshot columns (profile)
PROFILE_COLUMNS = ["x_over_abar"] + EVOLVE_COLUMNS


def format_float(value: float) -> str:
    """17 significant digits, enough to round-trip any 64-bit float."""
    return format(value, ".17g")


def _sanitize(value: Any) -> Any:
    """Plain Python scalars for the JSON encoder; non-finite floats become None."""
    if isinstance(value, np.generic):
        value = value.item()
    if isinstance(value, float) and not math.isfinite(value):
        return None
    if isinstance(value, dict):
        return {key: _sanitize(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [_sanitize(item) for item in value]
    return value


class DatasetExporter:
    """Exports density records to CSV and reports to JSON.

    A None output path writes to stdout.
    """

    def __init__(self, a_bar: float = 1.0) -> None:
        """
        Args:
            a_bar: Mean width used to express x as x / a_bar in profiles
        """
        self.a_bar = a_bar

    def record_row(self, record: DensityRecord, columns: Sequence[str]) -> Dict[str, str]:
        """One CSV row for the given column set."""
        values = {
            "x_over_abar": record.x / self.a_bar,
            "omega_t": record.omega_t,
            "exact": record.exact,
            "approx": record.approx,
            "mc_mean": record.mc_mean,
            "mc_stderr": record.mc_stderr,
            "interference_exact": record.interference_exact,
            "envelope_predicted": record.envelope_predicted,
        }
        # Monte-Carlo columns stay empty when the oracle is off
        return {
            column: "" if math.isnan(values[column]) else format_float(values[column])
            for column in columns
        }

    def write_csv(
        self, records: Iterable[DensityRecord], columns: Sequence[str], stream: IO[str]
    ) -> None:
        """Write header and rows to an open text stream."""
        writer = csv.DictWriter(stream, fieldnames=list(columns), lineterminator="\n")
        writer.writeheader()
        for record in records:
            writer.writerow(self.record_row(record, columns))

    def export_csv(
        self,
        records: Iterable[DensityRecord],
        columns: Sequence[str],
        output_path: Optional[Path] = None,
    ) -> None:
        """Export records to a CSV file (stdout when output_path is None).

        Args:
            records: DensityRecords in output order
            columns: EVOLVE_COLUMNS or PROFILE_COLUMNS
            output_path: Destination file
        """
        if output_path is None:
            self.write_csv(records, columns, sys.stdout)
            return
        output_path.parent.mkdir(parents=True, exist_ok=True)
        with open(output_path, "w", newline="", encoding="utf-8") as f:
            self.write_csv(records, columns, f)

    def render_json(self, payload: Dict[str, Any]) -> str:
        """Serialized report, sorted keys, two-space indent, trailing LF."""
        text = json.dumps(_sanitize(payload), indent=2, sort_keys=True, allow_nan=False)
        return text + "\n"

    def export_json(
        self, payload: Dict[str, Any], output_path: Optional[Path] = None
    ) -> None:
        """Export a report dictionary as JSON (stdout when output_path is None)."""
        text = self.render_json(payload)
        if output_path is None:
            sys.stdout.write(text)
            return
        output_path.parent.mkdir(parents=True, exist_ok=True)
        with open(output_path, "w", newline="", encoding="utf-8") as f:
            f.write(text)


def records_payload(
    records: Sequence[DensityRecord], columns: Sequence[str], a_bar: float = 1.0
) -> Dict[str, Any]:
    """JSON form of a record series: same columns as the CSV, plus schema_version."""
    rows: List[Dict[str, Any]] = []
    for record in records:
        data = record.to_dict()
        data["x_over_abar"] = record.x / a_bar
        rows.append({column: data[column] for column in columns})
    return {"schema_version": 1, "columns": list(columns), "records": rows}


def export_records_csv(
    records: Iterable[DensityRecord],
    columns: Sequence[str],
    output_path: Optional[Path] = None,
    a_bar: float = 1.0,
) -> None:
    """Convenience function to export records to CSV."""
    DatasetExporter(a_bar).export_csv(records, columns, output_path)


def export_report_json(payload: Dict[str, Any], output_path: Optional[Path] = None) -> None:
    """Convenience function to export a report to JSON."""
    DatasetExporter().export_json(payload, output_path)
