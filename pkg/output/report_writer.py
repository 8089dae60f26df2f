"""
Report Writer - deterministic JSON and CSV emitters for command reports
"""

import csv
import io
import json
import logging
import math
import os
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Optional

import numpy as np

from app_types.report_types import CommandReport, OutputFormat
from multivector_core import Multivector, multivector_to_dict
from scalar_ring import PolyScalar, format_rational, poly_to_dict

logger = logging.getLogger(__name__)

CSV_FLOAT_FORMAT = ".17g"


def to_jsonable(value: Any) -> Any:
    """Recursively converts engine values into JSON-ready data.

    Fractions become ``"num/den"`` strings, polynomials and multivectors
    their serialization dictionaries, numpy values plain Python numbers.
    Non-finite floats are written as strings.
    """
    if isinstance(value, bool) or value is None or isinstance(value, str):
        return value
    if isinstance(value, Fraction):
        return format_rational(value)
    if isinstance(value, PolyScalar):
        return poly_to_dict(value)
    if isinstance(value, Multivector):
        return multivector_to_dict(value)
    if isinstance(value, np.bool_):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        number = float(value)
        return number if math.isfinite(number) else str(number)
    if isinstance(value, np.ndarray):
        return [to_jsonable(v) for v in value.tolist()]
    if isinstance(value, Path):
        return str(value)
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    return str(value)


def format_cell(value: Any) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, Fraction):
        return format_rational(value)
    if isinstance(value, (float, np.floating)):
        return format(float(value), CSV_FLOAT_FORMAT)
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if value is None:
        return ""
    if isinstance(value, (dict, list, tuple)):
        return json.dumps(to_jsonable(value))
    return str(value)


def flatten(data: Any, prefix: str = "") -> List[Dict[str, Any]]:
    """``{"a": {"b": 1}}`` to ``[{"key": "a.b", "value": 1}]``."""
    if isinstance(data, dict):
        rows: List[Dict[str, Any]] = []
        for key, value in data.items():
            rows += flatten(value, f"{prefix}.{key}" if prefix else str(key))
        return rows
    return [{"key": prefix, "value": data}]


class ReportWriter:
    """Writes command reports as JSON documents or CSV tables"""

    def __init__(self, output_dir: Optional[str] = None):
        self.output_dir = output_dir
        if output_dir:
            os.makedirs(output_dir, exist_ok=True)

    def render_json(self, report: CommandReport) -> str:
        return json.dumps(to_jsonable(report), indent=2) + "\n"

    def render_csv(self, report: CommandReport) -> str:
        """Row tables when the command produced rows, else the flattened report."""
        rows = report.get("rows")
        if rows is None:
            rows = flatten({"passed": report.get("passed"), "report": report.get("report", {})})
        columns: List[str] = []
        for row in rows:
            columns += [key for key in row if key not in columns]
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([format_cell(row.get(column)) for column in columns])
        return buffer.getvalue()

    def render(self, report: CommandReport, output_format: OutputFormat = "json") -> str:
        if output_format == "csv":
            return self.render_csv(report)
        return self.render_json(report)

    def write(self, report: CommandReport, output_format: OutputFormat, out: Optional[Path] = None) -> str:
        """Renders ``report`` and writes it to ``out`` (relative to the output directory) if given."""
        text = self.render(report, output_format)
        if out is not None:
            target = Path(self.output_dir) / out if self.output_dir and not Path(out).is_absolute() else Path(out)
            target.parent.mkdir(parents=True, exist_ok=True)
            target.write_text(text, encoding="utf-8")
            logger.info(f"Generated {output_format} report: {target}")
        return text
