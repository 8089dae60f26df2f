"""``geometry``: per-point metric, connection and curvature tables of a chart."""

from typing import Any, Dict, List, Optional

import numpy as np

from app_types.report_types import CommandReport, Failure
from exceptions import InputSpecError
from manifold_geometry import Chart, geometry_table, load_chart, table_failures, torus_gaussian_curvature
from settings import settings_manager

from . import BaseCommand
from .run_config import RunConfig

FLAT_FAMILIES = ("plane", "cylinder", "cotangent")


def expected_curvature(chart: Chart) -> Optional[float]:
    """Constant Gaussian curvature of the built-in families, ``None`` if it varies."""
    if "radius" in chart.parameters and chart.name.startswith("sphere"):
        return 1.0 / chart.parameters["radius"] ** 2
    if chart.name.startswith(FLAT_FAMILIES):
        return 0.0
    return None


def torus_failures(chart: Chart, rows: List[Dict[str, Any]]) -> List[Dict[str, Any]]:
    tol = settings_manager.get("tolerances.curvature", 1e-6)
    names = chart.coordinate_names
    failures = []
    for index, row in enumerate(rows):
        x = np.array([row[name] for name in names])
        error = abs(row["K"] - torus_gaussian_curvature(chart, x))
        if error > tol:
            failures.append({"row": index, "check": "K", "residual": error, "tolerance": tol})
    return failures


def geometry_report(chart: Chart, grid: int) -> Dict[str, Any]:
    rows = geometry_table(chart, grid)
    expected = expected_curvature(chart)
    failures = table_failures(rows, expected, chart.dim)
    if chart.name.startswith("torus"):
        failures += torus_failures(chart, rows)
    return {
        "chart": chart.name,
        "dim": chart.dim,
        "grid": grid,
        "points": len(rows),
        "expected_curvature": expected,
        "rows": rows,
        "failures": failures,
    }


class GeometryCommand(BaseCommand):
    """Command for geometry tables on a grid"""

    def __init__(self):
        super().__init__(name="geometry", description="Emits per-point geometry tables with residual columns")
        self.parameters = {
            "input": "path",  # Chart spec JSON
            "parameters": "dict",  # {"family": ..., "parameters": {...}} when no input is given
            "grid": "int",  # Points per axis
        }

    def execute(self, config: RunConfig) -> CommandReport:
        source: Any = config.input if config.input is not None else config.parameters
        if not source:
            raise InputSpecError("geometry needs a chart spec (--input or --chart)", "geometry")
        chart = load_chart(source)
        result = geometry_report(chart, config.grid)
        rows = result.pop("rows")
        table = result.pop("failures")
        failures: List[Failure] = [
            {
                "check": f"row{f['row']}:{f['check']}",
                "message": f"{f['check']} residual above tolerance at row {f['row']}",
                "value": f["residual"],
                "tolerance": f["tolerance"],
            }
            for f in table
        ]
        self.logger.info(f"{chart.name}: {len(rows)} rows, {len(failures)} failures")
        return self.build_report(config, result, failures, rows)
