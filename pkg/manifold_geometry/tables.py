"""Per-point geometry tables over a coordinate grid."""

import logging
import math
from itertools import product
from typing import Any, Dict, List, Optional

import numpy as np

from exceptions import GeometryError
from settings import settings_manager

from .charts import Chart
from .connection import christoffel_extrinsic, christoffel_report
from .curvature import curvature
from .frames import frames_at

logger = logging.getLogger(__name__)

GRID_MARGIN = 1e-3


def grid_points(chart: Chart, grid: int, margin: float = GRID_MARGIN) -> np.ndarray:
    """Tensor grid of ``grid`` points per axis, kept ``margin`` inside finite domain sides."""
    if grid < 1:
        raise GeometryError(f"Grid size must be positive, got {grid}", chart.name)
    axes = []
    for low, high in zip(chart.lows, chart.highs):
        low = low + margin if math.isfinite(low) else -1.0
        high = high - margin if math.isfinite(high) else 1.0
        axes.append(np.linspace(low, high, grid) if grid > 1 else np.array([(low + high) / 2]))
    return np.array(list(product(*axes)))


def geometry_row(chart: Chart, x: np.ndarray) -> Dict[str, Any]:
    """Coordinates, ``g_ij`` (``i <= j``), ``Gamma^i_jk`` (``j <= k``), ``K`` and residuals at ``x``."""
    names = chart.coordinate_names
    frame = frames_at(chart, x)
    gamma = christoffel_extrinsic(chart, frame.point, frame)
    row: Dict[str, Any] = {name: float(v) for name, v in zip(names, frame.point)}
    d = chart.dim
    for i in range(d):
        for j in range(i, d):
            row[f"g_{names[i]}_{names[j]}"] = float(frame.metric[i, j])
    for i in range(d):
        for j in range(d):
            for k in range(j, d):
                row[f"Gamma_{names[i]}_{names[j]}_{names[k]}"] = float(gamma[i, j, k])
    report = curvature(chart, frame.point, check=False)
    if d == 2:
        row["K"] = report.gaussian
    row["ricci_scalar"] = report.scalar
    connection = christoffel_report(chart, frame.point, frame)
    row["christoffel_agreement"] = connection["agreement"]
    row["compatibility"] = connection["compatibility"]
    row["cartan_residual"] = report.cartan_residual
    row["ricci_identity_residual"] = report.ricci_identity_residual
    row["bianchi_residual"] = report.bianchi_residual
    return row


def geometry_table(chart: Chart, grid: int = 20, margin: float = GRID_MARGIN) -> List[Dict[str, Any]]:
    rows = [geometry_row(chart, x) for x in grid_points(chart, grid, margin)]
    logger.info(f"Geometry table for {chart.name}: {len(rows)} rows")
    return rows


def table_failures(
    rows: List[Dict[str, Any]], expected_curvature: Optional[float] = None, dim: int = 2
) -> List[Dict[str, Any]]:
    """Rows whose residuals exceed the configured tolerances.

    A constant sectional curvature ``K`` is checked against the ``K`` column on
    surfaces and against ``ricci_scalar = d (d - 1) K`` otherwise.
    """
    christoffel_tol = settings_manager.get("tolerances.christoffel", 1e-8)
    curvature_tol = settings_manager.get("tolerances.curvature", 1e-6)
    limits = {
        "christoffel_agreement": christoffel_tol,
        "compatibility": christoffel_tol,
        "cartan_residual": curvature_tol,
        "ricci_identity_residual": curvature_tol,
        "bianchi_residual": curvature_tol,
    }
    failures = []
    for index, row in enumerate(rows):
        for column, limit in limits.items():
            if row[column] > limit:
                failures.append({"row": index, "check": column, "residual": row[column], "tolerance": limit})
        if expected_curvature is None:
            continue
        column = "K" if "K" in row else "ricci_scalar"
        target = expected_curvature if column == "K" else dim * (dim - 1) * expected_curvature
        error = abs(row[column] - target)
        if error > curvature_tol:
            failures.append({"row": index, "check": column, "residual": error, "tolerance": curvature_tol})
    return failures
