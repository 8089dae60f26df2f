"""Christoffel symbols by the metric and extrinsic routes, and the covariant derivative."""

import logging
from typing import Any, Callable, Dict, Optional, Sequence

import numpy as np

from exceptions import ToleranceError
from settings import settings_manager

from .charts import Chart
from .frames import FrameData, frames_at, metric_at
from .projector import projection_matrix

logger = logging.getLogger(__name__)

VectorField = Callable[[np.ndarray], np.ndarray]


def metric_derivatives(chart: Chart, x: Sequence[float], step: Optional[float] = None) -> np.ndarray:
    """``dg[k, i, j] = d_k g_ij`` by five-point central differences of the induced metric."""
    h = step if step is not None else settings_manager.get("numerics.fd_step_first", 1e-5)
    point = np.asarray(x, dtype=float)
    d = chart.dim
    out = np.zeros((d, d, d))
    for k in range(d):
        shift = np.zeros(d)
        shift[k] = h
        near = metric_at(chart, point + shift) - metric_at(chart, point - shift)
        far = metric_at(chart, point + 2 * shift) - metric_at(chart, point - 2 * shift)
        out[k] = (8 * near - far) / (12 * h)
    return out


def christoffel_metric(chart: Chart, x: Sequence[float], frame: Optional[FrameData] = None) -> np.ndarray:
    """``Gamma[i, j, k] = 1/2 g^il (d_j g_kl + d_k g_jl - d_l g_jk)``."""
    frame = frame or frames_at(chart, x)
    dg = metric_derivatives(chart, frame.point)
    # dg[a, b, c] = d_a g_bc
    combination = dg + np.einsum("kjl->jkl", dg) - np.einsum("ljk->jkl", dg)
    return 0.5 * np.einsum("il,jkl->ijk", frame.inverse_metric, combination)


def christoffel_extrinsic(chart: Chart, x: Sequence[float], frame: Optional[FrameData] = None) -> np.ndarray:
    """``Gamma[i, j, k] = (d_j xi_k) . xi^i``."""
    frame = frame or frames_at(chart, x)
    second = chart.second_partials(frame.point)
    return np.einsum("jka,ia->ijk", second, frame.reciprocal)


def christoffel(chart: Chart, x: Sequence[float], check: bool = True) -> np.ndarray:
    """Christoffel symbols ``Gamma^i_jk`` (index order ``[i, j, k]``).

    Both routes are computed; with ``check`` their disagreement and the
    metric-compatibility residual are held to ``tolerances.christoffel``.

    Raises:
        ToleranceError: If the routes disagree, which flags bad chart derivatives.
    """
    frame = frames_at(chart, x)
    extrinsic = christoffel_extrinsic(chart, x, frame)
    if not check:
        return extrinsic
    report = christoffel_report(chart, x, frame)
    tol = settings_manager.get("tolerances.christoffel", 1e-8)
    if report["agreement"] > tol:
        raise ToleranceError("Metric and extrinsic Christoffel symbols disagree", chart.name, report["agreement"], frame.point)
    if report["compatibility"] > tol:
        raise ToleranceError("Connection is not metric compatible", chart.name, report["compatibility"], frame.point)
    return extrinsic


def compatibility_residual(gamma: np.ndarray, metric: np.ndarray, dg: np.ndarray) -> float:
    """``max |d_k g_ij - Gamma^l_ki g_lj - Gamma^l_kj g_li|``."""
    lowered = np.einsum("lki,lj->kij", gamma, metric)
    residual = dg - lowered - lowered.transpose(0, 2, 1)
    return float(np.max(np.abs(residual)))


def christoffel_report(chart: Chart, x: Sequence[float], frame: Optional[FrameData] = None) -> Dict[str, float]:
    frame = frame or frames_at(chart, x)
    metric_route = christoffel_metric(chart, x, frame)
    extrinsic_route = christoffel_extrinsic(chart, x, frame)
    dg = metric_derivatives(chart, frame.point)
    return {
        "agreement": float(np.max(np.abs(metric_route - extrinsic_route))),
        "compatibility": compatibility_residual(extrinsic_route, frame.metric, dg),
        "symmetry": float(np.max(np.abs(extrinsic_route - extrinsic_route.transpose(0, 2, 1)))),
    }


def field_jacobian(field: VectorField, x: np.ndarray, step: Optional[float] = None) -> np.ndarray:
    """``J[j, i] = d_j b^i`` by central differences."""
    h = step if step is not None else settings_manager.get("numerics.fd_step_first", 1e-5)
    rows = []
    for j in range(len(x)):
        shift = np.zeros(len(x))
        shift[j] = h
        rows.append((np.asarray(field(x + shift)) - np.asarray(field(x - shift))) / (2 * h))
    return np.array(rows)


def covariant_derivative(
    chart: Chart, x: Sequence[float], direction: Sequence[float], field: VectorField
) -> Dict[str, Any]:
    """``(a . D) b`` for a tangent field ``b`` with intrinsic components ``field(x)``.

    Returns:
        ``{"components": a^j d_j b^i + Gamma^i_jk a^j b^k,
        "projected": components of P((a . d) b) computed in the ambient space,
        "residual": |components - projected|}``.
    """
    frame = frames_at(chart, x)
    a = np.asarray(direction, dtype=float)
    b = np.asarray(field(frame.point), dtype=float)
    gamma = christoffel_extrinsic(chart, x, frame)
    jac = field_jacobian(field, frame.point)
    components = a @ jac + np.einsum("ijk,j,k->i", gamma, a, b)

    def ambient(y: np.ndarray) -> np.ndarray:
        return np.asarray(field(y)) @ chart.partials(y)

    ambient_derivative = a @ field_jacobian(ambient, frame.point)
    projected = frame.pull_back(projection_matrix(frame) @ ambient_derivative)
    return {
        "components": components,
        "projected": projected,
        "residual": float(np.max(np.abs(components - projected))),
    }
