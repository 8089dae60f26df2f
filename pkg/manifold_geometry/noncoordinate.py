"""Non-coordinate frames ``theta_r = theta_r^i xi_i``: structure constants, connection, torsion, Cartan equations."""

import logging
import math
from dataclasses import dataclass
from typing import Any, Callable, Dict, Optional, Sequence

import numpy as np

from exceptions import GeometryError, ToleranceError
from settings import settings_manager

from .charts import Chart
from .frames import frames_at, metric_at
from .projector import projection_matrix

logger = logging.getLogger(__name__)

FrameField = Callable[[np.ndarray], np.ndarray]


@dataclass
class NonCoordinateReport:
    """Frame quantities at one point; index order ``[t, r, s]`` for ``X^t_rs``."""

    chart: str
    point: np.ndarray
    coefficients: np.ndarray
    structure_constants: np.ndarray
    connection: np.ndarray
    connection_extrinsic: np.ndarray
    torsion: np.ndarray
    maurer_cartan_residual: float
    second_cartan_residual: float

    @property
    def agreement(self) -> float:
        return float(np.max(np.abs(self.connection - self.connection_extrinsic)))

    @property
    def torsion_residual(self) -> float:
        return float(np.max(np.abs(self.torsion)))

    def to_dict(self) -> Dict[str, Any]:
        return {
            "chart": self.chart,
            "point": self.point.tolist(),
            "structure_constants": self.structure_constants.tolist(),
            "connection": self.connection.tolist(),
            "agreement": self.agreement,
            "torsion_residual": self.torsion_residual,
            "maurer_cartan_residual": self.maurer_cartan_residual,
            "second_cartan_residual": self.second_cartan_residual,
        }


def coordinate_frame(chart: Chart) -> FrameField:
    identity = np.eye(chart.dim)
    return lambda x: identity.copy()


def sphere_orthonormal_frame(chart: Chart) -> FrameField:
    """``theta_1 = xi_theta / R``, ``theta_2 = xi_phi / (R sin theta)`` on a sphere chart."""
    radius = chart.parameters.get("radius", 1.0)
    return lambda x: np.array([[1.0 / radius, 0.0], [0.0, 1.0 / (radius * math.sin(x[0]))]])


def _derivatives(function: Callable[[np.ndarray], np.ndarray], x: np.ndarray, h: float) -> np.ndarray:
    """``out[m] = d_m function`` by central differences."""
    rows = []
    for m in range(len(x)):
        shift = np.zeros(len(x))
        shift[m] = h
        rows.append((np.asarray(function(x + shift)) - np.asarray(function(x - shift))) / (2 * h))
    return np.array(rows)


def _coframe(theta: FrameField) -> Callable[[np.ndarray], np.ndarray]:
    """``Theta[t, j]`` with ``Theta[t, j] theta_r^j = delta``."""
    return lambda y: np.linalg.inv(np.asarray(theta(y), dtype=float)).T


def noncoordinate_frame(chart: Chart, x: Sequence[float], theta: FrameField, check: bool = False) -> NonCoordinateReport:
    """Frame report for ``theta`` (row ``r`` holds ``theta_r^i``) at ``x``.

    Raises:
        GeometryError: If ``theta`` is singular at ``x``.
        ToleranceError: If ``check`` is set and torsion or a Cartan residual exceeds tolerance.
    """
    frame = frames_at(chart, x)
    point = frame.point
    h = settings_manager.get("numerics.fd_step_first", 1e-5)
    m = np.asarray(theta(point), dtype=float)
    if m.shape != (chart.dim, chart.dim) or abs(np.linalg.det(m)) < 1e-14:
        raise GeometryError("Non-coordinate frame coefficients are singular", chart.name, point)
    coframe = np.linalg.inv(m).T
    dm = _derivatives(theta, point, h)

    # [theta_r, theta_s]^j = theta_r^i d_i theta_s^j - theta_s^i d_i theta_r^j
    bracket = np.einsum("ri,isj->rsj", m, dm)
    bracket = bracket - bracket.transpose(1, 0, 2)
    structure = np.einsum("rsj,tj->trs", bracket, coframe)

    def frame_metric(y: np.ndarray) -> np.ndarray:
        my = np.asarray(theta(y), dtype=float)
        return my @ metric_at(chart, y) @ my.T

    g_frame = frame_metric(point)
    g_frame_inverse = np.linalg.inv(g_frame)
    # dg[r, s, t] = theta_r(g_st)
    dg = np.einsum("ri,ist->rst", m, _derivatives(frame_metric, point, h))
    lowered_c = np.einsum("tu,urs->trs", g_frame, structure)
    koszul = 0.5 * (
        np.einsum("rst->trs", dg)
        + np.einsum("srt->trs", dg)
        - dg
        + lowered_c
        - np.einsum("srt->trs", lowered_c)
        - np.einsum("rst->trs", lowered_c)
    )
    connection = np.einsum("ut,trs->urs", g_frame_inverse, koszul)

    second = chart.second_partials(point)
    ambient_coframe = coframe @ frame.reciprocal
    derivative = np.einsum("ri,isj,ja->rsa", m, dm, frame.tangent) + np.einsum("ri,sk,ika->rsa", m, m, second)
    extrinsic = np.einsum("rsa,ta->trs", derivative, ambient_coframe)

    # T(theta_r, theta_s) from ambient differences of E_s = theta_s^j xi_j, without the chart's second partials
    def ambient_frame(y: np.ndarray) -> np.ndarray:
        return np.asarray(theta(y), dtype=float) @ chart.partials(y)

    ambient = np.einsum("ri,isa->rsa", m, _derivatives(ambient_frame, point, h))
    tangential = (ambient - ambient.transpose(1, 0, 2)) @ projection_matrix(frame)
    torsion = np.einsum("rsa,ta->trs", tangential, ambient_coframe) - structure

    dcoframe = _derivatives(_coframe(theta), point, h)
    # d theta^t (theta_v, theta_w) = theta_v^i theta_w^j (d_i Theta_tj - d_j Theta_ti)
    exterior = np.einsum("vi,wj,itj->tvw", m, m, dcoframe) - np.einsum("vi,wj,jti->tvw", m, m, dcoframe)
    maurer_cartan = float(np.max(np.abs(exterior + structure)))
    second_cartan = float(np.max(np.abs(exterior + extrinsic - extrinsic.transpose(0, 2, 1) - torsion)))

    report = NonCoordinateReport(
        chart=chart.name,
        point=point,
        coefficients=m,
        structure_constants=structure,
        connection=connection,
        connection_extrinsic=extrinsic,
        torsion=torsion,
        maurer_cartan_residual=maurer_cartan,
        second_cartan_residual=second_cartan,
    )
    if check:
        _check(report, chart)
    return report


def _check(report: NonCoordinateReport, chart: Chart) -> None:
    tol = settings_manager.get("tolerances.christoffel", 1e-8)
    if report.agreement > tol:
        raise ToleranceError("Frame connection disagrees with the extrinsic route", chart.name, report.agreement, report.point)
    if report.torsion_residual > tol:
        raise ToleranceError("Levi-Civita frame connection has torsion", chart.name, report.torsion_residual, report.point)
    cartan_tol = settings_manager.get("tolerances.curvature", 1e-6)
    for name in ("maurer_cartan_residual", "second_cartan_residual"):
        value = getattr(report, name)
        if value > cartan_tol:
            raise ToleranceError(f"Frame identity {name} fails", chart.name, value, report.point)


def frame_structure_summary(chart: Chart, x: Sequence[float], theta: Optional[FrameField] = None) -> Dict[str, Any]:
    theta = theta or coordinate_frame(chart)
    return noncoordinate_frame(chart, x, theta).to_dict()
