"""Coordinate frames, reciprocal frames and induced metric at a point."""

import logging
from dataclasses import dataclass
from typing import List, Sequence

import numpy as np

from exceptions import GeometryError, ToleranceError
from multivector_core import MetricSignature, Multivector
from scalar_ring import FloatBackend
from settings import settings_manager

from .charts import Chart

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FrameData:
    """Frame vectors at one point.

    Attributes:
        chart: Chart the data belongs to.
        point: Intrinsic coordinates.
        tangent: ``xi_i`` as rows, shape ``(d, D)``.
        reciprocal: ``xi^i = g^ij xi_j`` as rows.
        metric: ``g_ij = xi_i . xi_j``.
        inverse_metric: ``g^ij``.
    """

    chart: Chart
    point: np.ndarray
    tangent: np.ndarray
    reciprocal: np.ndarray
    metric: np.ndarray
    inverse_metric: np.ndarray

    @property
    def dim(self) -> int:
        return self.chart.dim

    @property
    def volume(self) -> float:
        """``sqrt(|det g|)``."""
        return float(np.sqrt(abs(np.linalg.det(self.metric))))

    @property
    def ambient_signature(self) -> MetricSignature:
        return MetricSignature.euclidean(self.chart.ambient_dim)

    def intrinsic_signature(self) -> MetricSignature:
        """Star-product signature of the tangent space with ``g_ij`` contraction."""
        return MetricSignature.numeric(self.metric, f"{self.chart.name}:g", self.chart.coordinate_names)

    def cotangent_signature(self) -> MetricSignature:
        """Signature of the coframe ``xi^i``, contraction ``g^ij``."""
        names = tuple(f"d{n}" for n in self.chart.coordinate_names)
        return MetricSignature.numeric(self.inverse_metric, f"{self.chart.name}:g^-1", names)

    def tangent_vectors(self) -> List[Multivector]:
        return [self.ambient_vector(row) for row in self.tangent]

    def reciprocal_vectors(self) -> List[Multivector]:
        return [self.ambient_vector(row) for row in self.reciprocal]

    def ambient_vector(self, components: Sequence[float]) -> Multivector:
        return Multivector.vector(self.ambient_signature, FloatBackend(), [float(c) for c in components])

    def push_forward(self, components: Sequence[float]) -> np.ndarray:
        """Ambient vector ``a^i xi_i`` of intrinsic components ``a^i``."""
        return np.asarray(components, dtype=float) @ self.tangent

    def pull_back(self, ambient: Sequence[float]) -> np.ndarray:
        """Components ``a . xi^i`` of an ambient vector."""
        return self.reciprocal @ np.asarray(ambient, dtype=float)


def metric_at(chart: Chart, x: Sequence[float]) -> np.ndarray:
    tangent = chart.partials(x)
    return tangent @ tangent.T


def frames_at(chart: Chart, x: Sequence[float]) -> FrameData:
    """Frame data at ``x``.

    Raises:
        GeometryError: If ``x`` leaves the domain or ``g`` is singular.
        ToleranceError: If ``xi_i . xi^j`` departs from the identity.
    """
    point = chart.require_domain(x)
    tangent = chart.partials(point)
    metric = tangent @ tangent.T
    if abs(np.linalg.det(metric)) < 1e-14 or np.linalg.cond(metric) > 1e12:
        raise GeometryError("Induced metric is singular; frame vectors are dependent", chart.name, point)
    inverse_metric = np.linalg.inv(metric)
    inverse_metric = 0.5 * (inverse_metric + inverse_metric.T)
    reciprocal = inverse_metric @ tangent

    residual = float(np.max(np.abs(tangent @ reciprocal.T - np.eye(chart.dim))))
    tol = settings_manager.get("tolerances.frame", 1e-10)
    if residual > tol:
        raise ToleranceError("Reciprocal frame fails xi_i . xi^j = delta", chart.name, residual, point)
    return FrameData(chart, point, tangent, reciprocal, metric, inverse_metric)
