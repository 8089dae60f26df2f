"""Riemann curvature, Gaussian curvature, Cartan and Bianchi checks, shape bivector."""

import logging
from dataclasses import dataclass
from typing import Any, Callable, Dict, Optional, Sequence

import numpy as np

from exceptions import ToleranceError
from multivector_core import Multivector, inner
from scalar_ring import FloatBackend
from settings import settings_manager

from .charts import Chart
from .connection import christoffel_extrinsic
from .fields import ComponentField, combine, max_abs
from .forms import exterior_derivative, wedge_forms
from .frames import FrameData, frames_at
from .projector import normal_projection

logger = logging.getLogger(__name__)


def _step(step: Optional[float]) -> float:
    return step if step is not None else settings_manager.get("numerics.fd_step_second", 1e-4)


def christoffel_derivatives(chart: Chart, x: Sequence[float], step: Optional[float] = None) -> np.ndarray:
    """``dGamma[m, i, j, k] = d_m Gamma^i_jk`` by five-point central differences."""
    h = _step(step)
    point = np.asarray(x, dtype=float)
    d = chart.dim
    out = np.zeros((d, d, d, d))
    for m in range(d):
        shift = np.zeros(d)
        shift[m] = h
        near = christoffel_extrinsic(chart, point + shift) - christoffel_extrinsic(chart, point - shift)
        far = christoffel_extrinsic(chart, point + 2 * shift) - christoffel_extrinsic(chart, point - 2 * shift)
        out[m] = (8 * near - far) / (12 * h)
    return out


def riemann(chart: Chart, x: Sequence[float], step: Optional[float] = None) -> np.ndarray:
    """``R[l, i, j, k] = d_i G^l_jk - d_j G^l_ik + G^l_im G^m_jk - G^l_jm G^m_ik``."""
    gamma = christoffel_extrinsic(chart, x)
    dgamma = christoffel_derivatives(chart, x, step)
    derivative = np.einsum("iljk->lijk", dgamma) - np.einsum("jlik->lijk", dgamma)
    quadratic = np.einsum("lim,mjk->lijk", gamma, gamma) - np.einsum("ljm,mik->lijk", gamma, gamma)
    return derivative + quadratic


def ricci_tensor(riemann_tensor: np.ndarray) -> np.ndarray:
    """``Ric_jk = R^i_ijk``."""
    return np.einsum("iijk->jk", riemann_tensor)


def ricci_scalar(riemann_tensor: np.ndarray, inverse_metric: np.ndarray) -> float:
    return float(np.einsum("jk,jk->", inverse_metric, ricci_tensor(riemann_tensor)))


def gaussian_curvature(chart: Chart, x: Sequence[float], step: Optional[float] = None) -> float:
    """``K = g_1u R^u_122 / det g`` on a two-dimensional chart."""
    frame = frames_at(chart, x)
    r = riemann(chart, x, step)
    lowered = np.einsum("lu,uijk->lijk", frame.metric, r)
    return float(lowered[0, 0, 1, 1] / np.linalg.det(frame.metric))


@dataclass
class CurvatureReport:
    """Curvature at one point with its identity residuals."""

    chart: str
    point: np.ndarray
    riemann: np.ndarray
    ricci: np.ndarray
    scalar: float
    gaussian: Optional[float]
    cartan_residual: float
    ricci_identity_residual: float
    bianchi_residual: float

    def to_dict(self) -> Dict[str, Any]:
        return {
            "chart": self.chart,
            "point": self.point.tolist(),
            "gaussian_curvature": self.gaussian,
            "ricci_scalar": self.scalar,
            "cartan_residual": self.cartan_residual,
            "ricci_identity_residual": self.ricci_identity_residual,
            "bianchi_residual": self.bianchi_residual,
        }


def curvature(chart: Chart, x: Sequence[float], check: bool = True) -> CurvatureReport:
    """Riemann tensor at ``x`` with first Cartan, Ricci and Bianchi residuals.

    Raises:
        ToleranceError: If ``check`` is set and a residual exceeds ``tolerances.curvature``.
    """
    frame = frames_at(chart, x)
    r = riemann(chart, frame.point)
    report = CurvatureReport(
        chart=chart.name,
        point=frame.point,
        riemann=r,
        ricci=ricci_tensor(r),
        scalar=ricci_scalar(r, frame.inverse_metric),
        gaussian=gaussian_curvature(chart, frame.point) if chart.dim == 2 else None,
        cartan_residual=first_cartan_residual(chart, frame.point, r),
        ricci_identity_residual=ricci_identity_residual(frame, r),
        bianchi_residual=second_bianchi_residual(chart, frame.point),
    )
    tol = settings_manager.get("tolerances.curvature", 1e-6)
    if check:
        for name in ("cartan_residual", "ricci_identity_residual", "bianchi_residual"):
            value = getattr(report, name)
            if value > tol:
                raise ToleranceError(f"Curvature identity {name} fails", chart.name, value, frame.point)
    return report


# ------------------------------------------------------------- identities


def connection_forms(chart: Chart):
    """``omega^u_t`` with ``omega^u_t(xi_v) = Gamma^u_vt`` as one-form fields."""
    d = chart.dim
    return [
        [
            ComponentField(d, 1, lambda y, u=u, t=t: {1 << v: g for v, g in enumerate(christoffel_extrinsic(chart, y)[u, :, t])})
            for t in range(d)
        ]
        for u in range(d)
    ]


def first_cartan_residual(chart: Chart, x: Sequence[float], riemann_tensor: Optional[np.ndarray] = None) -> float:
    """``R^u_t - (d omega^u_t + omega^u_s ^ omega^s_t)`` over all frame pairs."""
    point = np.asarray(x, dtype=float)
    r = riemann_tensor if riemann_tensor is not None else riemann(chart, point)
    h = _step(None)
    omega = connection_forms(chart)
    values = [[form(point) for form in row] for row in omega]
    d = chart.dim
    worst = 0.0
    for u in range(d):
        for t in range(d):
            two_form = exterior_derivative(omega[u][t], point, h)
            for s in range(d):
                two_form = combine([(two_form, 1.0), (wedge_forms(values[u][s], values[s][t]), 1.0)])
            expected = {(1 << i) | (1 << j): r[u, i, j, t] for i in range(d) for j in range(i + 1, d)}
            worst = max(worst, max_abs(combine([(two_form, 1.0), (expected, -1.0)])))
    return worst


def curvature_bivector(frame: FrameData, riemann_tensor: np.ndarray, i: int, j: int) -> Multivector:
    """``R(xi_i ^ xi_j) = 1/2 R^u_ijt xi_u ^ xi^t`` in the intrinsic algebra."""
    signature = frame.intrinsic_signature()
    backend = FloatBackend()
    d = frame.dim
    out = Multivector.zero(signature, backend)
    basis = [Multivector.generator(signature, backend, k, 1.0) for k in range(d)]
    for u in range(d):
        for t in range(d):
            coefficient = 0.5 * riemann_tensor[u, i, j, t]
            if not coefficient:
                continue
            reciprocal = Multivector.vector(signature, backend, list(frame.inverse_metric[t]))
            out = out + basis[u].wedge(reciprocal).scale(coefficient)
    return out


def curvature_operator(frame: FrameData, riemann_tensor: np.ndarray, a: Sequence[float], b: Sequence[float]) -> Multivector:
    """``R(a ^ b) = a^i b^j R(xi_i ^ xi_j)``."""
    signature = frame.intrinsic_signature()
    out = Multivector.zero(signature, FloatBackend())
    for i in range(frame.dim):
        for j in range(frame.dim):
            weight = a[i] * b[j]
            if weight:
                out = out + curvature_bivector(frame, riemann_tensor, i, j).scale(weight)
    return out


def ricci_identity_residual(
    frame: FrameData, riemann_tensor: np.ndarray, samples: int = 3, seed: Optional[int] = None
) -> float:
    """``a . R(b c) + b . R(c a) + c . R(a b)`` on random tangent triples."""
    seed = seed if seed is not None else settings_manager.get("property_suite.seed", 0)
    rng = np.random.default_rng(seed)
    signature = frame.intrinsic_signature()
    backend = FloatBackend()
    worst = 0.0
    for _ in range(samples):
        a, b, c = rng.normal(size=(3, frame.dim))
        total = Multivector.zero(signature, backend)
        for u, (v, w) in ((a, (b, c)), (b, (c, a)), (c, (a, b))):
            bivector = curvature_operator(frame, riemann_tensor, v, w)
            if bivector.is_zero:
                continue
            total = total + inner(Multivector.vector(signature, backend, list(u)), bivector)
        worst = max(worst, total.max_abs())
    return worst


def _covariant_riemann(
    chart: Chart, x: np.ndarray, h: float, riemann_field: Optional[Callable[[np.ndarray], np.ndarray]] = None
) -> np.ndarray:
    """``nabla[m, l, i, j, k] = nabla_m R^l_ijk`` with five-point differences of ``R``."""
    field = riemann_field or (lambda y: riemann(chart, y, h))
    d = chart.dim
    gamma = christoffel_extrinsic(chart, x)
    r = field(x)
    dr = np.zeros((d,) * 5)
    for m in range(d):
        shift = np.zeros(d)
        shift[m] = h
        near = field(x + shift) - field(x - shift)
        far = field(x + 2 * shift) - field(x - 2 * shift)
        dr[m] = (8 * near - far) / (12 * h)
    return (
        dr
        + np.einsum("lmn,nijk->mlijk", gamma, r)
        - np.einsum("nmi,lnjk->mlijk", gamma, r)
        - np.einsum("nmj,link->mlijk", gamma, r)
        - np.einsum("nmk,lijn->mlijk", gamma, r)
    )


def second_bianchi_residual(
    chart: Chart,
    x: Sequence[float],
    step: Optional[float] = None,
    riemann_field: Optional[Callable[[np.ndarray], np.ndarray]] = None,
) -> float:
    """``max |nabla_m R^l_ijk + nabla_i R^l_jmk + nabla_j R^l_mik|``.

    ``riemann_field`` replaces the chart's own curvature tensor; the connection stays the chart's.
    """
    h = _step(step)
    nabla = _covariant_riemann(chart, np.asarray(x, dtype=float), h, riemann_field)
    d = chart.dim
    worst = 0.0
    for m in range(d):
        for i in range(d):
            for j in range(d):
                cyclic = nabla[m, :, i, j, :] + nabla[i, :, j, m, :] + nabla[j, :, m, i, :]
                worst = max(worst, float(np.max(np.abs(cyclic))))
    return worst


# ---------------------------------------------------------------- shape


def shape_bivector(chart: Chart, x: Sequence[float], direction: Sequence[float]) -> Multivector:
    """``S(a) = xi^j ^ P_perp((a . d) xi_j)`` as an ambient bivector."""
    frame = frames_at(chart, x)
    second = chart.second_partials(frame.point)
    a = np.asarray(direction, dtype=float)
    out = Multivector.zero(frame.ambient_signature, FloatBackend())
    for j, reciprocal in enumerate(frame.reciprocal_vectors()):
        normal = normal_projection(frame, a @ second[:, j, :])
        out = out + reciprocal.wedge(frame.ambient_vector(normal))
    return out


def shape_report(chart: Chart, x: Sequence[float], a: Sequence[float], b: Sequence[float]) -> Dict[str, Any]:
    """Residuals of ``b . S(a) = P_perp((a . d) b)`` and ``a . S(b) = b . S(a)`` for constant-component ``a``, ``b``."""
    frame = frames_at(chart, x)
    second = chart.second_partials(frame.point)
    a_vec = frame.ambient_vector(frame.push_forward(a))
    b_vec = frame.ambient_vector(frame.push_forward(b))
    s_a = shape_bivector(chart, x, a)
    s_b = shape_bivector(chart, x, b)
    contraction = inner(b_vec, s_a)
    expected = frame.ambient_vector(normal_projection(frame, np.einsum("i,j,ija->a", a, b, second)))
    symmetry = inner(a_vec, s_b) - contraction
    return {
        "contraction_residual": (contraction - expected).max_abs(),
        "symmetry_residual": symmetry.max_abs(),
        "grade_two": s_a.grades() in ((), (2,)),
        "normal_curvature": float(np.sqrt(sum(c.value ** 2 for _, c in inner(a_vec, s_a).items()))),
    }
