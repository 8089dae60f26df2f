"""Jacobi-Lie and Schouten-Nijenhuis brackets of tangent fields.

Multivector fields are expanded as ``sum P^S xi_S`` and differentiated
with the Grassmann calculus of the frame symbols: ``P <- d/dxi_i`` removes
``xi_i`` from the right, ``d_i`` differentiates coefficients.
"""

import logging
from typing import Any, Dict, Optional, Sequence

import numpy as np

from multivector_core.products import right_derivative_sign, wedge_sign
from settings import settings_manager

from .charts import Chart
from .connection import field_jacobian
from .fields import Components, ComponentField, combine, max_abs, vector_components
from .frames import frames_at

logger = logging.getLogger(__name__)


def directional_derivative(function, direction: np.ndarray, x: np.ndarray, step: float) -> float:
    """``a . d F`` of a scalar function at ``x``."""
    total = 0.0
    for i, a in enumerate(direction):
        if not a:
            continue
        shift = np.zeros(len(x))
        shift[i] = step
        total += a * (function(x + shift) - function(x - shift)) / (2 * step)
    return total


def jacobi_lie_bracket(a: ComponentField, b: ComponentField, x: Sequence[float], step: Optional[float] = None) -> np.ndarray:
    """Components ``a^j d_j b^i - b^j d_j a^i`` of ``[a, b]_JLB``."""
    point = np.asarray(x, dtype=float)
    av = vector_components(a, point)
    bv = vector_components(b, point)
    out = np.zeros(a.dim)
    for j in range(a.dim):
        db = b.derivative(point, j, step)
        da = a.derivative(point, j, step)
        for i in range(a.dim):
            out[i] += av[j] * db.get(1 << i, 0.0) - bv[j] * da.get(1 << i, 0.0)
    return out


def jacobi_lie_bracket_field(a: ComponentField, b: ComponentField, step: Optional[float] = None) -> ComponentField:
    def components(x: np.ndarray) -> Components:
        return {1 << i: v for i, v in enumerate(jacobi_lie_bracket(a, b, x, step))}

    return ComponentField(a.dim, 1, components, f"[{a.label},{b.label}]")


def jacobi_lie_bracket_ambient(
    chart: Chart, a: ComponentField, b: ComponentField, x: Sequence[float], step: Optional[float] = None
) -> Dict[str, Any]:
    """``(a . d) b - (b . d) a`` in the ambient space against the component formula.

    The extrinsic parts ``a^i b^j d_i xi_j`` cancel, so the ambient bracket is
    tangent and its pull-back equals the component bracket.
    """
    frame = frames_at(chart, x)
    point = frame.point

    def ambient(field: ComponentField):
        return lambda y: vector_components(field, y) @ chart.partials(y)

    av = vector_components(a, point)
    bv = vector_components(b, point)
    ambient_bracket = av @ field_jacobian(ambient(b), point, step) - bv @ field_jacobian(ambient(a), point, step)
    components = jacobi_lie_bracket(a, b, point, step)
    residual = float(np.max(np.abs(ambient_bracket - frame.push_forward(components))))
    return {"components": components, "ambient": ambient_bracket, "residual": residual}


# ------------------------------------------------------- Schouten-Nijenhuis


def _right_frame_derivative(values: Components, index: int) -> Components:
    out: Components = {}
    bit = 1 << index
    for mask, value in values.items():
        if mask & bit:
            out[mask ^ bit] = out.get(mask ^ bit, 0.0) + right_derivative_sign(mask, index) * value
    return out


def wedge_components(a: Components, b: Components) -> Components:
    out: Components = {}
    for ma, va in a.items():
        for mb, vb in b.items():
            sign = wedge_sign(ma, mb)
            if sign:
                out[ma | mb] = out.get(ma | mb, 0.0) + sign * va * vb
    return out


def _standard_bracket(p: ComponentField, q: ComponentField, x: np.ndarray, step: Optional[float]) -> Components:
    """``sum_i (P <- d/dxi_i)(d_i Q) - (-1)^((p-1)(q-1)) (Q <- d/dxi_i)(d_i P)``."""
    pv, qv = p(x), q(x)
    sign = -1.0 if ((p.grade - 1) * (q.grade - 1)) & 1 else 1.0
    terms = []
    for i in range(p.dim):
        left = _right_frame_derivative(pv, i)
        if left:
            terms.append((wedge_components(left, q.derivative(x, i, step)), 1.0))
        right = _right_frame_derivative(qv, i)
        if right:
            terms.append((wedge_components(right, p.derivative(x, i, step)), -sign))
    return combine(terms)


def schouten_nijenhuis(p: ComponentField, q: ComponentField, x: Sequence[float], step: Optional[float] = None) -> Components:
    """``[P, Q]_SNB`` of grade ``r + s - 1`` for ``P`` of grade ``r`` and ``Q`` of grade ``s``.

    Normalised so that ``[a, f] = a . d f``, ``[a, b] = [a, b]_JLB``,
    ``[f, g] = 0`` and ``[P, Q] = (-1)^(rs) [Q, P]``.
    """
    point = np.asarray(x, dtype=float)
    sign = -1.0 if (q.grade * (p.grade + 1)) & 1 else 1.0
    return {m: sign * v for m, v in _standard_bracket(p, q, point, step).items() if v}


def schouten_nijenhuis_field(p: ComponentField, q: ComponentField, step: Optional[float] = None) -> ComponentField:
    grade = max(p.grade + q.grade - 1, 0)
    return ComponentField(p.dim, grade, lambda x: schouten_nijenhuis(p, q, x, step), f"[{p.label},{q.label}]")


def graded_symmetry_residual(p: ComponentField, q: ComponentField, x: Sequence[float], step: Optional[float] = None) -> float:
    """``|[P, Q] - (-1)^(rs) [Q, P]|``."""
    sign = -1.0 if (p.grade * q.grade) & 1 else 1.0
    return max_abs(combine([(schouten_nijenhuis(p, q, x, step), 1.0), (schouten_nijenhuis(q, p, x, step), -sign)]))


def super_jacobi_residual(
    a: ComponentField, b: ComponentField, c: ComponentField, x: Sequence[float], step: Optional[float] = None
) -> float:
    """``(-1)^(rt) [[A,B],C] + (-1)^(rs) [[B,C],A] + (-1)^(st) [[C,A],B]``.

    Nested differences use ``numerics.fd_step_second`` unless ``step`` is given.
    """
    step = step if step is not None else settings_manager.get("numerics.fd_step_second", 1e-4)
    r, s, t = a.grade, b.grade, c.grade

    def sign(n: int) -> float:
        return -1.0 if n & 1 else 1.0

    terms = [
        (schouten_nijenhuis(schouten_nijenhuis_field(a, b, step), c, x, step), sign(r * t)),
        (schouten_nijenhuis(schouten_nijenhuis_field(b, c, step), a, x, step), sign(r * s)),
        (schouten_nijenhuis(schouten_nijenhuis_field(c, a, step), b, x, step), sign(s * t)),
    ]
    return max_abs(combine(terms))
