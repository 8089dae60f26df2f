"""Tangent projection ``P(A) = (A . I_d) * I_d^-1`` of ambient multivectors."""

import logging
from typing import Sequence

import numpy as np

from multivector_core import Multivector, inner

from .charts import Chart
from .frames import FrameData, frames_at

logger = logging.getLogger(__name__)


def tangent_pseudoscalar(frame: FrameData) -> Multivector:
    """``I_d = xi_1 ^ ... ^ xi_d`` in chart coordinate order."""
    vectors = frame.tangent_vectors()
    blade = vectors[0]
    for v in vectors[1:]:
        blade = blade.wedge(v)
    return blade


def _blade_inverse(blade: Multivector) -> Multivector:
    norm = blade.star(blade.reverse()).scalar_part().value
    return blade.reverse().scale(1.0 / norm)


def project(frame: FrameData, a: Multivector) -> Multivector:
    """Projects every grade of ``a`` onto the tangent space at ``frame.point``.

    Grades above ``d`` project to zero.
    """
    pseudoscalar = tangent_pseudoscalar(frame)
    pseudoscalar_inverse = _blade_inverse(pseudoscalar)
    d = frame.dim
    out = Multivector.zero(a.signature, a.backend)
    for r in a.grades():
        if r > d:
            continue
        part = a.grade_project(r)
        if r == 0:
            out = out + part
            continue
        out = out + inner(part, pseudoscalar).star(pseudoscalar_inverse).grade_project(r)
    return out


def project_at(chart: Chart, x: Sequence[float], a: Multivector) -> Multivector:
    return project(frames_at(chart, x), a)


def normal_part(frame: FrameData, a: Multivector) -> Multivector:
    """``P_perp(a) = a - P(a)``."""
    return a - project(frame, a)


def projection_matrix(frame: FrameData) -> np.ndarray:
    """``xi^i (x) xi_i`` acting on ambient vector arrays."""
    return frame.tangent.T @ frame.reciprocal


def normal_projection(frame: FrameData, v: np.ndarray) -> np.ndarray:
    return v - projection_matrix(frame) @ v


def idempotence_residual(frame: FrameData, a: Multivector) -> float:
    """``|P(P(a)) - P(a)|``."""
    once = project(frame, a)
    return (project(frame, once) - once).max_abs()
