"""Exterior calculus on chart coordinates: d, Hodge star, coderivative, interior product and Lie derivative."""

import logging
from itertools import combinations
from typing import Any, Dict, Optional, Sequence

import numpy as np

from exceptions import GradeError
from multivector_core import Multivector, hodge_dual
from multivector_core.products import bits, mask_of, wedge_sign
from scalar_ring import FloatBackend
from settings import settings_manager

from .brackets import directional_derivative, jacobi_lie_bracket
from .charts import Chart
from .fields import Components, ComponentField, combine, max_abs, ordered_component, vector_components
from .frames import frames_at

logger = logging.getLogger(__name__)

FormField = ComponentField


def exterior_derivative(form: FormField, x: Sequence[float], step: Optional[float] = None) -> Components:
    """``d w = sum_i sum_K d_i w_K dx^i ^ dx^K`` at ``x``."""
    out: Components = {}
    for i in range(form.dim):
        bit = 1 << i
        for mask, value in form.derivative(x, i, step).items():
            sign = wedge_sign(bit, mask)
            if sign:
                out[mask | bit] = out.get(mask | bit, 0.0) + sign * value
    return out


def exterior_derivative_field(form: FormField, step: Optional[float] = None) -> FormField:
    return ComponentField(form.dim, form.grade + 1, lambda x: exterior_derivative(form, x, step), f"d{form.label}")


def dd_residual(form: FormField, x: Sequence[float]) -> float:
    """``|d(d w)|`` with both differences on the ``numerics.fd_step_second`` grid."""
    h = settings_manager.get("numerics.fd_step_second", 1e-4)
    return max_abs(exterior_derivative(exterior_derivative_field(form, h), x, h))


def wedge_forms(a: Components, b: Components) -> Components:
    out: Components = {}
    for ma, va in a.items():
        for mb, vb in b.items():
            sign = wedge_sign(ma, mb)
            if sign:
                out[ma | mb] = out.get(ma | mb, 0.0) + sign * va * vb
    return out


def interior_product(a: Sequence[float], values: Components) -> Components:
    """``(i_a w)_K = a^i w_{iK}``."""
    out: Components = {}
    for mask, value in values.items():
        indices = bits(mask)
        for position, i in enumerate(indices):
            if not a[i]:
                continue
            rest = mask ^ (1 << i)
            sign = -1.0 if position & 1 else 1.0
            out[rest] = out.get(rest, 0.0) + sign * a[i] * value
    return out


def interior_product_field(a: ComponentField, form: FormField) -> FormField:
    return ComponentField(
        form.dim,
        max(form.grade - 1, 0),
        lambda x: interior_product(vector_components(a, x), form(x)) if form.grade else {},
        f"i_{a.label}{form.label}",
    )


def evaluate_on(values: Components, vectors: Sequence[Sequence[float]]) -> float:
    """``w(v_1, ..., v_r)`` with ``dx^I(v_1..v_r) = det[v_k^(i_l)]``."""
    if not vectors:
        return values.get(0, 0.0)
    matrix = np.asarray(vectors, dtype=float)
    total = 0.0
    for mask, value in values.items():
        total += value * float(np.linalg.det(matrix[:, bits(mask)]))
    return total


# ------------------------------------------------------------------- Hodge


def hodge(frame, values: Components) -> Components:
    """Hodge dual of a form in the coframe ``dx^i`` with contraction ``g^ij``.

    ``*1 = sqrt(|g|) dx^1 ^ ... ^ dx^d``.
    """
    if not values:
        return {}
    signature = frame.cotangent_signature()
    form = Multivector(signature, FloatBackend(), values)
    out: Components = {}
    for r in form.grades():
        for mask, c in hodge_dual(form.grade_project(r)).items():
            out[mask] = out.get(mask, 0.0) + c.value
    return out


def hodge_field(chart: Chart, form: FormField) -> FormField:
    return ComponentField(form.dim, form.dim - form.grade, lambda x: hodge(frames_at(chart, x), form(x)), f"*{form.label}")


def volume_form(chart: Chart, x: Sequence[float]) -> Components:
    """``*1``; on the unit sphere its single component is ``sin(theta)``."""
    return hodge(frames_at(chart, x), {0: 1.0})


def coderivative(chart: Chart, form: FormField, x: Sequence[float], step: Optional[float] = None) -> Components:
    """``d^dagger w = (-1)^(d r + d + 1) * d * w`` for an ``r``-form."""
    d, r = form.dim, form.grade
    if r == 0:
        return {}
    dual = hodge_field(chart, form)
    inner = exterior_derivative(dual, x, step)
    sign = -1.0 if (d * r + d + 1) & 1 else 1.0
    return {m: sign * v for m, v in hodge(frames_at(chart, x), inner).items()}


def _minor(matrix: np.ndarray, rows: Sequence[int], cols: Sequence[int]) -> float:
    if not rows:
        return 1.0
    return float(np.linalg.det(matrix[np.ix_(rows, cols)]))


def raise_indices(inverse_metric: np.ndarray, values: Components, grade: int) -> Components:
    """``A^S = sum_T det(g^-1[S, T]) A_T``."""
    dim = inverse_metric.shape[0]
    out: Components = {}
    for s in combinations(range(dim), grade):
        total = sum(_minor(inverse_metric, list(s), bits(t)) * v for t, v in values.items())
        if total:
            out[mask_of(s)] = total
    return out


def lower_indices(metric: np.ndarray, values: Components, grade: int) -> Components:
    return raise_indices(metric, values, grade)


def divergence_coderivative(chart: Chart, form: FormField, x: Sequence[float], step: Optional[float] = None) -> Components:
    """``-(1/sqrt g) d_j (sqrt g A^{jK})`` with the free indices lowered."""
    d, r = form.dim, form.grade
    if r == 0:
        return {}
    h = step if step is not None else settings_manager.get("numerics.fd_step_first", 1e-5)

    def densitized(y: np.ndarray) -> Dict[int, np.ndarray]:
        frame = frames_at(chart, y)
        raised = raise_indices(frame.inverse_metric, form(y), r)
        out: Dict[int, np.ndarray] = {}
        for k in combinations(range(d), r - 1):
            k_mask = mask_of(k)
            column = np.zeros(d)
            for j in range(d):
                column[j] = frame.volume * ordered_component(raised, [j] + list(k))
            out[k_mask] = column
        return out

    point = np.asarray(x, dtype=float)
    frame = frames_at(chart, point)
    divergence: Components = {}
    for j in range(d):
        shift = np.zeros(d)
        shift[j] = h
        upper, lower = densitized(point + shift), densitized(point - shift)
        for k_mask in upper:
            value = (upper[k_mask][j] - lower[k_mask][j]) / (2 * h)
            divergence[k_mask] = divergence.get(k_mask, 0.0) + value
    divergence = {m: -v / frame.volume for m, v in divergence.items()}
    return lower_indices(frame.metric, divergence, r - 1)


# -------------------------------------------------------------- Lie derivative


def lie_derivative(a: ComponentField, form: FormField, x: Sequence[float], step: Optional[float] = None) -> Components:
    """Component form ``a^i d_i w_K + sum_p (d_(k_p) a^i) w_(K with k_p -> i)``."""
    point = np.asarray(x, dtype=float)
    av = vector_components(a, point)
    values = form(point)
    terms = [(form.derivative(point, i, step), av[i]) for i in range(form.dim) if av[i]]
    out = combine(terms)
    if form.grade == 0:
        return out
    da = [a.derivative(point, j, step) for j in range(form.dim)]
    for k in combinations(range(form.dim), form.grade):
        total = 0.0
        for position, kp in enumerate(k):
            for i in range(form.dim):
                coefficient = da[kp].get(1 << i, 0.0)
                if coefficient:
                    replaced = list(k)
                    replaced[position] = i
                    total += coefficient * ordered_component(values, replaced)
        if total:
            key = mask_of(k)
            out[key] = out.get(key, 0.0) + total
    return out


def cartan_magic(a: ComponentField, form: FormField, x: Sequence[float], step: Optional[float] = None) -> Dict[str, Any]:
    """``L_a w`` by components against ``(d i_a + i_a d) w``."""
    point = np.asarray(x, dtype=float)
    components = lie_derivative(a, form, point, step)
    d_contracted = exterior_derivative(interior_product_field(a, form), point, step) if form.grade else {}
    contracted_d = interior_product(vector_components(a, point), exterior_derivative(form, point, step))
    magic = combine([(d_contracted, 1.0), (contracted_d, 1.0)])
    residual = max_abs(combine([(components, 1.0), (magic, -1.0)]))
    return {"components": components, "magic": magic, "residual": residual}


# ---------------------------------------------------- coordinate-free check


def coordinate_free_exterior_derivative(
    form: FormField, fields: Sequence[ComponentField], x: Sequence[float], step: Optional[float] = None
) -> Dict[str, float]:
    """``d w(a_0..a_r)`` from derivatives of ``w`` on fields and brackets, for ``r <= 2``.

    Raises:
        GradeError: For forms of degree above two.
    """
    r = form.grade
    if r > 2:
        raise GradeError("Coordinate-free exterior derivative is checked up to degree 2", r)
    if len(fields) != r + 1:
        raise GradeError(f"A {r}-form needs {r + 1} vector fields", r)
    h = step if step is not None else settings_manager.get("numerics.fd_step_first", 1e-5)
    point = np.asarray(x, dtype=float)
    values = [vector_components(f, point) for f in fields]

    def on(*vs):
        return lambda y: evaluate_on(form(y), [vector_components(v, y) for v in vs])

    if r == 0:
        invariant = directional_derivative(on(), values[0], point, h)
    elif r == 1:
        a, b = fields
        invariant = (
            directional_derivative(on(b), values[0], point, h)
            - directional_derivative(on(a), values[1], point, h)
            - evaluate_on(form(point), [jacobi_lie_bracket(a, b, point, h)])
        )
    else:
        a, b, c = fields
        wv = form(point)
        invariant = (
            directional_derivative(on(b, c), values[0], point, h)
            - directional_derivative(on(a, c), values[1], point, h)
            + directional_derivative(on(a, b), values[2], point, h)
            - evaluate_on(wv, [jacobi_lie_bracket(a, b, point, h), values[2]])
            + evaluate_on(wv, [jacobi_lie_bracket(a, c, point, h), values[1]])
            - evaluate_on(wv, [jacobi_lie_bracket(b, c, point, h), values[0]])
        )
    components = evaluate_on(exterior_derivative(form, point, h), values)
    return {"invariant": invariant, "components": components, "residual": abs(invariant - components)}
