"""Symplectic vector manifolds: Omega, J, musical maps, hamiltonian fields and Poisson brackets."""

import logging
from typing import Any, Dict, List, Optional, Sequence, Union

import numpy as np
import sympy

from exceptions import GeometryError, PhaseSpaceError
from multivector_core import MetricSignature, Multivector, inner
from scalar_ring import ExactBackend, FloatBackend, VariableRegistry
from settings import settings_manager

from .brackets import jacobi_lie_bracket
from .charts import Chart, cotangent, plane
from .fields import Components, ComponentField, combine, constant_field, max_abs, vector_field
from .forms import evaluate_on, exterior_derivative, interior_product, lie_derivative

logger = logging.getLogger(__name__)


class Observable:
    """Smooth function on a chart given as a sympy expression in its coordinates.

    Example:
        >>> chart = cotangent(plane(1))
        >>> h = Observable("(p**2 + q**2)/2", chart)
        >>> h.gradient([1.0, 0.0]).tolist()
        [1.0, 0.0]
    """

    def __init__(self, expression: Union[str, sympy.Expr], chart: Chart):
        self.chart = chart
        self.symbols = sympy.symbols(chart.coordinate_names)
        local = {str(s): s for s in self.symbols}
        try:
            self.expression = sympy.sympify(expression, locals=local) if isinstance(expression, str) else expression
        except (sympy.SympifyError, SyntaxError, TypeError) as e:
            raise GeometryError(f"Cannot parse observable {expression!r}", chart.name, cause=e) from e
        unknown = self.expression.free_symbols - set(self.symbols)
        if unknown:
            raise GeometryError(f"Observable uses symbols {sorted(map(str, unknown))} outside the chart", chart.name)
        self._value = sympy.lambdify(self.symbols, self.expression, "numpy")
        self._gradient = sympy.lambdify(self.symbols, [sympy.diff(self.expression, s) for s in self.symbols], "numpy")

    def __call__(self, x: Sequence[float]) -> float:
        return float(self._value(*np.asarray(x, dtype=float)))

    def gradient(self, x: Sequence[float]) -> np.ndarray:
        return np.array(self._gradient(*np.asarray(x, dtype=float)), dtype=float)

    def __repr__(self) -> str:
        return f"Observable({self.expression})"


class SymplecticStructure:
    """Closed non-degenerate two-form ``Omega`` on an even-dimensional chart.

    ``J = -Omega^-1`` so that ``h_H = J^ij (d_j H) xi_i`` satisfies
    ``h_H . Omega = dH``.

    Raises:
        GeometryError: If the chart is odd-dimensional, ``Omega`` is
            degenerate or ``dOmega`` does not vanish at sampled points.
    """

    def __init__(self, chart: Chart, omega: ComponentField, samples: int = 5):
        if chart.dim % 2:
            raise GeometryError("Symplectic structures need an even-dimensional chart", chart.name)
        if omega.grade != 2 or omega.dim != chart.dim:
            raise GeometryError("Omega must be a two-form on the chart", chart.name)
        self.chart = chart
        self.omega = omega
        rng = np.random.default_rng(settings_manager.get("property_suite.seed", 0))
        tol = settings_manager.get("tolerances.christoffel", 1e-8)
        for point in chart.sample_points(samples, rng):
            matrix = self.omega_matrix(point)
            if abs(np.linalg.det(matrix)) < 1e-12:
                raise GeometryError("Omega is degenerate", chart.name, point)
            residual = self.closedness_residual(point)
            if residual > tol:
                raise GeometryError(f"Omega is not closed: residual {residual:.3e}", chart.name, point)

    # ------------------------------------------------------------ tensors

    def omega_matrix(self, x: Sequence[float]) -> np.ndarray:
        d = self.chart.dim
        out = np.zeros((d, d))
        for mask, value in self.omega(x).items():
            i, j = [k for k in range(d) if mask >> k & 1]
            out[i, j] = value
            out[j, i] = -value
        return out

    def poisson_tensor(self, x: Sequence[float]) -> np.ndarray:
        """``J = -Omega^-1``."""
        return -np.linalg.inv(self.omega_matrix(x))

    def closedness_residual(self, x: Sequence[float]) -> float:
        return max_abs(exterior_derivative(self.omega, x))

    def flat(self, x: Sequence[float], a: Sequence[float]) -> np.ndarray:
        """One-form ``a . Omega`` with components ``a^i Omega_ij``."""
        return np.asarray(a, dtype=float) @ self.omega_matrix(x)

    def sharp(self, x: Sequence[float], alpha: Sequence[float]) -> np.ndarray:
        """Inverse of :meth:`flat`: ``J^ij alpha_j``."""
        return self.poisson_tensor(x) @ np.asarray(alpha, dtype=float)

    # ------------------------------------------------------- hamiltonian

    def hamiltonian_vector(self, h: Observable, x: Sequence[float]) -> np.ndarray:
        return self.sharp(x, h.gradient(x))

    def hamiltonian_field(self, h: Observable) -> ComponentField:
        return vector_field(self.chart.dim, lambda y: self.hamiltonian_vector(h, y), f"h_{h.expression}")

    def contraction_residual(self, h: Observable, x: Sequence[float]) -> float:
        """``|h_H . Omega - dH|``."""
        contracted = interior_product(self.hamiltonian_vector(h, x), self.omega(x))
        differential = {1 << i: g for i, g in enumerate(h.gradient(x))}
        return max_abs(combine([(contracted, 1.0), (differential, -1.0)]))

    def poisson_bracket(self, f: Observable, g: Observable, x: Sequence[float]) -> float:
        """``{F, G} = Omega(h_F, h_G)``."""
        return evaluate_on(self.omega(x), [self.hamiltonian_vector(f, x), self.hamiltonian_vector(g, x)])

    def poisson_bracket_tensor(self, f: Observable, g: Observable, x: Sequence[float]) -> float:
        """``{F, G} = d_i F J^ij d_j G``."""
        return float(f.gradient(x) @ self.poisson_tensor(x) @ g.gradient(x))

    def bracket_observable(self, f: Observable, g: Observable) -> Observable:
        """``{F, G}`` as an observable for a constant ``Omega``.

        Raises:
            GeometryError: If ``Omega`` varies over the chart.
        """
        if not self._is_constant():
            raise GeometryError("Symbolic brackets need a constant Omega", self.chart.name)
        symbols = f.symbols
        poisson = self.poisson_tensor(self._center())
        grad_f = [sympy.diff(f.expression, s) for s in symbols]
        grad_g = [sympy.diff(g.expression, s) for s in symbols]
        expression = sum(
            sympy.nsimplify(poisson[i, j]) * grad_f[i] * grad_g[j]
            for i in range(len(symbols))
            for j in range(len(symbols))
            if poisson[i, j]
        )
        return Observable(sympy.expand(expression), self.chart)

    def _is_constant(self) -> bool:
        rng = np.random.default_rng(1)
        points = self.chart.sample_points(3, rng)
        first = self.omega_matrix(points[0])
        return all(np.allclose(self.omega_matrix(p), first) for p in points[1:])

    def _center(self) -> np.ndarray:
        return np.array([(lo + hi) / 2 if np.isfinite(lo + hi) else 0.0 for lo, hi in zip(self.chart.lows, self.chart.highs)])

    def bracket_homomorphism_residual(
        self, f: Observable, g: Observable, x: Sequence[float], step: Optional[float] = None
    ) -> float:
        """``|[h_F, h_G]_JLB + h_{F,G}|``; central differences are exact for quadratic fields at any ``step``."""
        bracket = jacobi_lie_bracket(self.hamiltonian_field(f), self.hamiltonian_field(g), x, step)
        expected = self.hamiltonian_vector(self.bracket_observable(f, g), x)
        return float(np.max(np.abs(bracket + expected)))

    def lie_derivative_residual(self, h: Observable, x: Sequence[float], step: Optional[float] = None) -> float:
        """``|L_{h_H} Omega|``."""
        return max_abs(lie_derivative(self.hamiltonian_field(h), self.omega, x, step))

    def flow(self, h: Observable, start: Sequence[float], dt: float, steps: int) -> np.ndarray:
        """RK4 trajectory of ``h_H``; row ``k`` is the state after ``k`` steps."""
        state = np.asarray(start, dtype=float)
        trajectory = np.zeros((steps + 1, self.chart.dim))
        trajectory[0] = state
        for k in range(steps):
            k1 = self.hamiltonian_vector(h, state)
            k2 = self.hamiltonian_vector(h, state + 0.5 * dt * k1)
            k3 = self.hamiltonian_vector(h, state + 0.5 * dt * k2)
            k4 = self.hamiltonian_vector(h, state + dt * k3)
            state = state + dt / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4)
            trajectory[k + 1] = state
        return trajectory

    def noether_check(
        self, h: Observable, f: Observable, start: Sequence[float], dt: float = 0.01, steps: int = 1000
    ) -> Dict[str, Any]:
        """``{F, H}`` along an RK4 flow of ``h_H`` and the drift of ``F``."""
        trajectory = self.flow(h, start, dt, steps)
        brackets = [abs(self.poisson_bracket_tensor(f, h, z)) for z in trajectory[:: max(1, steps // 20)]]
        values = np.array([f(z) for z in trajectory])
        drift = float(np.max(np.abs(values - values[0])))
        tol = settings_manager.get("tolerances.spatial_momentum", 1e-6)
        passed = max(brackets) <= tol and drift <= tol
        if not passed:
            logger.warning(f"Conserved quantity {f.expression} drifts by {drift:.3e}")
        return {"passed": passed, "max_bracket": max(brackets), "drift": drift, "steps": steps, "dt": dt}


# --------------------------------------------------------- Darboux charts


def darboux_omega(dof: int) -> ComponentField:
    """``Omega = dq^m ^ dp_m`` on ``(q^1..q^n, p_1..p_n)``."""
    return constant_field(2 * dof, 2, {(1 << m) | (1 << (dof + m)): 1.0 for m in range(dof)}, "Omega")


def symplectic_structures(chart: Optional[Chart] = None, omega: Optional[ComponentField] = None) -> SymplecticStructure:
    """Symplectic structure of ``chart`` (default: flat cotangent space of the line).

    Without ``omega`` the chart must be a cotangent chart and gets the
    Darboux form.
    """
    chart = chart or cotangent(plane(1))
    if omega is None:
        if "dof" not in chart.parameters:
            raise PhaseSpaceError(f"Chart {chart.name} has no canonical symplectic form; pass omega")
        omega = darboux_omega(int(chart.parameters["dof"]))
    return SymplecticStructure(chart, omega)


def canonical_one_form(dof: int) -> ComponentField:
    """``theta = p_m dq^m``."""
    return ComponentField(2 * dof, 1, lambda x: {1 << m: float(x[dof + m]) for m in range(dof)}, "theta")


def canonical_one_form_residual(structure: SymplecticStructure, x: Sequence[float]) -> float:
    """``|Omega + d theta|`` on a Darboux chart."""
    dof = structure.chart.dim // 2
    return max_abs(combine([(structure.omega(x), 1.0), (exterior_derivative(canonical_one_form(dof), x), 1.0)]))


def duality_one_form(dof: int, x: Sequence[float]) -> Components:
    """``theta(q + pi)`` from the duality star: ``(a + w) . theta = <(a + w) *_D (q + pi)>_0``."""
    signature = MetricSignature.duality_pairing(dof)
    backend = FloatBackend()
    position = Multivector.vector(signature, backend, [float(v) for v in x])
    out: Components = {}
    for i in range(2 * dof):
        value = Multivector.generator(signature, backend, i, 1.0).star(position).scalar_part().value
        if value:
            out[1 << i] = value
    return out


def duality_two_form(dof: int) -> np.ndarray:
    """``Omega_D[i, j] = <e_i *_D e_j - e_j *_D e_i>_0``."""
    signature = MetricSignature.duality_pairing(dof)
    backend = FloatBackend()
    basis = [Multivector.generator(signature, backend, i, 1.0) for i in range(2 * dof)]
    return np.array([[(a.star(b) - b.star(a)).scalar_part().value for b in basis] for a in basis])


def duality_residuals(structure: SymplecticStructure, x: Sequence[float]) -> Dict[str, float]:
    """``*_D`` reproduces ``theta = p dq`` and ``Omega`` on a flat cotangent chart."""
    dof = structure.chart.dim // 2
    theta = canonical_one_form(dof)(x)
    one_form = max_abs(combine([(duality_one_form(dof, x), 1.0), (theta, -1.0)]))
    two_form = float(np.max(np.abs(duality_two_form(dof) - structure.omega_matrix(x))))
    return {"one_form": one_form, "two_form": two_form}


def complex_structure_residual(structure: SymplecticStructure, x: Sequence[float]) -> float:
    """``|J J + 1|``; vanishes on a Darboux chart with the euclidean metric."""
    j = structure.poisson_tensor(x)
    return float(np.max(np.abs(j @ j + np.eye(structure.chart.dim))))


# ------------------------------------------------------- Kaehler, exact


def kahler_compatibility(dof: int = 1) -> Dict[str, Any]:
    """Exact compatibility of metric, ``J`` and ``Omega`` on flat ``R^2n``.

    With ``J = sum_m e_qm ^ e_pm``: ``a . b = a ._Sy (b . J)``,
    ``a ._Sy b = (a . J) . b`` and ``(a . J) . J = -a`` for symbolic ``a``, ``b``.
    """
    dim = 2 * dof
    names = tuple(f"a{i + 1}" for i in range(dim)) + tuple(f"b{i + 1}" for i in range(dim))
    registry = VariableRegistry(names)
    backend = ExactBackend(registry)
    metric = MetricSignature.euclidean(dim)
    symplectic = MetricSignature.symplectic_darboux(dof)
    a_comps: List = [registry.variable(f"a{i + 1}") for i in range(dim)]
    b_comps: List = [registry.variable(f"b{i + 1}") for i in range(dim)]
    a = Multivector.vector(metric, backend, a_comps)
    b = Multivector.vector(metric, backend, b_comps)
    j = Multivector.zero(metric, backend)
    for m in range(dof):
        j = j + Multivector.blade(metric, backend, [m, dof + m])

    def as_symplectic(v: Multivector) -> Multivector:
        return Multivector(symplectic, backend, v.blades)

    def symplectic_product(u: Multivector, v: Multivector):
        return as_symplectic(u).star(as_symplectic(v)).scalar_part()

    metric_residual = a.star(b).scalar_part() - symplectic_product(a, inner(b, j))
    symplectic_residual = symplectic_product(a, b) - inner(a, j).star(b).scalar_part()
    square_residual = inner(inner(a, j), j) + a
    passed = metric_residual.is_zero and symplectic_residual.is_zero and square_residual.is_zero
    return {
        "passed": passed,
        "metric_residual": metric_residual,
        "symplectic_residual": symplectic_residual,
        "square_residual": square_residual,
    }
