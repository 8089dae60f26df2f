"""Momentum maps of rotor-group actions on phase space."""

import logging
import math
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

import numpy as np

from exceptions import GeometryError, PhaseSpaceError
from moyal_engine import PhaseSpace, poisson_bracket
from multivector_core import Multivector, rotor_apply, rotor_exp
from scalar_ring import FloatBackend, PolyScalar
from settings import settings_manager

from .actions import adjoint, induced_vector_field, rebase
from .algebra import BivectorAlgebra
from .constructors import make_so3

logger = logging.getLogger(__name__)


@dataclass
class MomentumMapReport:
    """Generator functions ``P_{B_i}`` with their exact residuals."""

    generators: Dict[str, PolyScalar]
    algebra_residuals: Dict[str, PolyScalar] = field(default_factory=dict)
    field_residuals: Dict[str, List[PolyScalar]] = field(default_factory=dict)
    equivariance_residuals: Dict[str, float] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        exact = all(r.is_zero for r in self.algebra_residuals.values()) and all(
            c.is_zero for row in self.field_residuals.values() for c in row
        )
        tol = settings_manager.get("tolerances.symplectic", 1e-10)
        return exact and all(abs(r) <= tol for r in self.equivariance_residuals.values())

    def to_dict(self) -> Dict[str, Any]:
        return {
            "passed": self.passed,
            "generators": {k: str(v) for k, v in self.generators.items()},
            "algebra_residuals": {k: str(v) for k, v in self.algebra_residuals.items()},
            "field_residuals": {k: [str(c) for c in row] for k, row in self.field_residuals.items()},
            "equivariance_residuals": dict(self.equivariance_residuals),
        }


def _angular_components(ps: PhaseSpace) -> List[PolyScalar]:
    q = [ps.variable(n) for n in ps.configuration]
    p = [ps.variable(n) for n in ps.momenta]
    return [q[(i + 1) % 3] * p[(i + 2) % 3] - q[(i + 2) % 3] * p[(i + 1) % 3] for i in range(3)]


def lifted_induced_field(b: Multivector, ps: PhaseSpace) -> List[PolyScalar]:
    """Phase-space components of ``(B.q)^i eta_i + (B.p)^i rho_i``."""
    q = Multivector.vector(b.signature, b.backend, [ps.variable(n) for n in ps.configuration])
    p = Multivector.vector(b.signature, b.backend, [ps.variable(n) for n in ps.momenta])
    components = induced_vector_field(b, q).vector_components() + induced_vector_field(b, p).vector_components()
    return [ps.coerce(c) for c in components]


def momentum_map_angular(ps: Optional[PhaseSpace] = None, algebra: Optional[BivectorAlgebra] = None) -> MomentumMapReport:
    """Angular momentum ``P_{B_i} = eps_ijk q^j p_k`` for the so(3) action on ``T*R^3``.

    Checks ``{P_i, P_j} + C^k_ij P_k = 0``, ``h_{P_i} + lift(B_i . x) = 0`` and
    finite equivariance under sampled float rotors.

    Raises:
        PhaseSpaceError: If ``ps`` does not have three canonical degrees of freedom.
    """
    ps = ps or PhaseSpace.darboux(3)
    if ps.dof != 3 or len(ps.configuration) != 3 or len(ps.momenta) != 3:
        raise PhaseSpaceError("Angular momentum map needs three canonical degrees of freedom")
    algebra = algebra or make_so3()

    functions = _angular_components(ps)
    report = MomentumMapReport(generators=dict(zip(algebra.names, functions)))

    for i in range(3):
        for j in range(i + 1, 3):
            residual = poisson_bracket(functions[i], functions[j], ps)
            for k, c in enumerate(algebra.structure_constants[i][j]):
                if c:
                    residual = residual + functions[k] * c
            report.algebra_residuals[f"{algebra.names[i]},{algebra.names[j]}"] = residual

    for name, b, function in zip(algebra.names, algebra.generators, functions):
        hamiltonian = ps.hamiltonian_vector_field(function)
        lifted = lifted_induced_field(rebase(b, ps.registry), ps)
        report.field_residuals[name] = [h + v for h, v in zip(hamiltonian, lifted)]

    report.equivariance_residuals = finite_equivariance(algebra)
    logger.info(f"Angular momentum map checks passed: {report.passed}")
    return report


def bivector_coordinates(algebra: BivectorAlgebra, b: Multivector) -> np.ndarray:
    """Float coordinates of ``b`` for an algebra with diagonal Killing metric."""
    out = np.zeros(algebra.dim)
    for i, generator in enumerate(algebra.generators):
        kappa = float(algebra.killing[i][i])
        out[i] = generator.to_float().star(b).scalar_part().value / kappa
    return out


def _vector_array(x: Multivector) -> np.ndarray:
    return np.array([c.value for c in x.vector_components()])


def finite_equivariance(
    algebra: Optional[BivectorAlgebra] = None, samples: int = 5, seed: Optional[int] = None
) -> Dict[str, float]:
    """``P_{Ad_R B}(R q R~, R p R~) - P_B(q, p)`` for sampled rotors, generators and points."""
    algebra = algebra or make_so3()
    seed = seed if seed is not None else settings_manager.get("property_suite.seed", 0)
    rng = np.random.default_rng(seed)
    backend = FloatBackend()
    signature = algebra.signature
    generators = [b.to_float() for b in algebra.generators]
    residuals: Dict[str, float] = {}
    for sample in range(samples):
        coefficients = rng.normal(size=algebra.dim)
        bivector = generators[0].scale(0.0)
        for c, g in zip(coefficients, generators):
            bivector = bivector + g.scale(float(c))
        rotor = rotor_exp(bivector, 1.0)
        q = rng.normal(size=3)
        p = rng.normal(size=3)
        q_mv = Multivector.vector(signature, backend, list(q))
        p_mv = Multivector.vector(signature, backend, list(p))
        q_rot = _vector_array(rotor_apply(rotor, q_mv))
        p_rot = _vector_array(rotor_apply(rotor, p_mv))
        worst = 0.0
        for b in generators:
            before = bivector_coordinates(algebra, b) @ np.cross(q, p)
            after = bivector_coordinates(algebra, adjoint(rotor, b)) @ np.cross(q_rot, p_rot)
            worst = max(worst, abs(after - before))
        residuals[f"sample{sample + 1}"] = worst
    return residuals


def _sphere_point(theta: float, phi: float) -> np.ndarray:
    return np.array([math.sin(theta) * math.cos(phi), math.sin(theta) * math.sin(phi), math.cos(theta)])


def circle_action_s2(grid: int = 20, guard: Optional[float] = None, tol: Optional[float] = None) -> Dict[str, Any]:
    """Rotations about the third axis on the unit sphere.

    The induced field of ``B = -s1 s2`` is ``xi_phi``; the residual of
    ``iota_xi Omega = dP`` with ``Omega = sin(theta) dtheta ^ dphi`` and
    ``P = cos(theta)`` is evaluated on a ``grid x grid`` lattice, projecting
    the field onto coordinate directions with central differences.

    Raises:
        GeometryError: If the lattice reaches a pole.
    """
    guard = guard if guard is not None else settings_manager.get("numerics.pole_guard", 0.05)
    tol = tol if tol is not None else settings_manager.get("tolerances.circle_action", 1e-9)
    h = settings_manager.get("numerics.fd_step_first", 1e-5)
    if grid < 2:
        raise GeometryError(f"Lattice needs at least 2 points per axis, got {grid}", "sphere")
    if guard <= h or guard >= math.pi / 2:
        raise GeometryError(f"Pole guard {guard} does not keep the lattice away from the poles", "sphere")

    signature = make_so3().signature
    backend = FloatBackend()
    b = Multivector.blade(signature, backend, [0, 1], -1.0)

    thetas = np.linspace(guard, math.pi - guard, grid)
    phis = np.linspace(0.0, 2 * math.pi, grid, endpoint=False)
    worst = 0.0
    for theta in thetas:
        for phi in phis:
            x = _sphere_point(theta, phi)
            xi = _vector_array(induced_vector_field(b, Multivector.vector(signature, backend, list(x))))
            e_theta = (_sphere_point(theta + h, phi) - _sphere_point(theta - h, phi)) / (2 * h)
            e_phi = (_sphere_point(theta, phi + h) - _sphere_point(theta, phi - h)) / (2 * h)
            frame = np.stack([e_theta, e_phi])
            gram = frame @ frame.T
            components = np.linalg.solve(gram, frame @ xi)
            omega = math.sin(theta) * np.array([[0.0, 1.0], [-1.0, 0.0]])
            contraction = components @ omega
            dp = np.array([-math.sin(theta), 0.0])
            worst = max(worst, float(np.max(np.abs(contraction - dp))))
    passed = worst <= tol
    logger.info(f"Circle action on S2: max residual {worst:.3e} over {grid}x{grid} lattice")
    return {"passed": passed, "max_residual": worst, "grid": grid, "guard": guard}
