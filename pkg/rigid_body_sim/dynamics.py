"""Euler equations as a Lie-Poisson flow with rotor reconstruction.

Conventions: ``W_B = I^-1(L_B)`` is the body angular-velocity bivector,
``dL_B/dt = W_B x L_B`` and ``dR/dt = -1/2 R * W_B``. With
``W_B = w_i B_i`` the components obey ``I1 dw1/dt = (I2 - I3) w2 w3``
and cyclic, and spatial vectors move as ``dx/dt = w cross x``.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from exceptions import InertiaError, IntegrationError
from lie_rotor import dual_registry, lie_poisson_bracket
from multivector_core import Multivector, Rotor, commutator_product, popcount, product_table
from scalar_ring import PolyScalar
from settings import settings_manager
from utils import computation_context, performance_monitor

from .inertia import InertiaOperator, bivector, bivector_basis, bivector_coordinates, so3, structure_tensor

logger = logging.getLogger(__name__)


@lru_cache(maxsize=1)
def product_tensor() -> np.ndarray:
    return product_table(so3().signature).dense()


@lru_cache(maxsize=1)
def reversion_signs() -> np.ndarray:
    return np.array([-1.0 if (popcount(m) * (popcount(m) - 1) // 2) & 1 else 1.0 for m in range(8)])


def star(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Clifford product of dense euclidean-3 multivectors."""
    return np.einsum("a,b,abc->c", a, b, product_tensor())


def reverse(a: np.ndarray) -> np.ndarray:
    return reversion_signs() * a


def identity_rotor() -> np.ndarray:
    out = np.zeros(8)
    out[0] = 1.0
    return out


def normalize_rotor(r: np.ndarray) -> np.ndarray:
    """Rescales so that ``<R * reverse(R)>_0 = 1``."""
    return r / np.sqrt(star(r, reverse(r))[0])


# ------------------------------------------------------------------ state


@dataclass
class RigidBodyState:
    """``L_B`` coordinates in ``B1, B2, B3`` and the dense rotor ``R``."""

    t: float
    angular_momentum: np.ndarray
    rotor: np.ndarray = field(default_factory=identity_rotor)

    @classmethod
    def initial(cls, angular_momentum: Sequence[float], rotor: Optional[Multivector] = None) -> "RigidBodyState":
        l0 = np.asarray(angular_momentum, dtype=float)
        if l0.shape != (3,) or not np.all(np.isfinite(l0)):
            raise IntegrationError("Initial angular momentum must be three finite numbers", 0)
        r0 = identity_rotor() if rotor is None else normalize_rotor(rotor.to_dense())
        return cls(0.0, l0, r0)

    def angular_velocity(self, inertia: InertiaOperator) -> np.ndarray:
        return inertia.inverse(self.angular_momentum)

    def rotor_value(self, tol: Optional[float] = None) -> Rotor:
        tol = tol if tol is not None else settings_manager.get("rigid_body.rotor_unit_tol", 1e-9)
        return Rotor(Multivector.from_dense(so3().signature, self.rotor), tol)


# ---------------------------------------------------------- right-hand sides


def euler_rhs(angular_momentum: Sequence[float], inertia: InertiaOperator) -> np.ndarray:
    """``dL_B/dt`` from the cyclic component form ``I1 dw1/dt = (I2 - I3) w2 w3``."""
    l = np.asarray(angular_momentum, dtype=float)
    w = inertia.inverse(l)
    if not inertia.is_principal:
        return np.cross(l, w)
    i1, i2, i3 = inertia.moments
    return np.array([(i2 - i3) * w[1] * w[2], (i3 - i1) * w[2] * w[0], (i1 - i2) * w[0] * w[1]])


def lie_poisson_rhs(angular_momentum: Sequence[float], inertia: InertiaOperator) -> np.ndarray:
    """``dtheta_a/dt = {theta_a, H} = C^k_aj theta_k dH/dtheta_j``."""
    l = np.asarray(angular_momentum, dtype=float)
    return np.einsum("ajk,k,j->a", structure_tensor(), l, inertia.inverse(l))


def bivector_rhs(angular_momentum: Sequence[float], inertia: InertiaOperator) -> np.ndarray:
    """``W_B x L_B`` through the multivector commutator product."""
    l = np.asarray(angular_momentum, dtype=float)
    return bivector_coordinates(commutator_product(bivector(inertia.inverse(l)), bivector(l)))


def lie_poisson_equations(inertia: InertiaOperator) -> Tuple[PolyScalar, ...]:
    """Exact ``{theta_a, H}`` for ``H = sum theta_i^2 / (2 I_i)`` on principal axes.

    Raises:
        InertiaError: If the inertia tensor is not diagonal.
    """
    if not inertia.is_principal:
        raise InertiaError("Exact Lie-Poisson equations need principal axes", inertia.moments)
    algebra = so3()
    registry = dual_registry(algebra)
    theta = [registry.variable(f"theta{i + 1}") for i in range(3)]
    hamiltonian = registry.zero()
    for t, moment in zip(theta, inertia.moments):
        hamiltonian = hamiltonian + t * t * (Fraction(1, 2) / Fraction(moment))
    return tuple(lie_poisson_bracket(t, hamiltonian, algebra) for t in theta)


def rhs_agreement(angular_momentum: Sequence[float], inertia: InertiaOperator) -> Dict[str, float]:
    """Differences between the Euler, Lie-Poisson and commutator right-hand sides."""
    l = np.asarray(angular_momentum, dtype=float)
    euler = euler_rhs(l, inertia)
    out = {
        "lie_poisson": float(np.max(np.abs(lie_poisson_rhs(l, inertia) - euler))),
        "commutator": float(np.max(np.abs(bivector_rhs(l, inertia) - euler))),
        "hamilton_form": hamilton_form_residual(l, inertia),
    }
    if inertia.is_principal:
        bindings = {f"theta{i + 1}": float(v) for i, v in enumerate(l)}
        exact = np.array([float(np.real(e.evaluate(bindings))) for e in lie_poisson_equations(inertia)])
        out["exact_lie_poisson"] = float(np.max(np.abs(exact - euler)))
    return out


def hamilton_form_residual(angular_momentum: Sequence[float], inertia: InertiaOperator) -> float:
    """``|dz/dt - z cross dH|`` with ``dH = dH/dL = I^-1(L)``."""
    l = np.asarray(angular_momentum, dtype=float)
    return float(np.max(np.abs(lie_poisson_rhs(l, inertia) - np.cross(l, inertia.inverse(l)))))


def rotor_rhs(rotor: np.ndarray, angular_velocity: Sequence[float]) -> np.ndarray:
    """``dR/dt = -1/2 R * W_B``."""
    return -0.5 * star(rotor, np.asarray(angular_velocity, dtype=float) @ bivector_basis())


# ---------------------------------------------------------------- integration


@dataclass
class Trajectory:
    """Sampled states of one run; row ``k`` is time ``times[k]``."""

    inertia: InertiaOperator
    dt: float
    times: np.ndarray
    angular_momentum: np.ndarray
    rotors: np.ndarray

    @property
    def steps(self) -> int:
        return len(self.times) - 1

    @property
    def angular_velocity(self) -> np.ndarray:
        return np.linalg.solve(self.inertia.tensor, self.angular_momentum.T).T

    @property
    def energy(self) -> np.ndarray:
        return 0.5 * np.einsum("ki,ki->k", self.angular_momentum, self.angular_velocity)

    @property
    def casimir(self) -> np.ndarray:
        return np.einsum("ki,ki->k", self.angular_momentum, self.angular_momentum)

    @property
    def spatial_momentum(self) -> np.ndarray:
        """Coordinates of ``L = R * L_B * reverse(R)`` per row."""
        body = self.angular_momentum @ bivector_basis()
        left = np.einsum("ka,kb,abc->kc", self.rotors, body, product_tensor())
        spatial = np.einsum("ka,kb,abc->kc", left, self.rotors * reversion_signs(), product_tensor())
        return spatial @ bivector_basis().T

    @property
    def final_state(self) -> RigidBodyState:
        return RigidBodyState(float(self.times[-1]), self.angular_momentum[-1].copy(), self.rotors[-1].copy())

    def drifts(self) -> Dict[str, float]:
        spatial = self.spatial_momentum
        return {
            "casimir": float(np.max(np.abs(self.casimir - self.casimir[0]))),
            "energy": float(np.max(np.abs(self.energy - self.energy[0]))),
            "spatial_momentum": float(np.max(np.linalg.norm(spatial - spatial[0], axis=1))),
            "rotor_unit": float(np.max(np.abs([star(r, reverse(r))[0] - 1.0 for r in self.rotors]))),
        }

    def orientation_matrix(self, index: int = -1) -> np.ndarray:
        """``M[i, j] = s_i . (R * s_j * reverse(R))``."""
        r = self.rotors[index]
        out = np.zeros((3, 3))
        for j in range(3):
            image = star(star(r, np.eye(8)[1 << j]), reverse(r))
            out[:, j] = [image[1 << i] for i in range(3)]
        return out

    def orthogonality_residual(self, index: int = -1) -> float:
        m = self.orientation_matrix(index)
        return float(np.max(np.abs(m.T @ m - np.eye(3))))

    def rows(self) -> List[Dict[str, float]]:
        """CSV rows: ``t``, ``L_B``, energy, Casimir, rotor components and spatial drift."""
        spatial = self.spatial_momentum
        drift = np.linalg.norm(spatial - spatial[0], axis=1)
        energy, cas = self.energy, self.casimir
        out = []
        for k, t in enumerate(self.times):
            l, r = self.angular_momentum[k], self.rotors[k]
            bivector_part = bivector_basis() @ r
            out.append(
                {
                    "t": float(t),
                    "L1": float(l[0]),
                    "L2": float(l[1]),
                    "L3": float(l[2]),
                    "energy": float(energy[k]),
                    "casimir": float(cas[k]),
                    "R0": float(r[0]),
                    "R_B1": float(bivector_part[0]),
                    "R_B2": float(bivector_part[1]),
                    "R_B3": float(bivector_part[2]),
                    "spatial_drift": float(drift[k]),
                }
            )
        return out

    def summary(self) -> Dict[str, Any]:
        drifts = self.drifts()
        limits = {
            "casimir": settings_manager.get("tolerances.rigid_body_casimir", 1e-10),
            "energy": settings_manager.get("tolerances.rigid_body_energy", 1e-8),
            "spatial_momentum": settings_manager.get("tolerances.spatial_momentum", 1e-6),
            "rotor_unit": settings_manager.get("rigid_body.rotor_unit_tol", 1e-9),
        }
        checks = {name: {"value": drifts[name], "tolerance": limit, "passed": drifts[name] <= limit} for name, limit in limits.items()}
        orthogonality = self.orthogonality_residual()
        checks["orientation"] = {
            "value": orthogonality,
            "tolerance": limits["rotor_unit"],
            "passed": orthogonality <= limits["rotor_unit"],
        }
        return {
            "moments": list(self.inertia.moments),
            "dt": self.dt,
            "steps": self.steps,
            "checks": checks,
            "passed": all(c["passed"] for c in checks.values()),
        }


def _derivative(l: np.ndarray, r: np.ndarray, inertia: InertiaOperator) -> Tuple[np.ndarray, np.ndarray]:
    w = inertia.inverse(l)
    return euler_rhs(l, inertia), rotor_rhs(r, w)


def run_rk4(state: RigidBodyState, inertia: InertiaOperator, dt: float, steps: int) -> Trajectory:
    times = state.t + dt * np.arange(steps + 1)
    momenta = np.zeros((steps + 1, 3))
    rotors = np.zeros((steps + 1, 8))
    l, r = state.angular_momentum.astype(float), normalize_rotor(state.rotor.astype(float))
    momenta[0], rotors[0] = l, r
    for k in range(1, steps + 1):
        dl1, dr1 = _derivative(l, r, inertia)
        dl2, dr2 = _derivative(l + 0.5 * dt * dl1, r + 0.5 * dt * dr1, inertia)
        dl3, dr3 = _derivative(l + 0.5 * dt * dl2, r + 0.5 * dt * dr2, inertia)
        dl4, dr4 = _derivative(l + dt * dl3, r + dt * dr3, inertia)
        l = l + dt / 6.0 * (dl1 + 2 * dl2 + 2 * dl3 + dl4)
        r = r + dt / 6.0 * (dr1 + 2 * dr2 + 2 * dr3 + dr4)
        if not (np.all(np.isfinite(l)) and np.all(np.isfinite(r))):
            raise IntegrationError("Trajectory produced non-finite values", k)
        r = normalize_rotor(r)
        momenta[k], rotors[k] = l, r
    return Trajectory(inertia, dt, times, momenta, rotors)


def integrate(
    state: RigidBodyState,
    inertia: InertiaOperator,
    dt: Optional[float] = None,
    steps: Optional[int] = None,
    method: str = "rk4",
) -> Trajectory:
    """Classical RK4 for ``(L_B, R)`` with the rotor renormalized after each step.

    Raises:
        IntegrationError: For a non-positive step, an unknown method or a
            non-finite state (with the failing step index).
    """
    dt = dt if dt is not None else settings_manager.get("rigid_body.dt", 1e-3)
    steps = steps if steps is not None else settings_manager.get("rigid_body.steps", 10000)
    if method.lower() != "rk4":
        raise IntegrationError(f"Unknown integration method {method!r}", 0)
    if not dt > 0:
        raise IntegrationError(f"Time step must be positive, got {dt}", 0)
    if steps < 1:
        raise IntegrationError(f"Step count must be positive, got {steps}", 0)
    with computation_context(f"moments {inertia.moments}", "rigid-body integration"):
        with performance_monitor("rk4") as metrics:
            trajectory = run_rk4(state, inertia, dt, steps)
            metrics["steps"] = steps
    logger.info(f"Integrated {steps} steps of dt={dt} in {metrics['duration']:.2f}s")
    return trajectory


def reversal_error(state: RigidBodyState, inertia: InertiaOperator, dt: float, steps: int) -> float:
    """Integrates forward then backward and returns the largest deviation from ``state``."""
    forward = run_rk4(state, inertia, dt, steps)
    backward = run_rk4(forward.final_state, inertia, -dt, steps)
    end = backward.final_state
    start_rotor = normalize_rotor(state.rotor)
    return float(
        max(
            np.max(np.abs(end.angular_momentum - state.angular_momentum)),
            np.max(np.abs(end.rotor - start_rotor)),
        )
    )


def convergence_study(
    state: RigidBodyState, inertia: InertiaOperator, duration: float = 1.0, dts: Sequence[float] = (0.1, 0.05, 0.025)
) -> Dict[str, Any]:
    """Final-state errors against a ``dt / 16`` reference and the observed orders."""
    finest = min(dts) / 16
    reference = run_rk4(state, inertia, finest, int(round(duration / finest))).final_state
    errors = []
    for dt in dts:
        end = run_rk4(state, inertia, dt, int(round(duration / dt))).final_state
        errors.append(
            float(
                max(
                    np.max(np.abs(end.angular_momentum - reference.angular_momentum)),
                    np.max(np.abs(end.rotor - reference.rotor)),
                )
            )
        )
    orders = [
        float(np.log(errors[k] / errors[k + 1]) / np.log(dts[k] / dts[k + 1]))
        for k in range(len(dts) - 1)
        if errors[k + 1] > 0
    ]
    return {"dts": list(dts), "errors": errors, "orders": orders}
