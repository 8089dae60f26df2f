"""Bivector Poincare equation residuals along integrated trajectories.

The reconstruction ``dR/dt = -1/2 R * W_B`` reads ``dR/dt = 1/2 R * s``
for the group velocity ``s = 2 reverse(R) * dR/dt = -W_B``. The free-body
Poincare equation ``d/dt (dl/ds) - (dl/ds) x s = 0`` is checked in that
variable, with ``dl/ds = I(s)`` for the quadratic Lagrangian.
"""

import logging
from typing import Any, Callable, Dict, Optional, Sequence

import numpy as np

from settings import settings_manager

from .dynamics import RigidBodyState, Trajectory, product_tensor, reversion_signs, run_rk4
from .inertia import InertiaOperator, bivector_basis, cross

logger = logging.getLogger(__name__)

LagrangianGradient = Callable[[np.ndarray], np.ndarray]


def time_derivative(series: np.ndarray, dt: float) -> np.ndarray:
    """Five-point central differences on rows ``2 .. N-2``."""
    if len(series) < 5:
        return np.zeros((0,) + series.shape[1:])
    return (-series[4:] + 8 * series[3:-1] - 8 * series[1:-3] + series[:-4]) / (12 * dt)


def group_velocity(trajectory: Trajectory) -> np.ndarray:
    """``s = -W_B`` coordinates per row."""
    return -trajectory.angular_velocity


def poincare_residual(trajectory: Trajectory, gradient: Optional[LagrangianGradient] = None) -> np.ndarray:
    """Max-norm of ``d/dt I(s) - I(s) x s`` on interior rows."""
    gradient = gradient or trajectory.inertia.apply
    s = group_velocity(trajectory)
    momentum = np.array([gradient(v) for v in s])
    derivative = time_derivative(momentum, trajectory.dt)
    transport = np.array([cross(m, v) for m, v in zip(momentum[2:-2], s[2:-2])])
    if not len(derivative):
        return derivative
    return np.max(np.abs(derivative - transport), axis=1)


def euler_poincare_vector_residual(trajectory: Trajectory) -> np.ndarray:
    """Max-norm of ``dL/dt - L cross w`` on interior rows."""
    derivative = time_derivative(trajectory.angular_momentum, trajectory.dt)
    if not len(derivative):
        return derivative
    transport = np.cross(trajectory.angular_momentum[2:-2], trajectory.angular_velocity[2:-2])
    return np.max(np.abs(derivative - transport), axis=1)


def reconstruction_residual(trajectory: Trajectory) -> np.ndarray:
    """Max-norm of ``2 reverse(R) * dR/dt - s`` as dense multivectors on interior rows."""
    derivative = time_derivative(trajectory.rotors, trajectory.dt)
    if not len(derivative):
        return derivative
    rotors = trajectory.rotors[2:-2] * reversion_signs()
    velocity = 2 * np.einsum("ka,kb,abc->kc", rotors, derivative, product_tensor())
    expected = group_velocity(trajectory)[2:-2] @ bivector_basis()
    return np.max(np.abs(velocity - expected), axis=1)


def poincare_report(trajectory: Trajectory) -> Dict[str, Any]:
    tol = settings_manager.get("tolerances.poincare", 1e-6)
    bivector_form = poincare_residual(trajectory)
    vector_form = euler_poincare_vector_residual(trajectory)
    reconstruction = reconstruction_residual(trajectory)
    values = {
        "bivector": float(np.max(bivector_form, initial=0.0)),
        "vector": float(np.max(vector_form, initial=0.0)),
        "reconstruction": float(np.max(reconstruction, initial=0.0)),
    }
    passed = all(v <= tol for v in values.values())
    if not passed:
        logger.warning(f"Poincare residuals above {tol:.1e}: {values}")
    return {"residuals": values, "tolerance": tol, "passed": passed}


def poincare_convergence(
    state: RigidBodyState, inertia: InertiaOperator, duration: float = 2.0, dts: Sequence[float] = (0.1, 0.05, 0.025)
) -> Dict[str, Any]:
    """Largest bivector-form residual per step size and the observed orders."""
    residuals = []
    for dt in dts:
        trajectory = run_rk4(state, inertia, dt, int(round(duration / dt)))
        residuals.append(float(np.max(poincare_residual(trajectory), initial=0.0)))
    orders = [
        float(np.log(residuals[k] / residuals[k + 1]) / np.log(dts[k] / dts[k + 1]))
        for k in range(len(dts) - 1)
        if residuals[k + 1] > 0
    ]
    return {"dts": list(dts), "residuals": residuals, "orders": orders}
