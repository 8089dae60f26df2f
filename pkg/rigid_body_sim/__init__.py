"""Free rigid-body dynamics on the so(3) bivector algebra."""

from .dynamics import (
    RigidBodyState,
    Trajectory,
    bivector_rhs,
    convergence_study,
    euler_rhs,
    hamilton_form_residual,
    integrate,
    lie_poisson_equations,
    lie_poisson_rhs,
    normalize_rotor,
    reversal_error,
    rhs_agreement,
    rotor_rhs,
    run_rk4,
)
from .inertia import InertiaOperator, bivector, bivector_coordinates, casimir, cross
from .poincare import (
    euler_poincare_vector_residual,
    group_velocity,
    poincare_convergence,
    poincare_report,
    poincare_residual,
    reconstruction_residual,
    time_derivative,
)

__all__ = [
    "InertiaOperator",
    "RigidBodyState",
    "Trajectory",
    "bivector",
    "bivector_coordinates",
    "bivector_rhs",
    "casimir",
    "convergence_study",
    "cross",
    "euler_poincare_vector_residual",
    "euler_rhs",
    "group_velocity",
    "hamilton_form_residual",
    "integrate",
    "lie_poisson_equations",
    "lie_poisson_rhs",
    "normalize_rotor",
    "poincare_convergence",
    "poincare_report",
    "poincare_residual",
    "reconstruction_residual",
    "reversal_error",
    "rhs_agreement",
    "rotor_rhs",
    "run_rk4",
    "time_derivative",
]
