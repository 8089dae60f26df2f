"""Bivector Lie algebras, rotor-group actions, Lie-Poisson brackets and momentum maps."""

from .actions import (
    ad,
    ad_homomorphism_residual,
    ad_left_action_residual,
    adjoint,
    anti_homomorphism_residual,
    coadjoint,
    coadjoint_infinitesimal,
    coadjoint_pairing_residual,
    dual_pairing,
    induced_field_bracket,
    induced_vector_field,
    position_vector,
    rebase,
    unitary_invariance_check,
)
from .active_passive import (
    left_invariant_fields,
    lorentz_active_check,
    lorentz_active_generators,
    lorentz_metric_flip,
    lorentz_phase_space,
    moyal_action,
    oscillator_consistency,
    oscillator_rotor_matrix,
    so3_active_passive_residuals,
)
from .algebra import BivectorAlgebra, extract_structure, jacobi_residuals, killing_metric
from .constructors import (
    complex_structure,
    lorentz_generators,
    lorentz_sigma,
    make_algebra,
    make_gln,
    make_lorentz,
    make_so3,
    make_un,
    paired_signature,
)
from .lie_poisson import (
    casimir_residuals,
    dual_coordinates,
    dual_registry,
    lie_poisson_bracket,
    lie_poisson_jacobi,
    quadratic_casimir,
)
from .momentum_maps import (
    MomentumMapReport,
    circle_action_s2,
    finite_equivariance,
    lifted_induced_field,
    momentum_map_angular,
)

__all__ = [
    "BivectorAlgebra",
    "MomentumMapReport",
    "ad",
    "ad_homomorphism_residual",
    "ad_left_action_residual",
    "adjoint",
    "anti_homomorphism_residual",
    "casimir_residuals",
    "circle_action_s2",
    "coadjoint",
    "coadjoint_infinitesimal",
    "coadjoint_pairing_residual",
    "complex_structure",
    "dual_coordinates",
    "dual_pairing",
    "dual_registry",
    "extract_structure",
    "finite_equivariance",
    "induced_field_bracket",
    "induced_vector_field",
    "jacobi_residuals",
    "killing_metric",
    "left_invariant_fields",
    "lie_poisson_bracket",
    "lie_poisson_jacobi",
    "lifted_induced_field",
    "lorentz_active_check",
    "lorentz_active_generators",
    "lorentz_generators",
    "lorentz_metric_flip",
    "lorentz_phase_space",
    "lorentz_sigma",
    "make_algebra",
    "make_gln",
    "make_lorentz",
    "make_so3",
    "make_un",
    "momentum_map_angular",
    "moyal_action",
    "oscillator_consistency",
    "oscillator_rotor_matrix",
    "paired_signature",
    "position_vector",
    "quadratic_casimir",
    "rebase",
    "so3_active_passive_residuals",
    "unitary_invariance_check",
]
