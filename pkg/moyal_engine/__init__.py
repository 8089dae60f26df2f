"""Moyal and extended Moyal-Clifford calculus on polynomial phase spaces."""

from .brst import BrstCharges, brst_charges, brst_checks
from .extended import (
    ExtendedPhaseSpace,
    compare_equations_of_motion,
    equations_of_motion_expected,
    extended_equations_of_motion,
    extended_hamiltonian,
    extended_lagrangian_terms,
    extended_poisson_bracket,
    extended_star,
    grassmann_parity,
    passive_hamiltonian_candidate,
    passive_hamiltonian_check,
    super_jacobi_residual,
)
from .flows import LinearFlow, hamiltonian_flow_quadratic, quadratic_hessian
from .gln_bosonic import bilinear_coordinates, configuration_preserving, gln_bosonic_generators, gln_closure
from .moyal import (
    bidifferential_exponential,
    check_bracket_limit,
    classical_limit,
    hbar_coefficient,
    moyal_power,
    moyal_star,
    poisson_bracket,
    star_commutator,
)
from .phase_space import HBAR, PhaseSpace

__all__ = [
    "BrstCharges",
    "ExtendedPhaseSpace",
    "HBAR",
    "LinearFlow",
    "PhaseSpace",
    "bidifferential_exponential",
    "bilinear_coordinates",
    "brst_charges",
    "brst_checks",
    "check_bracket_limit",
    "classical_limit",
    "compare_equations_of_motion",
    "configuration_preserving",
    "equations_of_motion_expected",
    "extended_equations_of_motion",
    "extended_hamiltonian",
    "extended_lagrangian_terms",
    "extended_poisson_bracket",
    "extended_star",
    "gln_bosonic_generators",
    "gln_closure",
    "grassmann_parity",
    "hamiltonian_flow_quadratic",
    "hbar_coefficient",
    "moyal_power",
    "moyal_star",
    "passive_hamiltonian_candidate",
    "passive_hamiltonian_check",
    "poisson_bracket",
    "quadratic_hessian",
    "star_commutator",
    "super_jacobi_residual",
]
