"""Grassmann/Clifford kernel: sparse multivectors and star products."""

from .duality import dual_by_pseudoscalar, hodge_dual, inverse_hodge_dual, pseudoscalar
from .multivector import Multivector, blade_from_mask, combine, generators
from .operations import (
    anticommutator_product,
    blade_label,
    clifford_star,
    commutator_product,
    even_part,
    grade_project,
    graded_star_commutator,
    grassmann_derivative,
    inner,
    inverse,
    norm_squared,
    odd_part,
    outer,
    reverse,
    scalar_product,
    wedge,
)
from .products import mask_of, multiplication_table, popcount, product_table
from .rotor import Rotor, as_rotor, passive_rotor_apply, rotor_apply, rotor_exp, spin_component
from .serialization import (
    multivector_from_dict,
    multivector_from_json,
    multivector_to_dict,
    multivector_to_json,
)
from .signature import MetricSignature

__all__ = [
    "MetricSignature",
    "Multivector",
    "Rotor",
    "anticommutator_product",
    "as_rotor",
    "blade_from_mask",
    "blade_label",
    "clifford_star",
    "combine",
    "commutator_product",
    "dual_by_pseudoscalar",
    "even_part",
    "generators",
    "grade_project",
    "graded_star_commutator",
    "grassmann_derivative",
    "hodge_dual",
    "inner",
    "inverse",
    "inverse_hodge_dual",
    "mask_of",
    "multiplication_table",
    "multivector_from_dict",
    "multivector_from_json",
    "multivector_to_dict",
    "multivector_to_json",
    "norm_squared",
    "odd_part",
    "outer",
    "passive_rotor_apply",
    "popcount",
    "product_table",
    "pseudoscalar",
    "reverse",
    "rotor_apply",
    "rotor_exp",
    "scalar_product",
    "spin_component",
    "wedge",
]
