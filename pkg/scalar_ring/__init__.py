"""Coefficient ring: exact Gaussian-rational polynomials and finite floats."""

from .backend import Coefficient, ExactBackend, FloatBackend, exact_to_float
from .float_scalar import FloatScalar
from .poly_scalar import PolyScalar
from .registry import (
    VariableRegistry,
    default_registry,
    format_rational,
    from_gaussian,
    parse_rational,
    to_gaussian,
)
from .serialization import poly_from_dict, poly_from_json, poly_to_dict, poly_to_json

__all__ = [
    "Coefficient",
    "ExactBackend",
    "FloatBackend",
    "FloatScalar",
    "PolyScalar",
    "VariableRegistry",
    "default_registry",
    "exact_to_float",
    "format_rational",
    "from_gaussian",
    "parse_rational",
    "poly_from_dict",
    "poly_from_json",
    "poly_to_dict",
    "poly_to_json",
    "to_gaussian",
]
