"""Coefficient backends: exact polynomials or finite floats.

A backend is chosen per computation. Multivectors carry their backend and
refuse to combine with a multivector on a different one.
"""

from fractions import Fraction
from typing import Any, Union

from exceptions import BackendMismatchError

from .float_scalar import FloatScalar
from .poly_scalar import PolyScalar
from .registry import VariableRegistry, default_registry

Coefficient = Union[PolyScalar, FloatScalar]


class ExactBackend:
    """Coefficients are ``PolyScalar`` values in one registry."""

    name = "exact"
    is_exact = True

    def __init__(self, registry: VariableRegistry = None):
        self.registry = registry if registry is not None else default_registry()
        self.zero = self.registry.zero()
        self.one = self.registry.one()

    def coerce(self, value: Any) -> PolyScalar:
        if isinstance(value, PolyScalar):
            if value.registry != self.registry:
                return value.lift(self.registry)
            return value
        if isinstance(value, (int, Fraction)) and not isinstance(value, bool):
            return self.registry.constant(Fraction(value))
        if isinstance(value, tuple) and len(value) == 2:
            return self.registry.constant(Fraction(value[0]), Fraction(value[1]))
        raise BackendMismatchError(
            f"Cannot use {type(value).__name__} as an exact coefficient", self.name, "float"
        )

    def __eq__(self, other: object) -> bool:
        return isinstance(other, ExactBackend) and other.registry == self.registry

    def __hash__(self) -> int:
        return hash((self.name, self.registry))

    def __repr__(self) -> str:
        return f"ExactBackend({list(self.registry.names)!r})"


class FloatBackend:
    """Coefficients are ``FloatScalar`` values."""

    name = "float"
    is_exact = False

    def __init__(self):
        self.zero = FloatScalar(0.0)
        self.one = FloatScalar(1.0)

    def coerce(self, value: Any) -> FloatScalar:
        if isinstance(value, FloatScalar):
            return value
        if isinstance(value, PolyScalar):
            raise BackendMismatchError("Exact coefficient in a float computation", self.name, "exact")
        return FloatScalar(float(value))

    def __eq__(self, other: object) -> bool:
        return isinstance(other, FloatBackend)

    def __hash__(self) -> int:
        return hash(self.name)

    def __repr__(self) -> str:
        return "FloatBackend()"


def exact_to_float(value: PolyScalar) -> FloatScalar:
    """Converts a real constant polynomial to a float scalar."""
    re, im = value.constant_value()
    if im != 0:
        raise BackendMismatchError(f"Complex constant {value} has no real float image", "exact", "float")
    return FloatScalar(float(re))
