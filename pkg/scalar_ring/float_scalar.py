"""Finite double-precision scalars for the numeric backend."""

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Union

from exceptions import BackendMismatchError, NonFiniteError

from .poly_scalar import PolyScalar

Real = Union[int, float, Fraction]


@dataclass(frozen=True)
class FloatScalar:
    """A real double that refuses to become NaN or Inf.

    Exact integers and Fractions coerce silently; ``PolyScalar`` operands
    raise ``BackendMismatchError``.
    """

    value: float
    backend_name = "float"

    def __post_init__(self):
        value = float(self.value)
        if not math.isfinite(value):
            raise NonFiniteError(f"Non-finite scalar {self.value!r}", "construct")
        object.__setattr__(self, "value", value)

    @staticmethod
    def _coerce(other: Any) -> Union[float, Any]:
        if isinstance(other, FloatScalar):
            return other.value
        if isinstance(other, bool):
            return NotImplemented
        if isinstance(other, (int, float, Fraction)):
            return float(other)
        if isinstance(other, PolyScalar):
            raise BackendMismatchError("Cannot mix float and exact scalars", "float", "exact")
        return NotImplemented

    def _checked(self, value: float, operation: str) -> "FloatScalar":
        if not math.isfinite(value):
            raise NonFiniteError(f"Result {value!r} is not finite", operation)
        return FloatScalar(value)

    def __add__(self, other: Any) -> "FloatScalar":
        value = self._coerce(other)
        if value is NotImplemented:
            return NotImplemented
        return self._checked(self.value + value, "add")

    __radd__ = __add__

    def __sub__(self, other: Any) -> "FloatScalar":
        value = self._coerce(other)
        if value is NotImplemented:
            return NotImplemented
        return self._checked(self.value - value, "sub")

    def __rsub__(self, other: Any) -> "FloatScalar":
        value = self._coerce(other)
        if value is NotImplemented:
            return NotImplemented
        return self._checked(value - self.value, "sub")

    def __mul__(self, other: Any) -> "FloatScalar":
        value = self._coerce(other)
        if value is NotImplemented:
            return NotImplemented
        return self._checked(self.value * value, "mul")

    __rmul__ = __mul__

    def __truediv__(self, other: Any) -> "FloatScalar":
        value = self._coerce(other)
        if value is NotImplemented:
            return NotImplemented
        if value == 0.0:
            raise NonFiniteError("Division by zero", "div")
        return self._checked(self.value / value, "div")

    def __neg__(self) -> "FloatScalar":
        return FloatScalar(-self.value)

    def __pow__(self, exponent: Real) -> "FloatScalar":
        try:
            return self._checked(self.value ** float(exponent), "pow")
        except (OverflowError, ZeroDivisionError) as e:
            raise NonFiniteError(str(e), "pow") from e

    def __abs__(self) -> "FloatScalar":
        return FloatScalar(abs(self.value))

    def __float__(self) -> float:
        return self.value

    def __bool__(self) -> bool:
        return self.value != 0.0

    def __eq__(self, other: object) -> bool:
        value = self._coerce(other) if not isinstance(other, str) else NotImplemented
        if value is NotImplemented:
            return NotImplemented
        return self.value == value

    def __lt__(self, other: Any) -> bool:
        return self.value < self._coerce(other)

    def __hash__(self) -> int:
        return hash(self.value)

    def isclose(self, other: Real, tol: float = 1e-12) -> bool:
        return abs(self.value - float(other)) <= tol

    def sqrt(self) -> "FloatScalar":
        if self.value < 0:
            raise NonFiniteError(f"Square root of negative value {self.value}", "sqrt")
        return FloatScalar(math.sqrt(self.value))

    def cos(self) -> "FloatScalar":
        return FloatScalar(math.cos(self.value))

    def sin(self) -> "FloatScalar":
        return FloatScalar(math.sin(self.value))

    def cosh(self) -> "FloatScalar":
        return self._checked(math.cosh(self.value), "cosh")

    def sinh(self) -> "FloatScalar":
        return self._checked(math.sinh(self.value), "sinh")
