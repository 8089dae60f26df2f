"""Exact polynomials over the Gaussian rationals.

``PolyScalar`` wraps a sympy ``PolyElement`` over ``QQ_I`` together with the
``VariableRegistry`` it lives in. Values are immutable; every operation
returns a new scalar. Mixing registries or mixing with floats is an error.
"""

import logging
import math
from fractions import Fraction
from typing import Any, Dict, Iterable, List, Mapping, Optional, Tuple, Union

from sympy.polys.domains import QQ_I

from exceptions import BackendMismatchError, NonFiniteError, PhaseSpaceError, RegistryError

from .registry import (
    GaussianPair,
    VariableRegistry,
    from_gaussian,
    gaussian_inverse,
    to_gaussian,
)

logger = logging.getLogger(__name__)

Exponents = Tuple[int, ...]
Binding = Union[int, Fraction, float, complex, Tuple[Fraction, Fraction]]


def _exact_binding(value: Binding):
    """Converts an exact binding (int, Fraction or (re, im) pair) to ``QQ_I``."""
    if isinstance(value, tuple):
        re, im = value
        return to_gaussian(Fraction(re), Fraction(im))
    return to_gaussian(Fraction(value))


def _is_float_binding(value: Binding) -> bool:
    return isinstance(value, (float, complex))


class PolyScalar:
    """Exact multivariate polynomial with Gaussian-rational coefficients.

    Instances are normally obtained from a registry
    (``registry.variable("q")``, ``registry.constant(1, 2)``) and combined
    with ``+``, ``-``, ``*`` and ``**``. Plain ``int`` and ``Fraction``
    operands are coerced to constants.
    """

    __slots__ = ("_registry", "_element")

    def __init__(self, registry: VariableRegistry, element):
        self._registry = registry
        self._element = element

    # ------------------------------------------------------------------ basics

    @classmethod
    def from_terms(
        cls, registry: VariableRegistry, terms: Mapping[Exponents, GaussianPair]
    ) -> "PolyScalar":
        """Builds a polynomial from ``{exponents: (re, im)}``; zero terms are dropped."""
        data = {}
        for exponents, (re, im) in terms.items():
            if len(exponents) != len(registry):
                raise RegistryError(
                    f"Exponent vector of length {len(exponents)} does not match registry",
                    ",".join(registry.names),
                )
            if re == 0 and im == 0:
                continue
            data[tuple(int(e) for e in exponents)] = to_gaussian(Fraction(re), Fraction(im))
        return cls(registry, registry.ring.from_dict(data) if data else registry.ring.zero)

    @property
    def registry(self) -> VariableRegistry:
        return self._registry

    @property
    def element(self):
        """Underlying sympy ``PolyElement``."""
        return self._element

    @property
    def is_zero(self) -> bool:
        return not self._element

    @property
    def is_constant(self) -> bool:
        return all(not any(monom) for monom in self._element.keys())

    def constant_value(self) -> GaussianPair:
        """Returns ``(re, im)`` of a constant polynomial.

        Raises:
            PhaseSpaceError: If the polynomial depends on a variable.
        """
        if not self.is_constant:
            raise PhaseSpaceError(f"Polynomial {self} is not constant")
        if self.is_zero:
            return (Fraction(0), Fraction(0))
        zero_monom = (0,) * len(self._registry)
        return from_gaussian(self._element[zero_monom])

    def terms(self) -> List[Tuple[Exponents, GaussianPair]]:
        """Canonically sorted ``(exponents, (re, im))`` list."""
        return sorted((monom, from_gaussian(coeff)) for monom, coeff in self._element.items())

    def variables(self) -> Tuple[str, ...]:
        """Names of variables that occur with a positive exponent."""
        used = set()
        for monom in self._element.keys():
            used.update(i for i, e in enumerate(monom) if e)
        return tuple(self._registry.names[i] for i in sorted(used))

    def degree(self, variables: Optional[Iterable[str]] = None) -> int:
        """Total degree in ``variables`` (all by default); ``-1`` for the zero polynomial."""
        if self.is_zero:
            return -1
        if variables is None:
            indices = range(len(self._registry))
        else:
            indices = [self._registry.index(name) for name in variables]
        return max(sum(monom[i] for i in indices) for monom in self._element.keys())

    # -------------------------------------------------------------- arithmetic

    def _coerce(self, other: Any):
        if isinstance(other, PolyScalar):
            if other._registry != self._registry:
                raise RegistryError(
                    "Operands belong to different registries",
                    f"{self._registry.names} vs {other._registry.names}",
                )
            return other._element
        if isinstance(other, bool):
            return NotImplemented
        if isinstance(other, (int, Fraction)):
            return self._registry.ring.ground_new(to_gaussian(Fraction(other)))
        if isinstance(other, (float, complex)):
            raise BackendMismatchError("Cannot mix exact and float scalars", "exact", "float")
        if getattr(other, "backend_name", None) == "float":
            raise BackendMismatchError("Cannot mix exact and float scalars", "exact", "float")
        return NotImplemented

    def _wrap(self, element) -> "PolyScalar":
        return PolyScalar(self._registry, element)

    def __add__(self, other: Any) -> "PolyScalar":
        element = self._coerce(other)
        if element is NotImplemented:
            return NotImplemented
        return self._wrap(self._element + element)

    __radd__ = __add__

    def __sub__(self, other: Any) -> "PolyScalar":
        element = self._coerce(other)
        if element is NotImplemented:
            return NotImplemented
        return self._wrap(self._element - element)

    def __rsub__(self, other: Any) -> "PolyScalar":
        element = self._coerce(other)
        if element is NotImplemented:
            return NotImplemented
        return self._wrap(element - self._element)

    def __mul__(self, other: Any) -> "PolyScalar":
        element = self._coerce(other)
        if element is NotImplemented:
            return NotImplemented
        return self._wrap(self._element * element)

    __rmul__ = __mul__

    def __truediv__(self, other: Any) -> "PolyScalar":
        """Division by a nonzero constant; use :meth:`divide_exact` for monomials."""
        if isinstance(other, PolyScalar):
            if not other.is_constant:
                return NotImplemented
            divisor = to_gaussian(*other.constant_value())
        elif isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            divisor = to_gaussian(Fraction(other))
        else:
            return NotImplemented
        return self._wrap(self._element.mul_ground(gaussian_inverse(divisor)))

    def __neg__(self) -> "PolyScalar":
        return self._wrap(-self._element)

    def __pos__(self) -> "PolyScalar":
        return self

    def __pow__(self, exponent: int) -> "PolyScalar":
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError(f"Exponent must be a non-negative integer, got {exponent!r}")
        return self._wrap(self._element**exponent)

    def scale(self, re: Fraction, im: Fraction = Fraction(0)) -> "PolyScalar":
        """Multiplies by the exact constant ``re + i im``."""
        if re == 0 and im == 0:
            return self._wrap(self._registry.ring.zero)
        return self._wrap(self._element.mul_ground(to_gaussian(Fraction(re), Fraction(im))))

    def conjugate(self) -> "PolyScalar":
        """Complex conjugate of every coefficient (variables are real)."""
        data = {monom: to_gaussian(re, -im) for monom, (re, im) in self.terms()}
        ring = self._registry.ring
        return self._wrap(ring.from_dict(data) if data else ring.zero)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, PolyScalar):
            return self._registry == other._registry and self._element == other._element
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self._element == self._registry.ring.ground_new(to_gaussian(Fraction(other)))
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self._registry, tuple(self.terms())))

    def __bool__(self) -> bool:
        return not self.is_zero

    def __repr__(self) -> str:
        return f"PolyScalar({self._element})"

    def __str__(self) -> str:
        return str(self._element)

    # ---------------------------------------------------------------- calculus

    def diff(self, variable: str) -> "PolyScalar":
        """Formal partial derivative with respect to ``variable``.

        Raises:
            RegistryError: If the variable is not registered.
        """
        index = self._registry.index(variable)
        return self._wrap(self._element.diff(self._registry.ring.gens[index]))

    def evaluate(self, bindings: Mapping[str, Binding]) -> Any:
        """Evaluates the polynomial at a point.

        Exact bindings (``int``, ``Fraction`` or ``(re, im)`` pairs) give an
        exact sympy number; a single ``float``/``complex`` binding switches
        the whole evaluation to floating point.

        Args:
            bindings: Value for every variable occurring in the polynomial.

        Returns:
            A sympy number in exact mode, ``float`` or ``complex`` otherwise.

        Raises:
            RegistryError: If a variable is unbound or unknown.
            NonFiniteError: If float evaluation produced NaN or Inf.

        Example:
            >>> q, p = registry.variables("q", "p")
            >>> (q**2 + p**2).evaluate({"q": 3, "p": 4})
            25
        """
        for name in bindings:
            self._registry.index(name)
        for name in self.variables():
            if name not in bindings:
                raise RegistryError("Unbound variable in evaluation", name)

        names = self._registry.names
        if any(_is_float_binding(bindings[n]) for n in self.variables()):
            return self._evaluate_float(bindings)

        values = {n: _exact_binding(bindings[n]) for n in self.variables()}
        total = QQ_I.zero
        for monom, coeff in self._element.items():
            term = coeff
            for i, exponent in enumerate(monom):
                if exponent:
                    term = term * values[names[i]] ** exponent
            total = total + term
        return QQ_I.to_sympy(total)

    def _evaluate_float(self, bindings: Mapping[str, Binding]) -> Union[float, complex]:
        names = self._registry.names
        values = {}
        for name in self.variables():
            value = bindings[name]
            if isinstance(value, tuple):
                value = complex(float(value[0]), float(value[1]))
            values[name] = complex(value)

        total = 0j
        for monom, coeff in self._element.items():
            re, im = from_gaussian(coeff)
            term = complex(float(re), float(im))
            for i, exponent in enumerate(monom):
                if exponent:
                    term *= values[names[i]] ** exponent
            total += term

        if not (math.isfinite(total.real) and math.isfinite(total.imag)):
            raise NonFiniteError("Polynomial evaluation is not finite", "evaluate")
        return total.real if total.imag == 0 else total

    def substitute(self, bindings: Mapping[str, Union["PolyScalar", int, Fraction]]) -> "PolyScalar":
        """Exact composition: replaces variables by polynomials or constants."""
        ring = self._registry.ring
        replacements = {}
        for name, value in bindings.items():
            index = self._registry.index(name)
            element = self._coerce(value)
            if element is NotImplemented:
                raise RegistryError(f"Cannot substitute {value!r}", name)
            replacements[index] = element

        result = ring.zero
        for monom, coeff in self._element.items():
            kept = tuple(0 if i in replacements else e for i, e in enumerate(monom))
            term = ring.from_dict({kept: coeff})
            for index, element in replacements.items():
                if monom[index]:
                    term = term * element ** monom[index]
            result = result + term
        return self._wrap(result)

    def coefficient_of(self, variable: str, power: int) -> "PolyScalar":
        """Coefficient of ``variable**power`` (the result no longer contains it)."""
        index = self._registry.index(variable)
        data = {}
        for monom, coeff in self._element.items():
            if monom[index] == power:
                reduced = monom[:index] + (0,) + monom[index + 1 :]
                data[reduced] = coeff
        ring = self._registry.ring
        return self._wrap(ring.from_dict(data) if data else ring.zero)

    def divide_exact(self, divisor: "PolyScalar") -> "PolyScalar":
        """Exact division by a single-term polynomial such as ``i*hbar``.

        Raises:
            PhaseSpaceError: If the divisor is not a single term or does not divide.
        """
        other = self._coerce(divisor)
        if other is NotImplemented or len(other) != 1:
            raise PhaseSpaceError(f"Divisor {divisor} must be a single nonzero term")
        ((div_monom, div_coeff),) = other.items()
        inverse = gaussian_inverse(div_coeff)

        data: Dict[Exponents, Any] = {}
        for monom, coeff in self._element.items():
            reduced = tuple(a - b for a, b in zip(monom, div_monom))
            if any(e < 0 for e in reduced):
                raise PhaseSpaceError(f"{divisor} does not divide {self}")
            data[reduced] = coeff * inverse
        ring = self._registry.ring
        return self._wrap(ring.from_dict(data) if data else ring.zero)

    def lift(self, registry: VariableRegistry) -> "PolyScalar":
        """Re-expresses the polynomial in a registry containing all of its variables."""
        if registry == self._registry:
            return self
        positions = []
        for name in self._registry.names:
            positions.append(registry.index(name) if name in registry else None)

        data = {}
        width = len(registry)
        for monom, coeff in self._element.items():
            target = [0] * width
            for i, exponent in enumerate(monom):
                if exponent:
                    if positions[i] is None:
                        raise RegistryError(
                            "Variable missing from target registry", self._registry.names[i]
                        )
                    target[positions[i]] = exponent
            data[tuple(target)] = coeff
        ring = registry.ring
        return PolyScalar(registry, ring.from_dict(data) if data else ring.zero)
