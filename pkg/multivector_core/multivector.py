"""Sparse multivectors over a metric signature.

A ``Multivector`` maps blade masks to coefficients of one backend
(exact ``PolyScalar`` or ``FloatScalar``). ``*`` is the Clifford star
product, ``^`` the Grassmann wedge; scalars multiply coefficientwise.
"""

import logging
from fractions import Fraction
from typing import Any, Callable, Dict, Iterable, Iterator, Mapping, Optional, Sequence, Tuple

import numpy as np

from exceptions import BackendMismatchError, GradeError, RegistryError, SignatureError
from scalar_ring import ExactBackend, FloatBackend, FloatScalar, PolyScalar

from .products import bits, mask_of, popcount, product_table, wedge_sign
from .signature import MetricSignature

logger = logging.getLogger(__name__)

Backend = Any  # ExactBackend | FloatBackend


def _scale(coefficient, entry):
    if entry == 1:
        return coefficient
    if entry == -1:
        return -coefficient
    if isinstance(coefficient, PolyScalar):
        return coefficient.scale(Fraction(entry))
    return coefficient * entry


class Multivector:
    """Element of the Grassmann algebra on ``signature.dim`` generators.

    Args:
        signature: Contraction matrix used by the star product.
        backend: ``ExactBackend`` or ``FloatBackend``.
        blades: ``{mask: coefficient}``; zero coefficients are dropped.

    Example:
        >>> sig = MetricSignature.euclidean(3)
        >>> s1 = Multivector.generator(sig, ExactBackend(), 0)
        >>> (s1 * s1).scalar_part()
        PolyScalar(1)
    """

    __slots__ = ("signature", "backend", "_blades")

    def __init__(
        self,
        signature: MetricSignature,
        backend: Backend,
        blades: Optional[Mapping[int, Any]] = None,
    ):
        if backend.is_exact and not signature.is_exact:
            raise BackendMismatchError(
                f"Numeric signature {signature.name} needs float coefficients", "exact", "float"
            )
        self.signature = signature
        self.backend = backend
        limit = 1 << signature.dim
        clean: Dict[int, Any] = {}
        for mask, value in (blades or {}).items():
            if not 0 <= mask < limit:
                raise GradeError(f"Blade mask {mask} outside dimension {signature.dim}", mask)
            coefficient = backend.coerce(value)
            if coefficient:
                clean[mask] = coefficient
        self._blades = clean

    @classmethod
    def _trusted(cls, signature, backend, blades: Dict[int, Any]) -> "Multivector":
        out = cls.__new__(cls)
        out.signature = signature
        out.backend = backend
        out._blades = {m: c for m, c in blades.items() if c}
        return out

    # ----------------------------------------------------------- constructors

    @classmethod
    def zero(cls, signature: MetricSignature, backend: Backend) -> "Multivector":
        return cls(signature, backend)

    @classmethod
    def scalar(cls, signature: MetricSignature, backend: Backend, value: Any = 1) -> "Multivector":
        return cls(signature, backend, {0: value})

    @classmethod
    def generator(
        cls, signature: MetricSignature, backend: Backend, index: int, coefficient: Any = 1
    ) -> "Multivector":
        if not 0 <= index < signature.dim:
            raise GradeError(f"Generator index {index} out of range", 1)
        return cls(signature, backend, {1 << index: coefficient})

    @classmethod
    def blade(
        cls, signature: MetricSignature, backend: Backend, indices: Sequence[int], coefficient: Any = 1
    ) -> "Multivector":
        """Wedge of generators in the given order (a repeated index gives zero)."""
        mask, sign = 0, 1
        for index in indices:
            step = wedge_sign(mask, 1 << index)
            if step == 0:
                return cls.zero(signature, backend)
            sign *= step
            mask |= 1 << index
        value = backend.coerce(coefficient)
        return cls(signature, backend, {mask: value if sign > 0 else -value})

    @classmethod
    def vector(cls, signature: MetricSignature, backend: Backend, components: Sequence[Any]) -> "Multivector":
        if len(components) != signature.dim:
            raise GradeError(f"Expected {signature.dim} vector components", 1)
        return cls(signature, backend, {1 << i: c for i, c in enumerate(components)})

    @classmethod
    def from_dense(cls, signature: MetricSignature, array: np.ndarray) -> "Multivector":
        """Float multivector from a length ``2**dim`` coefficient array."""
        return cls(signature, FloatBackend(), {m: float(v) for m, v in enumerate(array) if v != 0.0})

    # ------------------------------------------------------------- inspection

    @property
    def blades(self) -> Dict[int, Any]:
        return dict(self._blades)

    def items(self) -> Iterator[Tuple[int, Any]]:
        return iter(sorted(self._blades.items()))

    def coefficient(self, mask: int) -> Any:
        return self._blades.get(mask, self.backend.zero)

    def scalar_part(self) -> Any:
        return self.coefficient(0)

    @property
    def is_zero(self) -> bool:
        return not self._blades

    def grades(self) -> Tuple[int, ...]:
        return tuple(sorted({popcount(mask) for mask in self._blades}))

    def is_homogeneous(self) -> bool:
        return len(self.grades()) <= 1

    @property
    def grade(self) -> int:
        """Grade of a homogeneous multivector (``0`` for zero)."""
        grades = self.grades()
        if len(grades) > 1:
            raise GradeError("Multivector is not homogeneous", grades)
        return grades[0] if grades else 0

    def vector_components(self) -> list:
        """Coefficients of the grade-1 part, one per generator."""
        return [self.coefficient(1 << i) for i in range(self.signature.dim)]

    def to_dense(self) -> np.ndarray:
        if self.backend.is_exact:
            raise BackendMismatchError("Dense arrays need float coefficients", "exact", "float")
        out = np.zeros(1 << self.signature.dim)
        for mask, value in self._blades.items():
            out[mask] = value.value
        return out

    # ------------------------------------------------------------- arithmetic

    def _check(self, other: "Multivector") -> None:
        if other.signature != self.signature:
            raise SignatureError(
                f"Signature mismatch: {self.signature.name} vs {other.signature.name}",
                self.signature.name,
            )
        if other.backend.name != self.backend.name:
            raise BackendMismatchError("Mixed-backend multivector operation", self.backend.name, other.backend.name)
        if other.backend != self.backend:
            raise RegistryError("Multivectors use different variable registries", "")

    def _as_multivector(self, other: Any) -> Optional["Multivector"]:
        if isinstance(other, Multivector):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction, float, PolyScalar, FloatScalar)) and not isinstance(other, bool):
            return Multivector.scalar(self.signature, self.backend, other)
        return None

    def __add__(self, other: Any) -> "Multivector":
        rhs = self._as_multivector(other)
        if rhs is None:
            return NotImplemented
        out = dict(self._blades)
        for mask, value in rhs._blades.items():
            out[mask] = out[mask] + value if mask in out else value
        return Multivector._trusted(self.signature, self.backend, out)

    __radd__ = __add__

    def __neg__(self) -> "Multivector":
        return Multivector._trusted(self.signature, self.backend, {m: -c for m, c in self._blades.items()})

    def __sub__(self, other: Any) -> "Multivector":
        rhs = self._as_multivector(other)
        if rhs is None:
            return NotImplemented
        return self + (-rhs)

    def __rsub__(self, other: Any) -> "Multivector":
        lhs = self._as_multivector(other)
        if lhs is None:
            return NotImplemented
        return lhs + (-self)

    def scale(self, factor: Any) -> "Multivector":
        factor = self.backend.coerce(factor)
        return Multivector._trusted(
            self.signature, self.backend, {m: c * factor for m, c in self._blades.items()}
        )

    def star(self, other: "Multivector") -> "Multivector":
        """Clifford star product with this signature's contraction matrix."""
        self._check(other)
        table = product_table(self.signature)
        out: Dict[int, Any] = {}
        for a, ca in self._blades.items():
            for b, cb in other._blades.items():
                product = ca * cb
                for mask, entry in table.product(a, b).items():
                    term = _scale(product, entry)
                    out[mask] = out[mask] + term if mask in out else term
        return Multivector._trusted(self.signature, self.backend, out)

    def wedge(self, other: "Multivector") -> "Multivector":
        """Grassmann product: disjoint blades joined with their permutation sign."""
        self._check(other)
        out: Dict[int, Any] = {}
        for a, ca in self._blades.items():
            for b, cb in other._blades.items():
                sign = wedge_sign(a, b)
                if not sign:
                    continue
                term = ca * cb if sign > 0 else -(ca * cb)
                mask = a | b
                out[mask] = out[mask] + term if mask in out else term
        return Multivector._trusted(self.signature, self.backend, out)

    def __mul__(self, other: Any) -> "Multivector":
        if isinstance(other, Multivector):
            return self.star(other)
        if isinstance(other, (int, Fraction, float, PolyScalar, FloatScalar)) and not isinstance(other, bool):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other: Any) -> "Multivector":
        if isinstance(other, (int, Fraction, float, PolyScalar, FloatScalar)) and not isinstance(other, bool):
            return self.scale(other)
        return NotImplemented

    def __xor__(self, other: "Multivector") -> "Multivector":
        if not isinstance(other, Multivector):
            return NotImplemented
        return self.wedge(other)

    def grade_project(self, grade: int) -> "Multivector":
        if not 0 <= grade <= self.signature.dim:
            raise GradeError(f"Grade outside 0..{self.signature.dim}", grade)
        return Multivector._trusted(
            self.signature, self.backend, {m: c for m, c in self._blades.items() if popcount(m) == grade}
        )

    def reverse(self) -> "Multivector":
        out = {}
        for mask, value in self._blades.items():
            r = popcount(mask)
            out[mask] = -value if (r * (r - 1) // 2) & 1 else value
        return Multivector._trusted(self.signature, self.backend, out)

    def grade_involution(self) -> "Multivector":
        return Multivector._trusted(
            self.signature,
            self.backend,
            {m: (-c if popcount(m) & 1 else c) for m, c in self._blades.items()},
        )

    def map_coefficients(self, function: Callable[[Any], Any], backend: Optional[Backend] = None) -> "Multivector":
        target = backend if backend is not None else self.backend
        return Multivector(self.signature, target, {m: function(c) for m, c in self._blades.items()})

    def evaluate(self, bindings: Mapping[str, Any]) -> "Multivector":
        """Evaluates exact coefficients at float bindings, giving a float multivector."""
        if not self.backend.is_exact:
            return self

        def convert(value: PolyScalar) -> float:
            result = value.evaluate(bindings)
            if not isinstance(result, (float, complex)):
                result = complex(result)
            if isinstance(result, complex):
                if result.imag != 0:
                    raise BackendMismatchError(f"Complex coefficient {result} in float image", "exact", "float")
                result = result.real
            return float(result)

        return self.map_coefficients(convert, FloatBackend())

    def to_float(self) -> "Multivector":
        """Float image of a multivector with real constant coefficients."""
        return self.evaluate({})

    # -------------------------------------------------------------- equality

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Multivector):
            return (
                self.signature == other.signature
                and self.backend == other.backend
                and self._blades == other._blades
            )
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self == Multivector.scalar(self.signature, self.backend, other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.signature, tuple(sorted(self._blades.items(), key=lambda item: item[0]))))

    def max_abs(self) -> float:
        """Largest coefficient magnitude (float backend)."""
        if self.backend.is_exact:
            raise BackendMismatchError("max_abs needs float coefficients", "exact", "float")
        return max((abs(c.value) for c in self._blades.values()), default=0.0)

    def isclose(self, other: "Multivector", tol: float = 1e-12) -> bool:
        if isinstance(other, (int, float)):
            other = Multivector.scalar(self.signature, self.backend, other)
        return (self - other).max_abs() <= tol

    def __repr__(self) -> str:
        if not self._blades:
            return "0"
        names = self.signature.generator_names
        parts = []
        for mask, value in sorted(self._blades.items()):
            blade = "".join(names[i] for i in bits(mask)) or "1"
            parts.append(f"({value})*{blade}")
        return " + ".join(parts)


def generators(signature: MetricSignature, backend: Backend) -> Tuple[Multivector, ...]:
    """All grade-1 generators of ``signature``."""
    return tuple(Multivector.generator(signature, backend, i) for i in range(signature.dim))


def blade_from_mask(signature: MetricSignature, backend: Backend, mask: int, coefficient: Any = 1) -> Multivector:
    return Multivector(signature, backend, {mask: coefficient})


def combine(terms: Iterable[Tuple[Any, Multivector]], signature: MetricSignature, backend: Backend) -> Multivector:
    """Linear combination ``sum c_k M_k``."""
    total = Multivector.zero(signature, backend)
    for coefficient, multivector in terms:
        total = total + multivector.scale(coefficient)
    return total


__all__ = ["Multivector", "generators", "blade_from_mask", "combine", "mask_of"]
