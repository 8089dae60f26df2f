"""Rotors: even unit multivectors and their star exponentials.

Rotors act actively as ``x -> R * x * reverse(R)``. The passive placement
``reverse(R) * x * R`` is available under its own name.
"""

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from exceptions import BackendMismatchError, GradeError, RotorError, SeriesConvergenceError
from scalar_ring import FloatBackend, FloatScalar, PolyScalar
from settings import settings_manager

from .multivector import Multivector

logger = logging.getLogger(__name__)

Parameter = Union[int, Fraction, float, PolyScalar]


def _unit_residual(value: Multivector) -> Multivector:
    return value.star(value.reverse()) - 1


@dataclass(frozen=True)
class Rotor:
    """Even multivector with ``R * reverse(R) = 1``.

    Construction validates the unit condition: exactly for exact
    coefficients, within ``tol`` (default ``numerics.rotor_unit_tol``) for floats.
    """

    value: Multivector
    tol: Optional[float] = None

    def __post_init__(self):
        if any(g % 2 for g in self.value.grades()):
            raise RotorError(f"Rotor must be even, got grades {self.value.grades()}")
        residual = _unit_residual(self.value)
        if self.value.backend.is_exact:
            if not residual.is_zero:
                raise RotorError(f"R * reverse(R) - 1 = {residual} is not zero")
        else:
            tol = self.tol if self.tol is not None else settings_manager.get("numerics.rotor_unit_tol", 1e-12)
            if residual.max_abs() > tol:
                raise RotorError(f"Rotor unit residual {residual.max_abs():.3e} exceeds {tol:.1e}")

    @classmethod
    def identity(cls, signature, backend) -> "Rotor":
        return cls(Multivector.scalar(signature, backend, 1))

    @property
    def signature(self):
        return self.value.signature

    def reverse(self) -> "Rotor":
        return Rotor(self.value.reverse(), self.tol)

    def compose(self, other: "Rotor") -> "Rotor":
        """``self * other`` (apply ``other`` first)."""
        return Rotor(self.value.star(other.value), self.tol)

    def normalized(self) -> "Rotor":
        """Float rotor rescaled so that ``<R * reverse(R)>_0 = 1``."""
        if self.value.backend.is_exact:
            return self
        norm = self.value.star(self.value.reverse()).scalar_part().value
        return Rotor(self.value.scale(1.0 / math.sqrt(norm)), self.tol)


def spin_component(s: Multivector) -> int:
    """Sign of ``S * reverse(S)`` for an even unit versor (``+1`` rotor, ``-1`` flagged)."""
    product = s.star(s.reverse())
    if product.grades() not in ((0,), ()):
        raise RotorError(f"S * reverse(S) is not a scalar: {product}")
    scalar = product.scalar_part()
    value = float(scalar.constant_value()[0]) if s.backend.is_exact else scalar.value
    if abs(abs(value) - 1.0) > 1e-9:
        raise RotorError(f"S * reverse(S) = {value} is not +-1")
    if value < 0:
        logger.warning("Versor lies in the S * reverse(S) = -1 component; only +1 rotors are supported")
        return -1
    return 1


def _float_parameter(t: Parameter) -> Optional[float]:
    if isinstance(t, (float,)):
        return t
    if isinstance(t, FloatScalar):
        return t.value
    return None


def rotor_exp(
    bivector: Multivector,
    t: Parameter = 1,
    tol: Optional[float] = None,
    max_terms: Optional[int] = None,
) -> Rotor:
    """Star exponential ``exp((t/2) B)`` of a bivector.

    Uses the closed forms when ``B * B`` is a scalar and a truncated series
    otherwise. Exact bivectors with a float ``t`` are evaluated in floats;
    exact results are only produced when they are polynomial (``B * B = 0``,
    nilpotent ``B`` or ``t = 0``).

    Args:
        bivector: Homogeneous grade-2 multivector.
        t: Rotation parameter; a ``PolyScalar`` keeps ``t`` formal.
        tol: Series stopping tolerance relative to the running sum.
        max_terms: Series term cap.

    Returns:
        The rotor.

    Raises:
        GradeError: If ``bivector`` is not of grade 2.
        SeriesConvergenceError: If the series does not settle within ``max_terms``.

    Example:
        >>> rotor_exp(s1 ^ s2, math.pi).value   # s1 s2
    """
    if not bivector.is_zero and bivector.grades() != (2,):
        raise GradeError("rotor_exp needs a bivector", bivector.grades())
    tol = tol if tol is not None else settings_manager.get("numerics.rotor_series_tol", 1e-14)
    max_terms = max_terms if max_terms is not None else settings_manager.get("numerics.rotor_max_terms", 200)

    float_t = _float_parameter(t)
    if bivector.backend.is_exact and float_t is not None:
        bivector = bivector.to_float()
    if bivector.backend.is_exact:
        return Rotor(_exact_exp(bivector, t))

    if isinstance(t, PolyScalar):
        raise BackendMismatchError("Formal parameter with a float bivector", "exact", "float")
    t_value = float_t if float_t is not None else float(t)
    half = bivector.scale(0.5 * t_value)
    square = bivector.star(bivector)
    if square.grades() in ((0,), ()):
        lam_sq = square.scalar_part().value
        if lam_sq < 0:
            lam = math.sqrt(-lam_sq)
            angle = 0.5 * lam * t_value
            value = Multivector.scalar(bivector.signature, bivector.backend, math.cos(angle)) + bivector.scale(
                math.sin(angle) / lam
            )
        elif lam_sq > 0:
            lam = math.sqrt(lam_sq)
            angle = 0.5 * lam * t_value
            value = Multivector.scalar(bivector.signature, bivector.backend, math.cosh(angle)) + bivector.scale(
                math.sinh(angle) / lam
            )
        else:
            value = half + 1
        return Rotor(value)

    return Rotor(_series_exp(half, tol, max_terms))


def _series_exp(x: Multivector, tol: float, max_terms: int) -> Multivector:
    total = Multivector.scalar(x.signature, FloatBackend(), 1.0)
    term = total
    for k in range(1, max_terms + 1):
        term = term.star(x).scale(1.0 / k)
        total = total + term
        scale = max(total.max_abs(), 1.0)
        if term.max_abs() < tol * scale:
            logger.debug(f"Star exponential converged after {k} terms")
            return total
    raise SeriesConvergenceError("Star exponential did not converge", max_terms)


def _exact_exp(bivector: Multivector, t: Parameter) -> Multivector:
    if isinstance(t, (int, Fraction)) and t == 0:
        return Multivector.scalar(bivector.signature, bivector.backend, 1)
    coefficient = bivector.backend.coerce(t) * Fraction(1, 2)
    x = bivector.scale(coefficient)
    total = Multivector.scalar(bivector.signature, bivector.backend, 1)
    term = total
    for k in range(1, bivector.signature.dim + 2):
        term = term.star(x).scale(Fraction(1, k))
        if term.is_zero:
            return total
        total = total + term
    raise BackendMismatchError(
        "Exact star exponential is not polynomial for this bivector; pass a float parameter",
        "exact",
        "float",
    )


def rotor_apply(rotor: Rotor, a: Multivector) -> Multivector:
    """Active action ``R * A * reverse(R)``."""
    if not isinstance(rotor, Rotor):
        raise RotorError("rotor_apply needs a validated Rotor")
    return rotor.value.star(a).star(rotor.value.reverse())


def passive_rotor_apply(rotor: Rotor, a: Multivector) -> Multivector:
    """Passive action ``reverse(R) * A * R``."""
    if not isinstance(rotor, Rotor):
        raise RotorError("passive_rotor_apply needs a validated Rotor")
    return rotor.value.reverse().star(a).star(rotor.value)


def as_rotor(value: Multivector, tol: Optional[float] = None) -> Rotor:
    """Validates a multivector as a rotor."""
    return Rotor(value, tol)


__all__ = [
    "Rotor",
    "as_rotor",
    "passive_rotor_apply",
    "rotor_apply",
    "rotor_exp",
    "spin_component",
]
