"""Grade calculus on multivectors: products, projections and commutators."""

import logging
from fractions import Fraction
from typing import Any

from exceptions import GradeError

from .multivector import Multivector
from .products import bits, left_derivative_sign, popcount, right_derivative_sign

logger = logging.getLogger(__name__)


def wedge(a: Multivector, b: Multivector) -> Multivector:
    """Grassmann product ``a ^ b``."""
    return a.wedge(b)


def clifford_star(a: Multivector, b: Multivector) -> Multivector:
    """Clifford star product ``a *_C b``."""
    return a.star(b)


def grade_project(a: Multivector, grade: int) -> Multivector:
    """Part of ``a`` of Grassmann grade ``grade``.

    Raises:
        GradeError: If ``grade`` lies outside ``0..dim``.
    """
    return a.grade_project(grade)


def _homogeneous_grade(a: Multivector, role: str) -> int:
    if not a.is_homogeneous():
        raise GradeError(f"{role} operand must be homogeneous; project it first", a.grades())
    return a.grade


def inner(a: Multivector, b: Multivector) -> Multivector:
    """``<a * b>_{|r-s|}`` for homogeneous ``a`` (grade r) and ``b`` (grade s)."""
    r = _homogeneous_grade(a, "Left")
    s = _homogeneous_grade(b, "Right")
    return a.star(b).grade_project(abs(r - s))


def outer(a: Multivector, b: Multivector) -> Multivector:
    """``<a * b>_{r+s}``; coincides with the wedge product."""
    r = _homogeneous_grade(a, "Left")
    s = _homogeneous_grade(b, "Right")
    if r + s > a.signature.dim:
        return Multivector.zero(a.signature, a.backend)
    return a.star(b).grade_project(r + s)


def scalar_product(a: Multivector, b: Multivector) -> Any:
    """Scalar part of ``a * b``."""
    return a.star(b).scalar_part()


def reverse(a: Multivector) -> Multivector:
    return a.reverse()


def commutator_product(a: Multivector, b: Multivector) -> Multivector:
    """``a x b = (a*b - b*a) / 2``."""
    return (a.star(b) - b.star(a)).scale(_half(a))


def graded_star_commutator(a: Multivector, b: Multivector) -> Multivector:
    """``[a, b] = a*b - (-1)^(rs) b*a`` for homogeneous operands."""
    r = _homogeneous_grade(a, "Left")
    s = _homogeneous_grade(b, "Right")
    if (r * s) & 1:
        return a.star(b) + b.star(a)
    return a.star(b) - b.star(a)


def anticommutator_product(a: Multivector, b: Multivector) -> Multivector:
    """``(a*b + b*a) / 2``."""
    return (a.star(b) + b.star(a)).scale(_half(a))


def norm_squared(a: Multivector) -> Any:
    """``<reverse(a) * a>_0``."""
    return a.reverse().star(a).scalar_part()


def even_part(a: Multivector) -> Multivector:
    return Multivector(a.signature, a.backend, {m: c for m, c in a.items() if popcount(m) % 2 == 0})


def odd_part(a: Multivector) -> Multivector:
    return a - even_part(a)


def grassmann_derivative(a: Multivector, index: int, side: str = "left") -> Multivector:
    """Left (``d/de_i A``) or right (``A <- d/de_i``) Grassmann derivative."""
    if side not in ("left", "right"):
        raise ValueError(f"side must be 'left' or 'right', got {side!r}")
    sign_of = left_derivative_sign if side == "left" else right_derivative_sign
    out = {}
    for mask, value in a.items():
        if mask & (1 << index):
            out[mask ^ (1 << index)] = value if sign_of(mask, index) > 0 else -value
    return Multivector(a.signature, a.backend, out)


def inverse(a: Multivector) -> Multivector:
    """Inverse ``reverse(a) / (a * reverse(a))`` when ``a * reverse(a)`` is a nonzero scalar.

    Raises:
        GradeError: If ``a * reverse(a)`` is not a scalar or vanishes.
    """
    product = a.star(a.reverse())
    if product.grades() != (0,):
        raise GradeError("Multivector has no scalar norm; inverse undefined", product.grades())
    norm = product.scalar_part()
    if a.backend.is_exact:
        return a.reverse().map_coefficients(lambda c: c / norm)
    return a.reverse().scale(1.0 / norm.value)


def blade_label(a: Multivector, mask: int) -> str:
    names = a.signature.generator_names
    return "".join(names[i] for i in bits(mask)) or "1"


def _half(a: Multivector):
    return Fraction(1, 2) if a.backend.is_exact else 0.5
