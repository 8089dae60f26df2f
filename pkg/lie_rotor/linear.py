"""Exact linear algebra over the Gaussian rationals for multivector spans."""

import logging
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import sympy

from exceptions import AlgebraClosureError
from multivector_core import Multivector

logger = logging.getLogger(__name__)


def to_sympy_number(pair: Tuple[Fraction, Fraction]) -> sympy.Expr:
    re, im = pair
    return sympy.Rational(re.numerator, re.denominator) + sympy.I * sympy.Rational(im.numerator, im.denominator)


def to_fraction(value: sympy.Expr, context: str = "") -> Fraction:
    """Real rational sympy number as a Fraction.

    Raises:
        AlgebraClosureError: If the number is not a real rational.
    """
    value = sympy.nsimplify(value)
    re, im = value.as_real_imag()
    if im != 0 or not re.is_Rational:
        raise AlgebraClosureError(f"Coefficient {value} is not a real rational", context)
    return Fraction(int(re.p), int(re.q))


def _constant_pair(coefficient) -> Tuple[Fraction, Fraction]:
    if hasattr(coefficient, "constant_value"):
        return coefficient.constant_value()
    return (Fraction(coefficient.value), Fraction(0))


def blade_matrix(vectors: Sequence[Multivector], masks: Optional[Sequence[int]] = None) -> Tuple[List[int], sympy.Matrix]:
    """Columns are the blade coefficients of ``vectors`` over ``masks``."""
    if masks is None:
        masks = sorted({mask for v in vectors for mask, _ in v.items()})
    masks = list(masks)
    rows = [[to_sympy_number(_constant_pair(v.coefficient(mask))) for v in vectors] for mask in masks]
    return masks, sympy.Matrix(len(masks), len(vectors), lambda i, j: rows[i][j])


def rank(vectors: Sequence[Multivector]) -> int:
    if not vectors:
        return 0
    _, matrix = blade_matrix(vectors)
    return matrix.rank()


def solve_in_span(basis: Sequence[Multivector], target: Multivector) -> Optional[List[sympy.Expr]]:
    """Coordinates of ``target`` in the span of ``basis``, or ``None`` if it lies outside.

    ``basis`` must be linearly independent.
    """
    masks = sorted({mask for v in list(basis) + [target] for mask, _ in v.items()})
    if not masks:
        return [sympy.Integer(0)] * len(basis)
    _, matrix = blade_matrix(basis, masks)
    _, rhs = blade_matrix([target], masks)
    try:
        solution, params = matrix.gauss_jordan_solve(rhs)
    except ValueError:
        return None
    if params.shape[0]:
        solution = solution.subs({p: 0 for p in params})
    return [sympy.simplify(solution[i, 0]) for i in range(len(basis))]
