"""Pseudoscalar and Hodge duality.

For generators ``e_i`` with Gram matrix ``G`` the Hodge dual of a blade is

    *e_S = |det G|^(-1/2) * sum_J det(G[S, J]) * sign(J, K_J) * e_K_J

with ``K_J`` the ascending complement of ``J`` and orientation fixed by the
generator order (``eps_1..d = +1``).
"""

import logging
import math
from fractions import Fraction
from itertools import combinations

import numpy as np
import sympy

from exceptions import GradeError, SignatureError

from .multivector import Backend, Multivector
from .products import bits, mask_of, wedge_sign
from .signature import MetricSignature

logger = logging.getLogger(__name__)


def pseudoscalar(signature: MetricSignature, backend: Backend) -> Multivector:
    """``I = e_1 ^ ... ^ e_d``."""
    return Multivector(signature, backend, {(1 << signature.dim) - 1: 1})


def _minor(signature: MetricSignature, rows, cols):
    if not rows:
        return Fraction(1) if signature.is_exact else 1.0
    if signature.is_exact:
        block = sympy.Matrix(
            [[sympy.Rational(signature.matrix[i][j].numerator, signature.matrix[i][j].denominator) for j in cols] for i in rows]
        )
        value = block.det()
        return Fraction(int(value.p), int(value.q))
    block = np.array([[signature.matrix[i][j] for j in cols] for i in rows])
    return float(np.linalg.det(block))


def _volume_factor(signature: MetricSignature):
    det = signature.determinant()
    if signature.is_exact:
        magnitude = abs(det)
        num, den = magnitude.numerator, magnitude.denominator
        root_num, root_den = math.isqrt(num), math.isqrt(den)
        if root_num * root_num != num or root_den * root_den != den:
            raise SignatureError(
                f"|det G| = {magnitude} has no rational square root; use a float signature",
                signature.name,
            )
        return Fraction(root_den, root_num)
    return 1.0 / math.sqrt(abs(det))


def _determinant_sign(signature: MetricSignature) -> int:
    det = signature.determinant()
    return 1 if det > 0 else -1


def hodge_dual(a: Multivector) -> Multivector:
    """Hodge dual of a homogeneous multivector.

    Raises:
        SignatureError: For non-symmetric or degenerate signatures.
        GradeError: If ``a`` is not homogeneous.
    """
    signature = a.signature
    if signature.kind != "symmetric":
        raise SignatureError("Hodge duality needs a symmetric metric", signature.name)
    signature.require_invertible("Hodge duality")
    if not a.is_homogeneous():
        raise GradeError("Hodge dual needs a homogeneous multivector", a.grades())

    d = signature.dim
    full = (1 << d) - 1
    factor = _volume_factor(signature)
    out = Multivector.zero(signature, a.backend)
    for mask, value in a.items():
        rows = bits(mask)
        r = len(rows)
        terms = {}
        for cols in combinations(range(d), r):
            minor = _minor(signature, rows, list(cols))
            if not minor:
                continue
            j_mask = mask_of(cols)
            k_mask = full ^ j_mask
            terms[k_mask] = minor * wedge_sign(j_mask, k_mask) * factor
        out = out + Multivector(signature, a.backend, terms).scale(value)
    return out


def inverse_hodge_dual(b: Multivector) -> Multivector:
    """Inverse of :func:`hodge_dual`: ``(-1)^(s(d-s)) sign(det G) * b`` for grade ``s``."""
    if not b.is_homogeneous():
        raise GradeError("Inverse Hodge dual needs a homogeneous multivector", b.grades())
    d = b.signature.dim
    s = b.grade
    sign = (-1) ** (s * (d - s)) * _determinant_sign(b.signature)
    dual = hodge_dual(b)
    return dual if sign > 0 else -dual


def dual_by_pseudoscalar(a: Multivector) -> Multivector:
    """``I * a``, the duality map used for vectors and bivectors in three dimensions."""
    return pseudoscalar(a.signature, a.backend).star(a)
