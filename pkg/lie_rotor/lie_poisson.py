"""Lie-Poisson brackets on the dual of a bivector algebra."""

import logging
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import sympy

from exceptions import AlgebraClosureError
from scalar_ring import PolyScalar, VariableRegistry

from .algebra import BivectorAlgebra

logger = logging.getLogger(__name__)


def dual_names(algebra: BivectorAlgebra) -> Tuple[str, ...]:
    return tuple(f"theta{i + 1}" for i in range(algebra.dim))


def dual_registry(algebra: BivectorAlgebra, extra: Sequence[str] = ()) -> VariableRegistry:
    """Registry ``theta1..thetaN`` of dual coordinates (plus ``extra`` names)."""
    return VariableRegistry(dual_names(algebra) + tuple(extra))


def dual_coordinates(algebra: BivectorAlgebra, registry: Optional[VariableRegistry] = None) -> Tuple[PolyScalar, ...]:
    registry = registry or dual_registry(algebra)
    return registry.variables(*dual_names(algebra))


def lie_poisson_bracket(f: PolyScalar, g: PolyScalar, algebra: BivectorAlgebra) -> PolyScalar:
    """``{F, G} = C^k_ij theta_k dF/dtheta_i dG/dtheta_j``.

    Args:
        f: Polynomial in the dual coordinates.
        g: Polynomial in the same registry.
        algebra: Algebra supplying ``C^k_ij``.

    Returns:
        The bracket, in the registry of ``f``.
    """
    names = dual_names(algebra)
    registry = f.registry
    theta = [registry.variable(n) for n in names]
    df = [f.diff(n) for n in names]
    dg = [g.diff(n) for n in names]
    total = registry.zero()
    for i in range(algebra.dim):
        if df[i].is_zero:
            continue
        for j in range(algebra.dim):
            if dg[j].is_zero:
                continue
            linear = registry.zero()
            for k, c in enumerate(algebra.structure_constants[i][j]):
                if c:
                    linear = linear + theta[k] * c
            if not linear.is_zero:
                total = total + linear * df[i] * dg[j]
    return total


def lie_poisson_jacobi(f: PolyScalar, g: PolyScalar, h: PolyScalar, algebra: BivectorAlgebra) -> PolyScalar:
    """Cyclic sum ``{F,{G,H}} + {G,{H,F}} + {H,{F,G}}``."""
    return (
        lie_poisson_bracket(f, lie_poisson_bracket(g, h, algebra), algebra)
        + lie_poisson_bracket(g, lie_poisson_bracket(h, f, algebra), algebra)
        + lie_poisson_bracket(h, lie_poisson_bracket(f, g, algebra), algebra)
    )


def quadratic_casimir(algebra: BivectorAlgebra, registry: Optional[VariableRegistry] = None) -> PolyScalar:
    """``kappa^{ij} theta_i theta_j`` from the inverse Killing metric.

    Raises:
        AlgebraClosureError: If the Killing metric is degenerate.
    """
    registry = registry or dual_registry(algebra)
    kappa = sympy.Matrix([[sympy.Rational(v.numerator, v.denominator) for v in row] for row in algebra.killing])
    if kappa.det() == 0:
        raise AlgebraClosureError(f"Killing metric of {algebra.label} is degenerate")
    inverse = kappa.inv()
    theta = dual_coordinates(algebra, registry)
    total = registry.zero()
    for i in range(algebra.dim):
        for j in range(algebra.dim):
            entry = inverse[i, j]
            if entry != 0:
                total = total + theta[i] * theta[j] * Fraction(int(entry.p), int(entry.q))
    return total


def casimir_residuals(
    casimir: PolyScalar, algebra: BivectorAlgebra, tests: Sequence[PolyScalar] = ()
) -> Dict[str, PolyScalar]:
    """``{C, theta_i}`` for every coordinate and ``{C, G}`` for each extra ``G``; all vanish for a Casimir."""
    registry = casimir.registry
    residuals: Dict[str, PolyScalar] = {}
    for name in dual_names(algebra):
        residuals[name] = lie_poisson_bracket(casimir, registry.variable(name), algebra)
    for index, g in enumerate(tests):
        residuals[f"test{index + 1}"] = lie_poisson_bracket(casimir, g, algebra)
    nonzero: List[str] = [k for k, v in residuals.items() if not v.is_zero]
    if nonzero:
        logger.warning(f"Casimir fails to commute with {nonzero}")
    return residuals
