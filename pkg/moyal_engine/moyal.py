"""Moyal star product on polynomial phase-space functions.

    F * G = sum_k 1/k! sum c^{a1 b1} ... c^{ak bk} d_{a1..ak} F d_{b1..bk} G

with ``c^{ab} = (i hbar / 2) J^{ab}``. The sum is finite on polynomials: it
stops once either factor runs out of differentiable degree.
"""

import logging
from fractions import Fraction
from typing import Dict, Mapping, Tuple

from scalar_ring import PolyScalar, VariableRegistry

from .phase_space import HBAR, PhaseSpace

logger = logging.getLogger(__name__)

PairKey = Tuple[str, str]
TermKey = Tuple[Tuple[str, ...], Tuple[str, ...]]


def _derivative(f: PolyScalar, names: Tuple[str, ...], cache: Dict[Tuple[str, ...], PolyScalar]) -> PolyScalar:
    cached = cache.get(names)
    if cached is not None:
        return cached
    value = _derivative(f, names[:-1], cache).diff(names[-1])
    cache[names] = value
    return value


def bidifferential_exponential(
    f: PolyScalar, g: PolyScalar, pairs: Mapping[PairKey, PolyScalar], registry: VariableRegistry
) -> PolyScalar:
    """``f exp(sum c^{ab} <-d_a d_b->) g`` for commuting variables.

    Args:
        f: Left factor.
        g: Right factor.
        pairs: ``{(a, b): c^{ab}}``, nonzero constants (they may contain ``hbar``).
        registry: Registry of ``f``, ``g`` and the coefficients.

    Returns:
        The exact, finite expansion.
    """
    left_vars = sorted({a for a, _ in pairs})
    right_vars = sorted({b for _, b in pairs})
    max_order = min(f.degree(left_vars), g.degree(right_vars))

    left_cache = {(): f}
    right_cache = {(): g}
    result = f * g
    states: Dict[TermKey, PolyScalar] = {((), ()): registry.one()}
    factorial = 1
    for k in range(1, max_order + 1):
        factorial *= k
        advanced: Dict[TermKey, PolyScalar] = {}
        for (left, right), weight in states.items():
            for (a, b), c in pairs.items():
                key = (tuple(sorted(left + (a,))), tuple(sorted(right + (b,))))
                if _derivative(f, key[0], left_cache).is_zero or _derivative(g, key[1], right_cache).is_zero:
                    continue
                term = weight * c
                advanced[key] = advanced[key] + term if key in advanced else term
        states = {key: w for key, w in advanced.items() if not w.is_zero}
        if not states:
            break
        order_sum = registry.zero()
        for (left, right), weight in states.items():
            order_sum = order_sum + weight * left_cache[left] * right_cache[right]
        result = result + order_sum / factorial
    return result


def moyal_pairs(ps: PhaseSpace) -> Dict[PairKey, PolyScalar]:
    """``{(a, b): (i hbar / 2) J^{ab}}`` over the nonzero entries of ``J``."""
    half_i_hbar = ps.hbar.scale(Fraction(0), Fraction(1, 2))
    pairs = {}
    for a, row_name in enumerate(ps.coordinates):
        for b, col_name in enumerate(ps.coordinates):
            entry = ps.poisson_matrix[a][b]
            if entry:
                pairs[(row_name, col_name)] = half_i_hbar * entry
    return pairs


def moyal_star(f: PolyScalar, g: PolyScalar, ps: PhaseSpace) -> PolyScalar:
    """Moyal product ``F *_M G`` with formal ``hbar``.

    Raises:
        PhaseSpaceError: If ``F`` or ``G`` uses a variable outside ``ps``.

    Example:
        >>> moyal_star(q, p, ps)   # q p + i hbar / 2
    """
    f, g = ps.coerce(f), ps.coerce(g)
    return bidifferential_exponential(f, g, moyal_pairs(ps), ps.registry)


def star_commutator(f: PolyScalar, g: PolyScalar, ps: PhaseSpace) -> PolyScalar:
    """``[F, G]_M = F *_M G - G *_M F``."""
    return moyal_star(f, g, ps) - moyal_star(g, f, ps)


def poisson_bracket(f: PolyScalar, g: PolyScalar, ps: PhaseSpace) -> PolyScalar:
    """``{F, G} = J^{ab} d_a F d_b G``."""
    f, g = ps.coerce(f), ps.coerce(g)
    grad_f = [f.diff(name) for name in ps.coordinates]
    grad_g = [g.diff(name) for name in ps.coordinates]
    total = ps.registry.zero()
    for a in range(ps.dim):
        if grad_f[a].is_zero:
            continue
        for b in range(ps.dim):
            entry = ps.poisson_matrix[a][b]
            if entry and not grad_g[b].is_zero:
                total = total + grad_f[a] * grad_g[b] * entry
    return total


def classical_limit(f: PolyScalar, g: PolyScalar, ps: PhaseSpace) -> PolyScalar:
    """``(1 / (i hbar)) [F, G]_M`` evaluated at ``hbar = 0``, computed exactly."""
    i_hbar = ps.hbar.scale(Fraction(0), Fraction(1))
    quotient = star_commutator(f, g, ps).divide_exact(i_hbar)
    return quotient.substitute({HBAR: 0})


def hbar_coefficient(value: PolyScalar, order: int) -> PolyScalar:
    """Coefficient of ``hbar**order`` in a phase-space function."""
    return value.coefficient_of(HBAR, order)


def moyal_power(f: PolyScalar, n: int, ps: PhaseSpace) -> PolyScalar:
    """``F *_M F *_M ... *_M F`` (``n`` factors, ``n >= 0``)."""
    if n < 0:
        raise ValueError(f"Star power must be non-negative, got {n}")
    result = ps.registry.one()
    for _ in range(n):
        result = moyal_star(result, f, ps)
    return result


def check_bracket_limit(f: PolyScalar, g: PolyScalar, ps: PhaseSpace) -> bool:
    """``poisson_bracket`` agrees with the classical limit of the star commutator."""
    agrees = poisson_bracket(f, g, ps) == classical_limit(f, g, ps)
    if not agrees:
        logger.warning(f"Poisson bracket and classical limit disagree for {f}, {g}")
    return agrees
