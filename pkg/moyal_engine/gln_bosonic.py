"""Bosonic realization of gl(n) by bilinears ``q^i p^j``."""

import logging
from fractions import Fraction
from typing import Any, Dict, List, Tuple

from exceptions import AlgebraClosureError, PhaseSpaceError
from scalar_ring import PolyScalar

from .moyal import star_commutator
from .phase_space import HBAR, PhaseSpace

logger = logging.getLogger(__name__)


def _require_canonical(ps: PhaseSpace, n: int) -> None:
    if ps.dof != n or len(ps.configuration) != n or len(ps.momenta) != n:
        raise PhaseSpaceError(f"gl({n}) generators need a Darboux phase space with {n} degrees of freedom")


def gln_bosonic_generators(n: int, ps: PhaseSpace) -> Dict[str, PolyScalar]:
    """``E^{ij} = q^i p^j + q^j p^i`` and ``F^{ij} = q^i p^j - q^j p^i`` for ``i < j``, ``K^i = q^i p^i``.

    Keys are ``"E12"``, ``"F12"``, ``"K1"`` and so on (1-based).
    """
    _require_canonical(ps, n)
    q = [ps.variable(name) for name in ps.configuration]
    p = [ps.variable(name) for name in ps.momenta]
    generators: Dict[str, PolyScalar] = {}
    for i in range(n):
        for j in range(i + 1, n):
            generators[f"E{i + 1}{j + 1}"] = q[i] * p[j] + q[j] * p[i]
            generators[f"F{i + 1}{j + 1}"] = q[i] * p[j] - q[j] * p[i]
    for i in range(n):
        generators[f"K{i + 1}"] = q[i] * p[i]
    return generators


def bilinear_coordinates(value: PolyScalar, ps: PhaseSpace) -> Dict[str, Tuple[Fraction, Fraction]]:
    """Expands a combination of ``q^i p^j`` in the ``E``, ``F``, ``K`` basis.

    Raises:
        AlgebraClosureError: If ``value`` has a monomial other than ``q^i p^j``.
    """
    n = ps.dof
    qi = [ps.registry.index(name) for name in ps.configuration]
    pj = [ps.registry.index(name) for name in ps.momenta]
    coefficients: Dict[str, Tuple[Fraction, Fraction]] = {}

    def add(name: str, re: Fraction, im: Fraction) -> None:
        old = coefficients.get(name, (Fraction(0), Fraction(0)))
        total = (old[0] + re, old[1] + im)
        if total == (0, 0):
            coefficients.pop(name, None)
        else:
            coefficients[name] = total

    for exponents, (re, im) in value.terms():
        positions = [i for i, e in enumerate(exponents) if e]
        q_hits = [qi.index(k) for k in positions if k in qi and exponents[k] == 1]
        p_hits = [pj.index(k) for k in positions if k in pj and exponents[k] == 1]
        if sum(exponents) != 2 or len(q_hits) != 1 or len(p_hits) != 1:
            raise AlgebraClosureError(f"Monomial {exponents} is not a q^i p^j bilinear", str(value))
        i, j = q_hits[0], p_hits[0]
        if i == j:
            add(f"K{i + 1}", re, im)
        else:
            low, high = min(i, j), max(i, j)
            sign = 1 if i < j else -1
            add(f"E{low + 1}{high + 1}", re / 2, im / 2)
            add(f"F{low + 1}{high + 1}", sign * re / 2, sign * im / 2)
    return coefficients


def gln_closure(n: int, ps: PhaseSpace) -> Dict[str, Any]:
    """Structure of the Moyal commutators ``[X, Y]_M / (i hbar)`` in the generator basis.

    Returns:
        ``{"closed": bool, "brackets": {"X,Y": {generator: (re, im)}}}``.
    """
    generators = gln_bosonic_generators(n, ps)
    i_hbar = ps.hbar.scale(Fraction(0), Fraction(1))
    names = list(generators)
    brackets: Dict[str, Dict[str, Tuple[Fraction, Fraction]]] = {}
    closed = True
    for a, left in enumerate(names):
        for right in names[a + 1 :]:
            commutator = star_commutator(generators[left], generators[right], ps)
            try:
                quotient = commutator.divide_exact(i_hbar)
                if HBAR in quotient.variables():
                    raise AlgebraClosureError("hbar survives in the commutator", f"{left},{right}")
                brackets[f"{left},{right}"] = bilinear_coordinates(quotient, ps)
            except (AlgebraClosureError, PhaseSpaceError) as e:
                logger.warning(f"gl({n}) closure fails for [{left}, {right}]: {e}")
                closed = False
    return {"closed": closed, "brackets": brackets}


def configuration_preserving(generator: PolyScalar, ps: PhaseSpace) -> List[bool]:
    """For each ``q^k``: is ``[G, q^k]_M`` a function of the ``q`` alone?"""
    results = []
    momenta = set(ps.momenta)
    for name in ps.configuration:
        commutator = star_commutator(generator, ps.variable(name), ps)
        results.append(not (set(commutator.variables()) & momenta))
    return results
