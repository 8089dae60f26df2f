"""Rotor-group actions on bivector algebras and on vectors."""

import logging
from typing import Any, Dict, Optional, Sequence

import numpy as np

from multivector_core import (
    Multivector,
    Rotor,
    commutator_product,
    inner,
    passive_rotor_apply,
    rotor_apply,
    rotor_exp,
)
from scalar_ring import ExactBackend, VariableRegistry

from .algebra import BivectorAlgebra
from .constructors import complex_structure

logger = logging.getLogger(__name__)


def rebase(b: Multivector, registry: VariableRegistry) -> Multivector:
    """Re-expresses a constant-coefficient exact multivector over ``registry``."""

    def convert(c):
        re, im = c.constant_value()
        return registry.constant(re, im)

    return b.map_coefficients(convert, ExactBackend(registry))


def adjoint(rotor: Rotor, b: Multivector) -> Multivector:
    """``Ad_R B = R * B * reverse(R)``."""
    return rotor_apply(rotor, b)


def ad(a: Multivector, b: Multivector) -> Multivector:
    """``ad_A B = A x B``."""
    return commutator_product(a, b)


def coadjoint(rotor: Rotor, theta: Multivector) -> Multivector:
    """Right coadjoint action ``Ad*_R Theta = reverse(R) * Theta * R``."""
    return passive_rotor_apply(rotor, theta)


def coadjoint_infinitesimal(a: Multivector, theta: Multivector) -> Multivector:
    """``ad*_A Theta = Theta x A``."""
    return commutator_product(theta, a)


def dual_pairing(b: Multivector, theta: Multivector) -> Any:
    """``iota_B Theta = reverse(B) . Theta`` (a scalar)."""
    return b.reverse().star(theta).scalar_part()


def induced_vector_field(b: Multivector, x: Multivector) -> Multivector:
    """``B . x``, the field induced on vectors by ``exp((t/2) B)``."""
    return inner(b, x)


def position_vector(signature, registry: Optional[VariableRegistry] = None, prefix: str = "x") -> Multivector:
    """Symbolic ``x = x1 s1 + ... + xd sd`` with coordinates in ``registry``."""
    names = tuple(f"{prefix}{i + 1}" for i in range(signature.dim))
    registry = registry or VariableRegistry(names)
    backend = ExactBackend(registry)
    return Multivector.vector(signature, backend, [registry.variable(n) for n in names])


def induced_field_bracket(a: Multivector, b: Multivector, x: Multivector) -> Multivector:
    """Jacobi-Lie bracket of the linear fields ``A . x`` and ``B . x``.

    For linear fields ``[u, v] = (u . grad) v - (v . grad) u`` reduces to
    ``B . (A . x) - A . (B . x)``.
    """
    return inner(b, inner(a, x)) - inner(a, inner(b, x))


def anti_homomorphism_residual(a: Multivector, b: Multivector, x: Multivector) -> Multivector:
    """``[A.x, B.x]_JLB + (A x B) . x``; vanishes identically."""
    return induced_field_bracket(a, b, x) + inner(commutator_product(a, b), x)


def ad_homomorphism_residual(rotor: Rotor, a: Multivector, b: Multivector) -> Multivector:
    """``Ad_R(A x B) - Ad_R A x Ad_R B``."""
    return adjoint(rotor, commutator_product(a, b)) - commutator_product(adjoint(rotor, a), adjoint(rotor, b))


def coadjoint_pairing_residual(rotor: Rotor, b: Multivector, theta: Multivector) -> Any:
    """``reverse(B) . Ad*_R Theta - reverse(Ad_R B) . Theta``."""
    return dual_pairing(b, coadjoint(rotor, theta)) - dual_pairing(adjoint(rotor, b), theta)


def unitary_invariance_check(algebra: BivectorAlgebra, t: float = 0.7, tol: float = 1e-12) -> Dict[str, Any]:
    """``B x J = 0`` exactly and ``R * J * reverse(R) = J`` numerically for every u(n) generator.

    Returns:
        ``{"passed": bool, "generators": {name: {"commutes": bool, "rotor_residual": float}}}``.
    """
    j = complex_structure(algebra)
    j_float = j.to_float()
    results: Dict[str, Dict[str, Any]] = {}
    for name, b in zip(algebra.names, algebra.generators):
        commutes = commutator_product(b, j).is_zero
        rotor = rotor_exp(b, float(t))
        residual = (rotor_apply(rotor, j_float) - j_float).max_abs()
        results[name] = {"commutes": commutes, "rotor_residual": residual}
    passed = all(r["commutes"] and r["rotor_residual"] <= tol for r in results.values())
    if not passed:
        logger.warning(f"Unitary invariance fails for {algebra.label}")
    return {"passed": passed, "generators": results}


def ad_left_action_residual(algebra: BivectorAlgebra, rng: np.random.Generator, samples: int = 5) -> float:
    """Largest ``|Ad_{R R'} B - Ad_R Ad_R' B|`` over random float rotors and generators."""
    worst = 0.0
    generators = [b.to_float() for b in algebra.generators]
    for _ in range(samples):
        r1 = rotor_exp(_random_element(generators, rng), 1.0)
        r2 = rotor_exp(_random_element(generators, rng), 1.0)
        composed = r1.compose(r2)
        for b in generators:
            lhs = adjoint(composed, b)
            rhs = adjoint(r1, adjoint(r2, b))
            worst = max(worst, (lhs - rhs).max_abs())
    return worst


def _random_element(generators: Sequence[Multivector], rng: np.random.Generator) -> Multivector:
    total = generators[0].scale(0.0)
    for b in generators:
        total = total + b.scale(float(rng.normal()))
    return total
