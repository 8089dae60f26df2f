"""Active (Moyal) and passive (rotor) realisations of the same symmetries."""

import logging
from fractions import Fraction
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from moyal_engine import PhaseSpace, hamiltonian_flow_quadratic, star_commutator
from multivector_core import MetricSignature, Multivector, commutator_product, rotor_apply, rotor_exp
from scalar_ring import FloatBackend, PolyScalar
from settings import settings_manager

from .actions import rebase
from .algebra import BivectorAlgebra
from .constructors import make_lorentz, make_so3

logger = logging.getLogger(__name__)

LEVI_CIVITA = {(0, 1, 2): 1, (1, 2, 0): 1, (2, 0, 1): 1, (0, 2, 1): -1, (2, 1, 0): -1, (1, 0, 2): -1}


def _i_hbar(ps: PhaseSpace) -> PolyScalar:
    return ps.hbar.scale(Fraction(0), Fraction(1))


def moyal_action(generator: PolyScalar, field: Multivector, ps: PhaseSpace) -> Multivector:
    """``(1 / (i hbar)) [L, A]_M`` applied to every coefficient of ``A``."""
    i_hbar = _i_hbar(ps)
    return field.map_coefficients(lambda c: star_commutator(generator, c, ps).divide_exact(i_hbar))


def so3_active_passive_residuals(ps: Optional[PhaseSpace] = None) -> Dict[str, Multivector]:
    """``(1/(i hbar)) [L^i, A]_M - B_i x A`` for ``A = x^j s_j`` and ``L^i = eps_ijk x^j p^k``.

    The active Moyal rotation of the coefficients and the passive rotation
    of the basis agree, so every residual vanishes.
    """
    ps = ps or PhaseSpace.darboux(3, ("x1", "x2", "x3"), ("p1", "p2", "p3"))
    algebra = make_so3()
    x = [ps.variable(n) for n in ps.configuration]
    p = [ps.variable(n) for n in ps.momenta]
    generators = [rebase(b, ps.registry) for b in algebra.generators]
    field = Multivector.vector(algebra.signature, generators[0].backend, x)

    residuals: Dict[str, Multivector] = {}
    for i, (name, b) in enumerate(zip(algebra.names, generators)):
        j, k = (i + 1) % 3, (i + 2) % 3
        angular = x[j] * p[k] - x[k] * p[j]
        residuals[name] = moyal_action(angular, field, ps) - commutator_product(b, field)
    return residuals


# ----------------------------------------------------------------- Lorentz


def lorentz_phase_space(metric: str = "nonstandard") -> PhaseSpace:
    """``x^0..x^3, p^0..p^3`` with ``{x^mu, p^nu} = eta^{mu nu}``."""
    eta = MetricSignature.minkowski(metric)
    coordinates = tuple(f"x{m}" for m in range(4)) + tuple(f"p{m}" for m in range(4))
    rows: List[List[Fraction]] = [[Fraction(0)] * 8 for _ in range(8)]
    for mu in range(4):
        for nu in range(4):
            value = Fraction(eta.entry(mu, nu))
            rows[mu][4 + nu] = value
            rows[4 + nu][mu] = -value
    return PhaseSpace.from_matrix(coordinates, rows)


def lorentz_active_generators(ps: PhaseSpace) -> Dict[str, PolyScalar]:
    """``M^{mu nu} = x^mu p^nu - x^nu p^mu`` arranged as ``L1..L3`` and boosts ``K^i = M^{0i}``."""
    x = [ps.variable(f"x{m}") for m in range(4)]
    p = [ps.variable(f"p{m}") for m in range(4)]

    def m(mu: int, nu: int) -> PolyScalar:
        return x[mu] * p[nu] - x[nu] * p[mu]

    return {
        "L1": m(2, 3),
        "L2": m(3, 1),
        "L3": m(1, 2),
        "K1": m(0, 1),
        "K2": m(0, 2),
        "K3": m(0, 3),
    }


def _active_relations() -> List[Tuple[str, str, str, int]]:
    """``[A_i, B_j] = sign * i hbar * eps_ijk C_k`` for the nonstandard metric."""
    relations = []
    for (i, j, k), eps in LEVI_CIVITA.items():
        if i < j:
            relations.append((f"L{i + 1}", f"L{j + 1}", f"L{k + 1}", eps))
            relations.append((f"K{i + 1}", f"K{j + 1}", f"L{k + 1}", -eps))
        relations.append((f"L{i + 1}", f"K{j + 1}", f"K{k + 1}", eps))
    return relations


def lorentz_active_check(metric: str = "nonstandard") -> Dict[str, Any]:
    """Moyal commutators of the active Lorentz generators.

    For the nonstandard metric ``[L,L] = i hbar eps L``, ``[L,K] = i hbar eps K``
    and ``[K,K] = -i hbar eps L``; the standard metric replaces ``i`` by ``-i``.

    Returns:
        ``{"passed": bool, "metric": str, "residuals": {"L1,L2": PolyScalar, ...}}``.
    """
    ps = lorentz_phase_space(metric)
    generators = lorentz_active_generators(ps)
    flip = 1 if metric == "nonstandard" else -1
    i_hbar = _i_hbar(ps)
    residuals: Dict[str, PolyScalar] = {}
    for a, b, c, sign in _active_relations():
        commutator = star_commutator(generators[a], generators[b], ps)
        expected = generators[c] * i_hbar * (sign * flip)
        residuals[f"{a},{b}"] = commutator - expected
    # Unlisted pairs with a vanishing epsilon must commute.
    for i in range(3):
        residuals[f"L{i + 1},K{i + 1}"] = star_commutator(generators[f"L{i + 1}"], generators[f"K{i + 1}"], ps)
    passed = all(r.is_zero for r in residuals.values())
    if not passed:
        logger.warning(f"Active Lorentz algebra fails for the {metric} metric")
    return {"passed": passed, "metric": metric, "residuals": residuals}


def lorentz_metric_flip() -> Dict[str, Any]:
    """Passive structure constants under the two metrics; every nonzero entry changes sign."""
    nonstandard = make_lorentz("nonstandard")
    standard = make_lorentz("standard")
    mismatches = []
    for i in range(nonstandard.dim):
        for j in range(nonstandard.dim):
            for k in range(nonstandard.dim):
                a = nonstandard.structure_constants[i][j][k]
                b = standard.structure_constants[i][j][k]
                if b != -a:
                    mismatches.append((nonstandard.names[i], nonstandard.names[j], nonstandard.names[k], a, b))
    return {"passed": not mismatches, "mismatches": mismatches, "nonstandard": nonstandard, "standard": standard}


# -------------------------------------------------------------- oscillator


def oscillator_rotor_matrix(t: float) -> np.ndarray:
    """``M[a][b]`` = component ``a`` of ``R e_b R~`` with ``R = exp((t/2) eta rho)``."""
    signature = MetricSignature.euclidean(2, ("eta", "rho"))
    backend = FloatBackend()
    rotor = rotor_exp(Multivector.blade(signature, backend, [0, 1], 1.0), float(t))
    matrix = np.zeros((2, 2))
    for b in range(2):
        image = rotor_apply(rotor, Multivector.generator(signature, backend, b, 1.0))
        matrix[:, b] = [c.value for c in image.vector_components()]
    return matrix


def oscillator_consistency(times: Optional[List[float]] = None, tol: Optional[float] = None) -> Dict[str, Any]:
    """Compares the Moyal flow of ``H = (q^2 + p^2)/2`` with the rotor action at sampled ``t``."""
    times = times if times is not None else [0.0, 0.3, 1.0, 2.5, np.pi]
    tol = tol if tol is not None else settings_manager.get("tolerances.symplectic", 1e-10)
    ps = PhaseSpace.darboux(1)
    q, p = ps.variable("q"), ps.variable("p")
    h = (q * q + p * p) * Fraction(1, 2)
    residuals = {}
    for t in times:
        flow = hamiltonian_flow_quadratic(h, t, ps).matrix
        residuals[float(t)] = float(np.max(np.abs(flow - oscillator_rotor_matrix(t))))
    return {"passed": all(r <= tol for r in residuals.values()), "residuals": residuals}


# ----------------------------------------------------- S3 rotor group


_EVEN_MASKS = (0b000, 0b110, 0b101, 0b011)
_EVEN_SIGNS = (1.0, 1.0, -1.0, 1.0)


def even_coordinates(value: Multivector) -> np.ndarray:
    """Coordinates of an even element of Cl(3) in the basis ``1, B1, B2, B3``."""
    return np.array([sign * _float(value.coefficient(mask)) for mask, sign in zip(_EVEN_MASKS, _EVEN_SIGNS)])


def _float(c) -> float:
    return c.value if hasattr(c, "value") else float(c.constant_value()[0])


def _even_element(signature: MetricSignature, coordinates: np.ndarray) -> Multivector:
    blades = {mask: sign * float(c) for mask, sign, c in zip(_EVEN_MASKS, _EVEN_SIGNS, coordinates)}
    return Multivector(signature, FloatBackend(), blades)


def right_multiplication_matrix(b: Multivector) -> np.ndarray:
    """4x4 matrix of ``R -> R * B`` on even coordinates."""
    signature = b.signature
    matrix = np.zeros((4, 4))
    for a in range(4):
        basis = np.zeros(4)
        basis[a] = 1.0
        matrix[:, a] = even_coordinates(_even_element(signature, basis).star(b))
    return matrix


def left_invariant_fields(algebra: Optional[BivectorAlgebra] = None, seed: Optional[int] = None) -> Dict[str, Any]:
    """Left-invariant fields ``X_B(R) = R * B / 2`` on unit rotors of Cl(3).

    Checks at a sampled rotor that the central difference of ``R * exp((t/2) B)``
    at ``t = 0`` equals ``R * B / 2``, that the fields commute with left
    translation, that ``R * B_i`` is orthonormal in ``1, B1, B2, B3`` and that
    right multiplications close as ``[X_i, X_j] = 2 C^k_ij X_k``.
    """
    algebra = algebra or make_so3()
    seed = seed if seed is not None else settings_manager.get("property_suite.seed", 0)
    h = settings_manager.get("numerics.fd_step_first", 1e-5)
    rng = np.random.default_rng(seed)
    generators = [b.to_float() for b in algebra.generators]

    def random_rotor():
        bivector = generators[0].scale(0.0)
        for c, g in zip(rng.normal(size=3), generators):
            bivector = bivector + g.scale(float(c))
        return rotor_exp(bivector, 1.0)

    r = random_rotor()
    s = random_rotor()
    derivative_residual = 0.0
    invariance_residual = 0.0
    for b in generators:
        forward = r.value.star(rotor_exp(b, h).value)
        backward = r.value.star(rotor_exp(b, -h).value)
        derivative = (forward - backward).scale(1.0 / (2 * h))
        expected = r.value.star(b).scale(0.5)
        derivative_residual = max(derivative_residual, (derivative - expected).max_abs())
        translated = s.value.star(r.value).star(b).scale(0.5)
        invariance_residual = max(invariance_residual, (translated - s.value.star(expected)).max_abs())

    frame = np.stack([even_coordinates(r.value.star(b)) for b in generators])
    gram = frame @ frame.T
    gram_residual = float(np.max(np.abs(gram - np.eye(3))))

    rho = [right_multiplication_matrix(b) for b in generators]
    closure_residual = 0.0
    for i in range(3):
        for j in range(3):
            bracket = rho[j] @ rho[i] - rho[i] @ rho[j]
            expected_bracket = np.zeros((4, 4))
            for k, c in enumerate(algebra.structure_constants[i][j]):
                if c:
                    expected_bracket += 2 * float(c) * rho[k]
            closure_residual = max(closure_residual, float(np.max(np.abs(bracket - expected_bracket))))

    tol = settings_manager.get("tolerances.frame", 1e-10)
    fd_tol = 10 * h * h
    passed = (
        derivative_residual <= fd_tol
        and invariance_residual <= tol
        and gram_residual <= tol
        and closure_residual <= tol
    )
    return {
        "passed": passed,
        "derivative_residual": derivative_residual,
        "left_invariance_residual": invariance_residual,
        "gram_residual": gram_residual,
        "closure_residual": closure_residual,
    }
