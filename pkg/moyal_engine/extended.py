"""Extended phase space with auxiliary momenta and ghost generators.

Values are multivectors over the ghost signature (``zeta_a``, ``lambda^a``)
whose coefficients are polynomials in ``z^a``, ``y_a`` and ``hbar``. The
extended product combines the bosonic pairing ``(i/2)(<-d_z d_y-> - <-d_y d_z->)``
on coefficients with the Clifford product of the ghost signature, whose only
contractions are ``zeta_a <-> lambda^a`` at ``1/2`` each way.
"""

import logging
from fractions import Fraction
from typing import Any, Dict, List, Union

from exceptions import GradeError, PhaseSpaceError, RegistryError
from multivector_core import MetricSignature, Multivector, graded_star_commutator, popcount, product_table
from scalar_ring import ExactBackend, PolyScalar, VariableRegistry

from .moyal import bidifferential_exponential
from .phase_space import HBAR, PhaseSpace

logger = logging.getLogger(__name__)

Value = Union[Multivector, PolyScalar, int, Fraction]


def auxiliary_name(coordinate: str) -> str:
    return f"y_{coordinate}"


class ExtendedPhaseSpace:
    """Base phase space extended by ``y_a`` and the ghosts ``zeta_a``, ``lambda^a``.

    Args:
        base: The bosonic phase space.
        include_hbar: Scale the bosonic pairing by ``hbar`` and every fermionic
            contraction by ``hbar``; brackets are then taken in the ``hbar -> 0`` limit.
    """

    def __init__(self, base: PhaseSpace, include_hbar: bool = False):
        self.base = base
        self.include_hbar = include_hbar
        coordinates = base.coordinates
        self.auxiliary = tuple(auxiliary_name(c) for c in coordinates)
        self.registry = VariableRegistry(coordinates + self.auxiliary + (HBAR,))
        self.backend = ExactBackend(self.registry)

        n = base.dim
        half = Fraction(1, 2)
        rows = [[Fraction(0)] * (2 * n) for _ in range(2 * n)]
        for k in range(n):
            rows[k][n + k] = half
            rows[n + k][k] = half
        names = tuple(f"zeta_{c}" for c in coordinates) + tuple(f"lambda_{c}" for c in coordinates)
        self.signature = MetricSignature.from_rows(rows, "symmetric", f"ghost:{'-'.join(coordinates)}", names)

        i = self.registry.imaginary_unit()
        scale = self.registry.variable(HBAR) if include_hbar else self.registry.one()
        self._pairs = {}
        for c, y in zip(coordinates, self.auxiliary):
            self._pairs[(c, y)] = i * scale * Fraction(1, 2)
            self._pairs[(y, c)] = i * scale * Fraction(-1, 2)

    @property
    def dim(self) -> int:
        return self.base.dim

    @property
    def hbar(self) -> PolyScalar:
        return self.registry.variable(HBAR)

    def bosonic_pairs(self) -> Dict[tuple, PolyScalar]:
        return dict(self._pairs)

    # ---------------------------------------------------------------- values

    def lift(self, value: Union[PolyScalar, int, Fraction]) -> PolyScalar:
        if isinstance(value, PolyScalar):
            try:
                return value.lift(self.registry)
            except RegistryError as e:
                raise PhaseSpaceError("Polynomial uses a variable outside the extended phase space", e.variable) from e
        return self.registry.constant(Fraction(value))

    def coerce(self, value: Value) -> Multivector:
        if isinstance(value, Multivector):
            if value.signature != self.signature:
                raise PhaseSpaceError(f"Multivector over {value.signature.name} is not an extended value")
            if value.backend != self.backend:
                return value.map_coefficients(self.lift, self.backend)
            return value
        return Multivector.scalar(self.signature, self.backend, self.lift(value))

    def scalar(self, value: Value) -> Multivector:
        return self.coerce(value)

    def z(self, name: str) -> Multivector:
        self.base.index(name)
        return self.scalar(self.registry.variable(name))

    def y(self, name: str) -> Multivector:
        return self.scalar(self.registry.variable(auxiliary_name(name)))

    def zeta(self, name: str) -> Multivector:
        return Multivector.generator(self.signature, self.backend, self.base.index(name))

    def lam(self, name: str) -> Multivector:
        return Multivector.generator(self.signature, self.backend, self.dim + self.base.index(name))

    def ghost_pair(self, j: int, l: int, coefficient: Any = 1) -> Multivector:
        """``coefficient * zeta_j ^ lambda^l`` by coordinate indices."""
        mask = (1 << j) | (1 << (self.dim + l))
        return Multivector(self.signature, self.backend, {mask: coefficient})


def grassmann_parity(value: Multivector) -> int:
    """``0`` for even, ``1`` for odd values.

    Raises:
        GradeError: If the value mixes even and odd ghost content.
    """
    parities = {g % 2 for g in value.grades()}
    if len(parities) > 1:
        raise GradeError("Extended value has no definite Grassmann parity; split it first", value.grades())
    return parities.pop() if parities else 0


def extended_star(f: Value, g: Value, eps: ExtendedPhaseSpace) -> Multivector:
    """Extended Moyal-Clifford product ``F *_EMC G``.

    Example:
        >>> extended_star(eps.z("q"), eps.y("q"), eps) - extended_star(eps.y("q"), eps.z("q"), eps)   # i
    """
    f, g = eps.coerce(f), eps.coerce(g)
    table = product_table(eps.signature)
    pairs = eps.bosonic_pairs()
    hbar = eps.hbar
    out: Dict[int, PolyScalar] = {}
    for a, fa in f.items():
        for b, gb in g.items():
            coefficient = bidifferential_exponential(fa, gb, pairs, eps.registry)
            if coefficient.is_zero:
                continue
            for mask, entry in table.product(a, b).items():
                term = coefficient.scale(Fraction(entry))
                if eps.include_hbar:
                    contractions = (popcount(a) + popcount(b) - popcount(mask)) // 2
                    if contractions:
                        term = term * hbar**contractions
                out[mask] = out[mask] + term if mask in out else term
    return Multivector(eps.signature, eps.backend, out)


def extended_poisson_bracket(f: Value, g: Value, eps: ExtendedPhaseSpace) -> Multivector:
    """``(1/i)[F *_EMC G - (-1)^(e(F) e(G)) G *_EMC F]`` for values of definite parity.

    With ``include_hbar`` the graded commutator is divided by ``i hbar`` and
    evaluated at ``hbar = 0``.

    Raises:
        GradeError: If ``F`` or ``G`` mixes parities.
    """
    f, g = eps.coerce(f), eps.coerce(g)
    sign = -1 if grassmann_parity(f) * grassmann_parity(g) else 1
    commutator = extended_star(f, g, eps) - extended_star(g, f, eps).scale(sign)
    if eps.include_hbar:
        i_hbar = eps.hbar.scale(Fraction(0), Fraction(1))
        return commutator.map_coefficients(lambda c: c.divide_exact(i_hbar).substitute({HBAR: 0}))
    return commutator.map_coefficients(lambda c: c.scale(Fraction(0), Fraction(-1)))


def super_jacobi_residual(f: Value, g: Value, k: Value, eps: ExtendedPhaseSpace) -> Multivector:
    """Graded cyclic sum ``(-1)^(e_F e_K) {F,{G,K}} + (-1)^(e_G e_F) {G,{K,F}} + (-1)^(e_K e_G) {K,{F,G}}``."""
    f, g, k = eps.coerce(f), eps.coerce(g), eps.coerce(k)
    ef, eg, ek = grassmann_parity(f), grassmann_parity(g), grassmann_parity(k)
    bracket = extended_poisson_bracket
    total = bracket(f, bracket(g, k, eps), eps).scale(-1 if ef * ek else 1)
    total = total + bracket(g, bracket(k, f, eps), eps).scale(-1 if eg * ef else 1)
    total = total + bracket(k, bracket(f, g, eps), eps).scale(-1 if ek * eg else 1)
    return total


def _lifted_derivatives(h: PolyScalar, eps: ExtendedPhaseSpace):
    h = eps.lift(eps.base.coerce(h))
    names = eps.base.coordinates
    gradient = [h.diff(c) for c in names]
    hessian = [[d.diff(c) for c in names] for d in gradient]
    return h, gradient, hessian


def passive_hamiltonian_candidate(h: PolyScalar, eps: ExtendedPhaseSpace) -> Multivector:
    """Ghost bilinear ``i zeta_j J^{jk} d_k d_l H lambda^l``."""
    _, _, hessian = _lifted_derivatives(h, eps)
    J = eps.base.poisson_matrix
    n = eps.dim
    i = eps.registry.imaginary_unit()
    total = Multivector.zero(eps.signature, eps.backend)
    for j in range(n):
        for l in range(n):
            coefficient = eps.registry.zero()
            for k in range(n):
                if J[j][k]:
                    coefficient = coefficient + hessian[k][l] * J[j][k]
            if not coefficient.is_zero:
                total = total + eps.ghost_pair(j, l, i * coefficient)
    return total


def extended_hamiltonian(h: PolyScalar, eps: ExtendedPhaseSpace) -> Multivector:
    """``H_E = y_i J^{ij} d_j H + i zeta_j J^{jk} d_l d_k H lambda^l``.

    Example:
        >>> extended_hamiltonian((p**2 + q**2) / 2, eps)
        # y_q p - y_p q + i zeta_q lambda^p - i zeta_p lambda^q
    """
    _, gradient, _ = _lifted_derivatives(h, eps)
    J = eps.base.poisson_matrix
    bosonic = eps.registry.zero()
    for i, y_name in enumerate(eps.auxiliary):
        y = eps.registry.variable(y_name)
        for j in range(eps.dim):
            if J[i][j] and not gradient[j].is_zero:
                bosonic = bosonic + y * gradient[j] * J[i][j]
    return eps.scalar(bosonic) + passive_hamiltonian_candidate(h, eps)


def extended_equations_of_motion(h_extended: Multivector, eps: ExtendedPhaseSpace) -> Dict[str, Dict[str, Multivector]]:
    """Brackets of every extended variable with ``H_E``.

    Returns:
        ``{"z": {...}, "zeta": {...}, "y": {...}, "lambda": {...}}`` keyed by coordinate name.
    """
    names = eps.base.coordinates
    return {
        "z": {c: extended_poisson_bracket(eps.z(c), h_extended, eps) for c in names},
        "zeta": {c: extended_poisson_bracket(eps.zeta(c), h_extended, eps) for c in names},
        "y": {c: extended_poisson_bracket(eps.y(c), h_extended, eps) for c in names},
        "lambda": {c: extended_poisson_bracket(eps.lam(c), h_extended, eps) for c in names},
    }


def equations_of_motion_expected(h: PolyScalar, eps: ExtendedPhaseSpace) -> Dict[str, Dict[str, Multivector]]:
    """Right-hand sides built directly from derivatives of ``H``.

    ``z^i' = J^{ij} d_j H``, ``zeta_i' = -J^{jk} d_k d_i H zeta_j``,
    ``lambda^i' = J^{ik} d_k d_l H lambda^l`` and
    ``y_i' = -y_k J^{kj} d_i d_j H - i zeta_j J^{jk} d_i d_k d_l H lambda^l``.
    """
    _, gradient, hessian = _lifted_derivatives(h, eps)
    names = eps.base.coordinates
    J = eps.base.poisson_matrix
    n = eps.dim
    registry = eps.registry
    zero = Multivector.zero(eps.signature, eps.backend)
    i_unit = registry.imaginary_unit()

    z_dot: Dict[str, Multivector] = {}
    zeta_dot: Dict[str, Multivector] = {}
    lambda_dot: Dict[str, Multivector] = {}
    y_dot: Dict[str, Multivector] = {}
    for a, name in enumerate(names):
        component = registry.zero()
        for j in range(n):
            if J[a][j]:
                component = component + gradient[j] * J[a][j]
        z_dot[name] = eps.scalar(component)

        zeta = zero
        for j in range(n):
            coefficient = registry.zero()
            for k in range(n):
                if J[j][k]:
                    coefficient = coefficient - hessian[k][a] * J[j][k]
            zeta = zeta + eps.zeta(names[j]).scale(coefficient)
        zeta_dot[name] = zeta

        lam = zero
        for l in range(n):
            coefficient = registry.zero()
            for k in range(n):
                if J[a][k]:
                    coefficient = coefficient + hessian[k][l] * J[a][k]
            lam = lam + eps.lam(names[l]).scale(coefficient)
        lambda_dot[name] = lam

        bosonic = registry.zero()
        for k, y_name in enumerate(eps.auxiliary):
            for j in range(n):
                if J[k][j]:
                    bosonic = bosonic - registry.variable(y_name) * hessian[a][j] * J[k][j]
        fermionic = zero
        for j in range(n):
            for l in range(n):
                coefficient = registry.zero()
                for k in range(n):
                    if J[j][k]:
                        coefficient = coefficient + hessian[k][l].diff(name) * J[j][k]
                if not coefficient.is_zero:
                    fermionic = fermionic - eps.ghost_pair(j, l, i_unit * coefficient)
        y_dot[name] = eps.scalar(bosonic) + fermionic

    return {"z": z_dot, "zeta": zeta_dot, "y": y_dot, "lambda": lambda_dot}


def compare_equations_of_motion(h: PolyScalar, eps: ExtendedPhaseSpace) -> Dict[str, Any]:
    """Checks every bracket-derived equation of motion against its expected form."""
    derived = extended_equations_of_motion(extended_hamiltonian(h, eps), eps)
    expected = equations_of_motion_expected(h, eps)
    mismatches: List[str] = []
    for family, components in derived.items():
        for name, value in components.items():
            if value != expected[family][name]:
                mismatches.append(f"{family}:{name}")
    if mismatches:
        logger.warning(f"Equations of motion differ for {mismatches}")
    return {"passed": not mismatches, "mismatches": mismatches}


def passive_hamiltonian_check(h: PolyScalar, h_passive: Multivector, space: Union[PhaseSpace, ExtendedPhaseSpace]) -> Dict[str, Any]:
    """Verifies ``(1/i)[zeta_i, H_p] = -J^{jk} d_k d_i H zeta_j`` for every generator.

    ``zeta_i`` is generator ``i`` of ``h_passive``'s signature, which must
    have at least as many generators as the phase space has coordinates.

    Returns:
        ``{"passed": bool, "residuals": {generator name: residual text}}``.
    """
    ps = space.base if isinstance(space, ExtendedPhaseSpace) else space
    signature = h_passive.signature
    backend = h_passive.backend
    n = ps.dim
    if signature.dim < n:
        raise PhaseSpaceError(f"Passive Hamiltonian has {signature.dim} generators, need {n}")
    if not h_passive.is_zero and h_passive.grades() != (2,):
        raise GradeError("Passive Hamiltonian must be a bivector", h_passive.grades())

    hessian = ps.hessian(ps.coerce(h))
    J = ps.poisson_matrix
    residuals: Dict[str, str] = {}
    for index in range(n):
        zeta_i = Multivector.generator(signature, backend, index)
        lhs = graded_star_commutator(zeta_i, h_passive).scale((0, -1))
        rhs = Multivector.zero(signature, backend)
        for j in range(n):
            coefficient = ps.registry.zero()
            for k in range(n):
                if J[j][k]:
                    coefficient = coefficient - hessian[k][index] * J[j][k]
            if not coefficient.is_zero:
                rhs = rhs + Multivector.generator(signature, backend, j, backend.coerce(coefficient))
        residual = lhs - rhs
        if not residual.is_zero:
            residuals[signature.generator_names[index]] = repr(residual)
    if residuals:
        logger.info(f"Passive Hamiltonian check failed for {sorted(residuals)}")
    return {"passed": not residuals, "residuals": residuals}


def extended_lagrangian_terms(h: PolyScalar, eps: ExtendedPhaseSpace) -> Dict[str, Multivector]:
    """Kinetic terms ``y_i z^i' + i lambda^i zeta_i'`` on shell, next to ``H_E``.

    The on-shell Lagrangian ``kinetic - H_E`` vanishes because ``H_E`` is
    linear in ``y`` and in the ghost bilinear.
    """
    h_extended = extended_hamiltonian(h, eps)
    motion = equations_of_motion_expected(h, eps)
    i_unit = eps.registry.imaginary_unit()
    kinetic = Multivector.zero(eps.signature, eps.backend)
    for name in eps.base.coordinates:
        kinetic = kinetic + motion["z"][name].scale(eps.registry.variable(auxiliary_name(name)))
        kinetic = kinetic + eps.lam(name).wedge(motion["zeta"][name]).scale(i_unit)
    return {
        "hamiltonian": h_extended,
        "kinetic_on_shell": kinetic,
        "lagrangian_on_shell": kinetic - h_extended,
    }
