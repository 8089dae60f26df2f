"""
Tests for Moyal and extended Moyal-Clifford calculus
"""

import math
import sys
from fractions import Fraction
from pathlib import Path

import numpy as np
import pytest

project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

from exceptions import GradeError, PhaseSpaceError
from moyal_engine import (
    ExtendedPhaseSpace,
    PhaseSpace,
    brst_charges,
    brst_checks,
    check_bracket_limit,
    classical_limit,
    compare_equations_of_motion,
    configuration_preserving,
    extended_hamiltonian,
    extended_lagrangian_terms,
    extended_poisson_bracket,
    extended_star,
    gln_bosonic_generators,
    gln_closure,
    grassmann_parity,
    hamiltonian_flow_quadratic,
    hbar_coefficient,
    moyal_power,
    moyal_star,
    passive_hamiltonian_candidate,
    passive_hamiltonian_check,
    poisson_bracket,
    quadratic_hessian,
    star_commutator,
)
from multivector_core import Multivector


class TestPhaseSpace:
    """Tests for bosonic phase spaces"""

    def test_darboux_names(self):
        assert PhaseSpace.darboux(1).coordinates == ("q", "p")
        space = PhaseSpace.darboux(2)
        assert space.coordinates == ("q1", "q2", "p1", "p2")
        assert space.poisson("q1", "p1") == 1
        assert space.poisson("p2", "q2") == -1
        assert space.poisson("q1", "p2") == 0

    def test_registry_carries_hbar(self, phase_space):
        assert phase_space.registry.names == ("q", "p", "hbar")

    def test_darboux_symplectic_form_equals_poisson_matrix(self, phase_space):
        assert phase_space.symplectic_rows() == phase_space.poisson_matrix

    @pytest.mark.parametrize(
        "coordinates,matrix",
        [
            (("q",), [[0]]),
            (("q", "p"), [[0, 1], [1, 0]]),
            (("q", "p"), [[0, 0], [0, 0]]),
            (("q", "hbar"), [[0, 1], [-1, 0]]),
            (("q", "p"), [[0, 0.5], [-0.5, 0]]),
        ],
    )
    def test_invalid_spaces(self, coordinates, matrix):
        with pytest.raises(PhaseSpaceError):
            PhaseSpace.from_matrix(coordinates, matrix)

    def test_hamiltonian_vector_field(self, phase_space):
        q, p = phase_space.variables()
        field = phase_space.hamiltonian_vector_field((p**2 + q**2) / 2)
        assert field == [p, -q]

    def test_foreign_variable(self, phase_space):
        from scalar_ring import VariableRegistry

        x = VariableRegistry(["x"]).variable("x")
        with pytest.raises(PhaseSpaceError):
            phase_space.coerce(x)


class TestMoyalStar:
    """Tests for the Moyal product"""

    def setup_method(self):
        self.space = PhaseSpace.darboux(1)
        self.q, self.p = self.space.variables()
        self.half_i_hbar = self.space.hbar.scale(Fraction(0), Fraction(1, 2))

    def test_canonical_pair(self):
        assert moyal_star(self.q, self.p, self.space) == self.q * self.p + self.half_i_hbar
        assert moyal_star(self.p, self.q, self.space) == self.q * self.p - self.half_i_hbar

    def test_canonical_commutator(self):
        i_hbar = self.space.hbar.scale(Fraction(0), Fraction(1))
        assert star_commutator(self.q, self.p, self.space) == i_hbar

    def test_commuting_coordinates(self):
        assert moyal_power(self.q, 3, self.space) == self.q**3

    def test_associativity(self):
        q, p = self.q, self.p
        f, g, h = q**2, p**2 + q, q * p
        left = moyal_star(moyal_star(f, g, self.space), h, self.space)
        right = moyal_star(f, moyal_star(g, h, self.space), self.space)
        assert left == right

    def test_hbar_expansion(self):
        commutator = star_commutator(self.q**2, self.p**2, self.space)
        i = self.space.registry.imaginary_unit()
        assert hbar_coefficient(commutator, 1) == 4 * i * self.q * self.p
        assert hbar_coefficient(commutator, 0).is_zero

    @pytest.mark.parametrize(
        "pair",
        [
            lambda q, p: (q, p),
            lambda q, p: (q**2 * p, p**3),
            lambda q, p: (q**3 + p, q * p**2),
        ],
    )
    def test_classical_limit_matches_poisson_bracket(self, pair):
        f, g = pair(self.q, self.p)
        assert check_bracket_limit(f, g, self.space)
        assert classical_limit(f, g, self.space) == poisson_bracket(f, g, self.space)

    def test_poisson_bracket(self):
        assert poisson_bracket(self.q, self.p, self.space) == 1
        assert poisson_bracket(self.q**2, self.p, self.space) == 2 * self.q

    def test_negative_power(self):
        with pytest.raises(ValueError):
            moyal_power(self.q, -1, self.space)


class TestQuadraticFlows:
    """Tests for linear flows of quadratic Hamiltonians"""

    def setup_method(self):
        self.space = PhaseSpace.darboux(1)
        self.q, self.p = self.space.variables()

    def test_oscillator_rotates_phase_plane(self):
        t = 0.3
        flow = hamiltonian_flow_quadratic((self.p**2 + self.q**2) / 2, t, self.space)
        expected = np.array([[math.cos(t), math.sin(t)], [-math.sin(t), math.cos(t)]])
        assert np.allclose(flow.matrix, expected, atol=1e-12)
        assert flow.is_symplectic(self.space.as_array())

    def test_apply_checks_dimension(self):
        flow = hamiltonian_flow_quadratic(self.p**2 / 2, 1.0, self.space)
        assert np.allclose(flow.apply([1.0, 2.0]), [3.0, 2.0])
        with pytest.raises(PhaseSpaceError):
            flow.apply([1.0])

    def test_non_quadratic_rejected(self):
        with pytest.raises(PhaseSpaceError):
            quadratic_hessian(self.q**3, self.space)
        with pytest.raises(PhaseSpaceError):
            quadratic_hessian(self.q, self.space)


class TestBosonicGln:
    """Tests for the bilinear realization of gl(n)"""

    def test_generator_names(self):
        generators = gln_bosonic_generators(2, PhaseSpace.darboux(2))
        assert sorted(generators) == ["E12", "F12", "K1", "K2"]

    def test_closure(self):
        result = gln_closure(2, PhaseSpace.darboux(2))
        assert result["closed"]
        assert result["brackets"]["K1,K2"] == {}

    def test_wrong_phase_space(self):
        with pytest.raises(PhaseSpaceError):
            gln_bosonic_generators(2, PhaseSpace.darboux(1))

    def test_dilation_scales_position(self):
        ps = PhaseSpace.darboux(1)
        q = ps.variable(ps.configuration[0])
        k1 = gln_bosonic_generators(1, ps)["K1"]
        assert star_commutator(k1, q, ps) == q * ps.hbar.scale(Fraction(0), Fraction(-1))

    def test_generators_preserve_configuration(self):
        ps = PhaseSpace.darboux(2)
        for name, generator in gln_bosonic_generators(2, ps).items():
            assert configuration_preserving(generator, ps) == [True, True], name

    def test_momentum_square_mixes_configuration(self):
        ps = PhaseSpace.darboux(2)
        p1 = ps.variable(ps.momenta[0])
        assert configuration_preserving(p1 * p1, ps) == [False, True]


class TestExtendedPhaseSpace:
    """Tests for the extended product, brackets and BRST charges"""

    def setup_method(self):
        self.base = PhaseSpace.darboux(1)
        self.eps = ExtendedPhaseSpace(self.base)
        self.i = self.eps.registry.imaginary_unit()
        q, p = self.base.variables()
        self.oscillator = (p**2 + q**2) / 2
        self.anharmonic = p**2 / 2 + q**4 / 4
        self.squeeze = q * p

    def test_bosonic_pairing(self):
        z, y = self.eps.z("q"), self.eps.y("q")
        commutator = extended_star(z, y, self.eps) - extended_star(y, z, self.eps)
        assert commutator == self.eps.scalar(self.i)

    def test_ghost_contraction(self):
        zeta, lam = self.eps.zeta("q"), self.eps.lam("q")
        anticommutator = extended_star(zeta, lam, self.eps) + extended_star(lam, zeta, self.eps)
        assert anticommutator == 1

    def test_bracket_of_canonical_pair(self):
        assert extended_poisson_bracket(self.eps.z("q"), self.eps.y("q"), self.eps) == 1

    def test_parity(self):
        assert grassmann_parity(self.eps.zeta("q")) == 1
        assert grassmann_parity(self.eps.z("p")) == 0
        with pytest.raises(GradeError):
            grassmann_parity(self.eps.zeta("q") + 1)

    def test_oscillator_extended_hamiltonian(self):
        registry = self.eps.registry
        q, p = registry.variable("q"), registry.variable("p")
        y_q, y_p = registry.variable("y_q"), registry.variable("y_p")
        expected = (
            self.eps.scalar(y_q * p - y_p * q)
            + self.eps.ghost_pair(0, 1, self.i)
            - self.eps.ghost_pair(1, 0, self.i)
        )
        assert extended_hamiltonian(self.oscillator, self.eps) == expected

    @pytest.mark.parametrize("name", ["oscillator", "anharmonic"])
    def test_equations_of_motion(self, name):
        result = compare_equations_of_motion(getattr(self, name), self.eps)
        assert result == {"passed": True, "mismatches": []}

    def test_brst_brackets_vanish(self):
        h_extended = extended_hamiltonian(self.anharmonic, self.eps)
        result = brst_checks(self.eps, h_extended=h_extended)
        assert result["passed"]
        assert set(result["brackets"]) == {"Q,H", "Qbar,H", "Q,Q", "Qbar,Qbar", "Q,Qbar"}

    def test_brst_needs_hamiltonian(self):
        with pytest.raises(ValueError):
            brst_checks(self.eps)

    def test_charges_are_odd(self):
        charges = brst_charges(self.eps)
        assert grassmann_parity(charges.q) == 1
        assert grassmann_parity(charges.qbar) == 1

    @pytest.mark.parametrize("name", ["oscillator", "anharmonic", "squeeze"])
    def test_passive_candidate_passes(self, name):
        h = getattr(self, name)
        candidate = passive_hamiltonian_candidate(h, self.eps)
        assert passive_hamiltonian_check(h, candidate, self.eps) == {"passed": True, "residuals": {}}

    def test_rescaled_candidate_fails(self):
        candidate = passive_hamiltonian_candidate(self.oscillator, self.eps)
        result = passive_hamiltonian_check(self.oscillator, candidate.scale(2), self.eps)
        assert not result["passed"]
        assert set(result["residuals"]) == {"zeta_q", "zeta_p"}

    def test_zero_hamiltonian_has_zero_passive_part(self):
        zero = Multivector.zero(self.eps.signature, self.eps.backend)
        assert passive_hamiltonian_check(self.oscillator - self.oscillator, zero, self.eps)["passed"]

    def test_passive_hamiltonian_must_be_bivector(self):
        with pytest.raises(GradeError):
            passive_hamiltonian_check(self.oscillator, self.eps.zeta("q"), self.eps)

    @pytest.mark.parametrize("name", ["oscillator", "anharmonic", "squeeze"])
    def test_on_shell_lagrangian_vanishes(self, name):
        terms = extended_lagrangian_terms(getattr(self, name), self.eps)
        assert terms["lagrangian_on_shell"].is_zero
        assert terms["kinetic_on_shell"] == terms["hamiltonian"]

    def test_bracket_with_hbar_scaling(self):
        eps = ExtendedPhaseSpace(self.base, include_hbar=True)
        assert extended_poisson_bracket(eps.z("q"), eps.y("q"), eps) == 1
        zeta, lam = eps.zeta("q"), eps.lam("q")
        assert extended_star(zeta, lam, eps) + extended_star(lam, zeta, eps) == eps.scalar(eps.hbar)

    def test_two_degrees_of_freedom(self):
        base = PhaseSpace.darboux(2)
        eps = ExtendedPhaseSpace(base)
        q1, q2, p1, p2 = base.variables()
        h = (p1**2 + p2**2) / 2 + q1**2 * q2**2
        assert compare_equations_of_motion(h, eps)["passed"]
        assert brst_checks(eps, h=h)["passed"]
