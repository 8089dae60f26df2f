"""
Tests for the coefficient ring
"""

import sys
from fractions import Fraction
from pathlib import Path

import pytest

project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

from exceptions import BackendMismatchError, InputSpecError, NonFiniteError, PhaseSpaceError, RegistryError
from scalar_ring import (
    ExactBackend,
    FloatBackend,
    FloatScalar,
    VariableRegistry,
    default_registry,
    exact_to_float,
    format_rational,
    parse_rational,
    poly_from_dict,
    poly_from_json,
    poly_to_dict,
    poly_to_json,
)


class TestVariableRegistry:
    """Tests for VariableRegistry"""

    def test_index_follows_registration_order(self):
        registry = VariableRegistry(["q", "p", "hbar"])
        assert registry.index("p") == 1
        assert len(registry) == 3
        assert "hbar" in registry

    def test_duplicate_name_rejected(self):
        with pytest.raises(RegistryError) as excinfo:
            VariableRegistry(["q", "q"])
        assert excinfo.value.variable == "q"

    def test_empty_registry_rejected(self):
        with pytest.raises(RegistryError):
            VariableRegistry([])

    def test_unknown_variable(self):
        with pytest.raises(RegistryError):
            VariableRegistry(["q"]).index("p")

    def test_registries_compare_by_names(self):
        assert VariableRegistry(["q", "p"]) == VariableRegistry(("q", "p"))
        assert VariableRegistry(["q", "p"]) != VariableRegistry(["p", "q"])

    def test_extended_keeps_existing_names_once(self):
        extended = VariableRegistry(["q", "p"]).extended(["p", "eps"])
        assert extended.names == ("q", "p", "eps")

    def test_default_registry(self):
        assert default_registry().names == ("t",)


class TestPolyScalar:
    """Tests for exact polynomial arithmetic"""

    def setup_method(self):
        self.registry = VariableRegistry(["q", "p"])
        self.q, self.p = self.registry.variables("q", "p")
        self.i = self.registry.imaginary_unit()

    def test_binomial_expansion(self):
        q, p = self.q, self.p
        assert (q + p) ** 2 == q**2 + 2 * q * p + p**2

    def test_imaginary_unit_squares_to_minus_one(self):
        assert self.i * self.i == -1

    def test_rational_coefficients_are_exact(self):
        half = self.registry.constant(Fraction(1, 2))
        assert half + half == 1
        assert (self.q / 3) * 3 == self.q

    def test_derivative(self):
        assert (self.q**3 * self.p).diff("q") == 3 * self.q**2 * self.p
        assert self.p.diff("q").is_zero

    def test_degree_and_variables(self):
        poly = self.q**2 * self.p + self.p
        assert poly.degree() == 3
        assert poly.degree(["p"]) == 1
        assert poly.variables() == ("q", "p")
        assert self.registry.zero().degree() == -1

    def test_exact_evaluation(self):
        value = (self.q**2 + self.p**2).evaluate({"q": 3, "p": 4})
        assert value == 25

    def test_float_evaluation(self):
        value = (self.q**2 + self.p).evaluate({"q": 1.5, "p": 1})
        assert value == pytest.approx(3.25)

    def test_unbound_variable(self):
        with pytest.raises(RegistryError):
            (self.q * self.p).evaluate({"q": 1})

    def test_mixing_registries_fails(self):
        other = VariableRegistry(["x"]).variable("x")
        with pytest.raises(RegistryError):
            self.q + other

    def test_mixing_with_float_fails(self):
        with pytest.raises(BackendMismatchError):
            self.q + 1.5

    def test_conjugate(self):
        assert (self.q + self.i).conjugate() == self.q - self.i

    def test_substitute(self):
        shifted = (self.q**2).substitute({"q": self.p + 1})
        assert shifted == self.p**2 + 2 * self.p + 1

    def test_divide_exact(self):
        assert (self.q * self.p + self.q**2).divide_exact(self.q) == self.p + self.q

    def test_divide_exact_rejects_non_divisor(self):
        with pytest.raises(PhaseSpaceError):
            self.q.divide_exact(self.p)

    def test_constant_value(self):
        assert self.registry.constant(2, -1).constant_value() == (Fraction(2), Fraction(-1))
        with pytest.raises(PhaseSpaceError):
            self.q.constant_value()

    def test_coefficient_of(self):
        poly = 5 * self.q**2 * self.p + self.q**2 + self.p
        assert poly.coefficient_of("q", 2) == 5 * self.p + 1

    def test_lift_into_larger_registry(self):
        target = VariableRegistry(["p", "q", "eps"])
        assert self.q.lift(target) == target.variable("q")

    def test_lift_missing_variable(self):
        with pytest.raises(RegistryError):
            self.q.lift(VariableRegistry(["p"]))

    def test_negative_power_rejected(self):
        with pytest.raises(ValueError):
            self.q ** -1


class TestRationals:
    """Tests for the canonical rational text form"""

    @pytest.mark.parametrize(
        "value,text",
        [(Fraction(3), "3/1"), (Fraction(-1, 2), "-1/2"), (Fraction(0), "0/1")],
    )
    def test_format(self, value, text):
        assert format_rational(value) == text

    def test_parse(self):
        assert parse_rational(" 3/4 ") == Fraction(3, 4)
        assert parse_rational("7") == Fraction(7)


class TestPolySerialization:
    """Tests for polynomial JSON documents"""

    def setup_method(self):
        self.registry = VariableRegistry(["q", "p"])

    def test_constant_document(self):
        document = poly_to_dict(self.registry.constant(Fraction(1, 2)))
        assert document == {
            "variables": ["q", "p"],
            "terms": [{"exponents": [0, 0], "re": "1/2", "im": "0/1"}],
        }

    def test_json_text_is_canonical(self):
        q, p = self.registry.variables("q", "p")
        assert poly_to_json(q + p) == poly_to_json(p + q)
        assert poly_from_json(poly_to_json(q * p - 3)) == q * p - 3

    def test_duplicate_exponents_rejected(self):
        term = {"exponents": [1, 0], "re": "1/1", "im": "0/1"}
        with pytest.raises(InputSpecError):
            poly_from_dict({"variables": ["q", "p"], "terms": [term, term]})

    def test_registry_mismatch(self):
        document = poly_to_dict(self.registry.one())
        with pytest.raises(RegistryError):
            poly_from_dict(document, VariableRegistry(["x"]))

    def test_invalid_json(self):
        with pytest.raises(InputSpecError):
            poly_from_json("{not json")


class TestFloatScalar:
    """Tests for the finite float backend"""

    def test_non_finite_construction(self):
        with pytest.raises(NonFiniteError):
            FloatScalar(float("nan"))

    def test_division_by_zero(self):
        with pytest.raises(NonFiniteError):
            FloatScalar(1.0) / 0

    def test_overflow(self):
        with pytest.raises(NonFiniteError):
            FloatScalar(1e308) * 10

    def test_arithmetic(self):
        value = FloatScalar(1.5) * 2 - Fraction(1, 2)
        assert value == 2.5
        assert value.isclose(2.5)

    def test_refuses_exact_operand(self):
        q = VariableRegistry(["q"]).variable("q")
        with pytest.raises(BackendMismatchError):
            FloatScalar(1.0) + q


class TestBackends:
    """Tests for coefficient backends"""

    def test_exact_backend_coercion(self):
        backend = ExactBackend()
        assert backend.coerce(Fraction(1, 3)) == Fraction(1, 3)
        with pytest.raises(BackendMismatchError):
            backend.coerce(1.5)

    def test_float_backend_refuses_polynomials(self):
        with pytest.raises(BackendMismatchError):
            FloatBackend().coerce(default_registry().one())

    def test_exact_to_float(self):
        registry = default_registry()
        assert exact_to_float(registry.constant(Fraction(3, 4))).value == 0.75
        with pytest.raises(BackendMismatchError):
            exact_to_float(registry.constant(0, 1))
