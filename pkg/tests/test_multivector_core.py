"""
Tests for the Grassmann/Clifford kernel
"""

import math
import sys
from fractions import Fraction
from pathlib import Path

import pytest

project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

from exceptions import BackendMismatchError, GradeError, InputSpecError, RotorError, SignatureError
from multivector_core import (
    MetricSignature,
    Multivector,
    anticommutator_product,
    as_rotor,
    blade_label,
    clifford_star,
    commutator_product,
    dual_by_pseudoscalar,
    generators,
    grade_project,
    graded_star_commutator,
    grassmann_derivative,
    hodge_dual,
    inner,
    inverse,
    inverse_hodge_dual,
    multiplication_table,
    multivector_from_json,
    multivector_to_dict,
    multivector_to_json,
    norm_squared,
    odd_part,
    outer,
    passive_rotor_apply,
    pseudoscalar,
    rotor_apply,
    rotor_exp,
    scalar_product,
    spin_component,
    wedge,
)
from scalar_ring import ExactBackend, FloatBackend


class TestMetricSignature:
    """Tests for contraction matrices"""

    def test_euclidean(self, euclidean3):
        signature = euclidean3
        assert signature.dim == 3
        assert signature.kind == "symmetric"
        assert signature.generator_names == ("s1", "s2", "s3")

    def test_generators_square_to_diagonal(self, euclidean3, exact_backend):
        for index in range(euclidean3.dim):
            generator = Multivector.generator(euclidean3, exact_backend, index)
            assert generator * generator == 1

    @pytest.mark.parametrize("metric,first", [("nonstandard", -1), ("standard", 1)])
    def test_minkowski(self, metric, first):
        signature = MetricSignature.minkowski(metric)
        assert signature.entry(0, 0) == first
        assert signature.entry(1, 1) == -first
        assert signature.generator_names == ("g0", "g1", "g2", "g3")

    def test_unknown_minkowski_choice(self):
        with pytest.raises(SignatureError):
            MetricSignature.minkowski("mostly-minus")

    def test_symplectic_is_antisymmetric(self):
        signature = MetricSignature.symplectic_darboux(2)
        assert signature.kind == "antisymmetric"
        assert signature.entry(0, 2) == 1
        assert signature.entry(2, 0) == -1
        assert signature.generator_names == ("eta1", "eta2", "rho1", "rho2")

    def test_kind_is_validated(self):
        with pytest.raises(SignatureError):
            MetricSignature.from_rows([[0, 1], [1, 0]], "antisymmetric")
        with pytest.raises(SignatureError):
            MetricSignature.from_rows([[1, 2], [0, 1]], "symmetric")

    def test_non_square_rejected(self):
        with pytest.raises(SignatureError):
            MetricSignature.from_rows([[1, 0]])

    def test_non_finite_entry_rejected(self):
        with pytest.raises(SignatureError):
            MetricSignature.from_rows([[float("inf")]])

    def test_inverse_rows(self):
        signature = MetricSignature.diagonal([2, 4])
        assert signature.inverse_rows() == ((Fraction(1, 2), 0), (0, Fraction(1, 4)))

    def test_degenerate_inverse(self):
        with pytest.raises(SignatureError):
            MetricSignature.zero(2).inverse_rows()


class TestStarProduct:
    """Tests for the Clifford star product"""

    def setup_method(self):
        self.signature = MetricSignature.euclidean(3)
        self.backend = ExactBackend()
        self.s1, self.s2, self.s3 = generators(self.signature, self.backend)

    def test_generators_square_to_metric(self):
        assert self.s1 * self.s1 == 1
        minkowski = MetricSignature.minkowski("nonstandard")
        g0 = Multivector.generator(minkowski, self.backend, 0)
        assert g0 * g0 == -1

    def test_orthogonal_generators_anticommute(self):
        assert self.s1 * self.s2 == -(self.s2 * self.s1)
        assert self.s1 * self.s2 == self.s1 ^ self.s2

    def test_clifford_star_matches_operator(self):
        a = self.s1 + 2 * self.s2
        assert clifford_star(a, self.s3) == a * self.s3

    def test_associativity(self):
        a = self.s1 + self.s2 * self.s3
        b = self.s2 - 3
        c = self.s1 ^ self.s3
        assert (a * b) * c == a * (b * c)

    def test_symplectic_contraction(self):
        signature = MetricSignature.symplectic_darboux(1)
        eta, rho = generators(signature, self.backend)
        assert eta * rho == (eta ^ rho) + 1
        assert rho * eta == (rho ^ eta) - 1

    def test_zero_signature_gives_wedge(self):
        signature = MetricSignature.zero(2)
        e1, e2 = generators(signature, self.backend)
        assert (e1 * e1).is_zero
        assert e1 * e2 == wedge(e1, e2)

    def test_blade_ordering_sign(self):
        blade = Multivector.blade(self.signature, self.backend, [1, 0])
        assert blade == -(self.s1 ^ self.s2)
        assert Multivector.blade(self.signature, self.backend, [0, 0]).is_zero

    def test_multiplication_table_size(self):
        table = multiplication_table(MetricSignature.euclidean(2))
        assert len(table) == 16
        products = {(a, b): terms for a, b, terms in table}
        assert products[(3, 3)] == {0: -1}

    def test_signature_mismatch(self):
        other = Multivector.generator(MetricSignature.euclidean(2), self.backend, 0)
        with pytest.raises(SignatureError):
            self.s1 * other

    def test_backend_mismatch(self, float_backend):
        floating = Multivector.generator(self.signature, float_backend, 0)
        with pytest.raises(BackendMismatchError):
            self.s1 + floating

    def test_mask_out_of_range(self):
        with pytest.raises(GradeError):
            Multivector(self.signature, self.backend, {8: 1})


class TestGradeCalculus:
    """Tests for projections, reversion and derived products"""

    def setup_method(self):
        self.signature = MetricSignature.euclidean(3)
        self.backend = ExactBackend()
        self.s1, self.s2, self.s3 = generators(self.signature, self.backend)

    def test_grades(self):
        mixed = 2 + self.s1 + (self.s2 ^ self.s3)
        assert mixed.grades() == (0, 1, 2)
        assert grade_project(mixed, 2) == self.s2 ^ self.s3
        with pytest.raises(GradeError):
            mixed.grade

    def test_grade_out_of_range(self):
        with pytest.raises(GradeError):
            grade_project(self.s1, 4)

    def test_reverse_flips_bivectors(self):
        bivector = self.s1 ^ self.s2
        assert bivector.reverse() == -bivector
        trivector = bivector ^ self.s3
        assert trivector.reverse() == -trivector
        assert self.s1.reverse() == self.s1

    def test_reverse_of_product(self):
        a = self.s1 + (self.s2 ^ self.s3)
        b = self.s2 + 1
        assert (a * b).reverse() == b.reverse() * a.reverse()

    def test_inner_and_outer(self):
        assert inner(self.s1, self.s1) == 1
        assert inner(self.s1, self.s1 ^ self.s2) == self.s2
        assert outer(self.s1, self.s2) == self.s1 ^ self.s2
        with pytest.raises(GradeError):
            inner(self.s1 + 1, self.s2)

    def test_commutator_of_bivectors(self):
        b12 = self.s1 ^ self.s2
        b23 = self.s2 ^ self.s3
        b13 = self.s1 ^ self.s3
        assert commutator_product(b12, b23) == b13

    def test_graded_commutator_of_vectors_is_anticommutator(self):
        assert graded_star_commutator(self.s1, self.s1) == 2
        assert graded_star_commutator(self.s1, self.s2).is_zero

    def test_grassmann_derivative(self):
        blade = self.s1 ^ self.s2
        assert grassmann_derivative(blade, 0) == self.s2
        assert grassmann_derivative(blade, 1) == -self.s1
        assert grassmann_derivative(blade, 1, side="right") == self.s1

    def test_norm_and_inverse(self):
        vector = 3 * self.s1 + 4 * self.s2
        assert norm_squared(vector) == 25
        assert vector * inverse(vector) == 1

    def test_inverse_of_non_versor(self):
        with pytest.raises(GradeError):
            inverse(1 + self.s1)


class TestDuality:
    """Tests for the pseudoscalar and Hodge duality"""

    def setup_method(self):
        self.signature = MetricSignature.euclidean(3)
        self.backend = ExactBackend()
        self.s1, self.s2, self.s3 = generators(self.signature, self.backend)

    def test_pseudoscalar_squares_to_minus_one(self):
        volume = pseudoscalar(self.signature, self.backend)
        assert volume * volume == -1

    def test_hodge_dual_of_vector(self):
        assert hodge_dual(self.s1) == self.s2 ^ self.s3
        scalar = Multivector.scalar(self.signature, self.backend, 1)
        assert hodge_dual(scalar) == pseudoscalar(self.signature, self.backend)

    def test_inverse_hodge_dual(self):
        bivector = self.s1 ^ self.s2
        assert inverse_hodge_dual(hodge_dual(bivector)) == bivector

    def test_hodge_needs_symmetric_metric(self):
        signature = MetricSignature.symplectic_darboux(1)
        eta = Multivector.generator(signature, self.backend, 0)
        with pytest.raises(SignatureError):
            hodge_dual(eta)


class TestRotors:
    """Tests for star exponentials and rotor actions"""

    def setup_method(self):
        self.signature = MetricSignature.euclidean(3)
        self.exact = ExactBackend()
        self.floating = FloatBackend()

    def test_quarter_turn_in_plane(self):
        s1, s2, _ = generators(self.signature, self.exact)
        rotor = rotor_exp(s1 ^ s2, math.pi / 2)
        x = Multivector.generator(self.signature, self.floating, 0)
        y = Multivector.generator(self.signature, self.floating, 1)
        assert rotor_apply(rotor, x).isclose(-y, 1e-12)

    def test_rotor_preserves_norm(self):
        s1, s2, s3 = generators(self.signature, self.exact)
        bivector = (s1 ^ s2) + 2 * (s2 ^ s3)
        rotor = rotor_exp(bivector, 0.7)
        vector = Multivector.vector(self.signature, self.floating, [1.0, -2.0, 0.5])
        image = rotor_apply(rotor, vector)
        assert image.grade_project(3).max_abs() < 1e-12
        assert norm_squared(image).value == pytest.approx(5.25, abs=1e-12)

    def test_exact_exponential_of_null_bivector(self):
        signature = MetricSignature.zero(2)
        e1, e2 = generators(signature, self.exact)
        rotor = rotor_exp(e1 ^ e2, 2)
        assert rotor.value == 1 + (e1 ^ e2)

    def test_exponential_needs_bivector(self):
        s1 = Multivector.generator(self.signature, self.exact, 0)
        with pytest.raises(GradeError):
            rotor_exp(s1, 1.0)

    def test_passive_action_undoes_active(self):
        s1, s2, s3 = generators(self.signature, self.exact)
        rotor = rotor_exp((s1 ^ s2) - (s2 ^ s3), 0.9)
        vector = Multivector.vector(self.signature, self.floating, [0.3, 1.0, -0.4])
        assert passive_rotor_apply(rotor, rotor_apply(rotor, vector)).isclose(vector, 1e-12)

    def test_spin_component_of_rotor(self):
        s1, s2, _ = generators(self.signature, self.exact)
        assert spin_component(s1 ^ s2) == 1

    def test_spin_component_flags_negative_branch(self, caplog):
        g0, g1, _, _ = generators(MetricSignature.minkowski("nonstandard"), self.exact)
        assert spin_component(g0 ^ g1) == -1
        assert "only +1 rotors are supported" in caplog.text

    def test_spin_component_needs_unit_versor(self):
        s1, s2, _ = generators(self.signature, self.exact)
        with pytest.raises(RotorError):
            spin_component(2 * (s1 ^ s2))

    def test_non_unit_rejected(self):
        s1, s2, _ = generators(self.signature, self.exact)
        with pytest.raises(RotorError):
            as_rotor(1 + (s1 ^ s2))
        with pytest.raises(RotorError):
            as_rotor(s1)


class TestMultivectorSerialization:
    """Tests for multivector JSON documents"""

    def setup_method(self):
        self.signature = MetricSignature.euclidean(2)
        self.backend = ExactBackend()

    def test_document_shape(self):
        s1, s2 = generators(self.signature, self.backend)
        document = multivector_to_dict(s1 + 3 * (s1 ^ s2))
        assert document["signature_id"] == "euclidean:2"
        assert [blade["mask"] for blade in document["blades"]] == [1, 3]

    def test_json_reload(self):
        s1, s2 = generators(self.signature, self.backend)
        value = Fraction(1, 2) * s1 - (s1 ^ s2)
        assert multivector_from_json(multivector_to_json(value), self.signature) == value

    def test_wrong_signature(self):
        text = multivector_to_json(Multivector.scalar(self.signature, self.backend, 1))
        with pytest.raises(SignatureError):
            multivector_from_json(text, MetricSignature.euclidean(3))

    def test_unsorted_masks(self):
        text = '{"signature_id": "euclidean:2", "blades": [{"mask": 2, "coeff": 1.0}, {"mask": 1, "coeff": 1.0}]}'
        with pytest.raises(InputSpecError):
            multivector_from_json(text, self.signature)


class TestEuclideanExamples:
    """Quaternion units, cross products and duality in three dimensions"""

    def setup_method(self):
        self.signature = MetricSignature.euclidean(3)
        self.backend = ExactBackend()
        self.s1, self.s2, self.s3 = generators(self.signature, self.backend)
        self.q1 = self.s2 ^ self.s3
        self.q2 = self.s1 ^ self.s3
        self.q3 = self.s1 ^ self.s2

    def test_quaternion_units_square_to_minus_one(self):
        for unit in (self.q1, self.q2, self.q3):
            assert unit * unit == -1

    def test_quaternion_multiplication(self):
        assert self.q1 * self.q2 == self.q3
        assert self.q2 * self.q3 == self.q1
        assert self.q3 * self.q1 == self.q2
        assert self.q1 * self.q2 * self.q3 == -1

    def test_cross_product(self):
        a = Multivector.vector(self.signature, self.backend, [1, 2, 3])
        b = Multivector.vector(self.signature, self.backend, [-1, 0, 2])
        cross = Multivector.vector(self.signature, self.backend, [4, -5, 2])
        assert a * b == inner(a, b) + dual_by_pseudoscalar(cross)
        assert inner(a, b) == 5
        assert (a ^ b) == dual_by_pseudoscalar(cross)

    def test_duality_is_a_bijection(self):
        assert dual_by_pseudoscalar(self.s1) == self.q1
        b = Multivector.vector(self.signature, self.backend, [Fraction(1, 2), -3, 2])
        bivector = dual_by_pseudoscalar(b)
        assert bivector.grades() == (2,)
        assert dual_by_pseudoscalar(bivector) == b.scale(-1)

    def test_anticommutator_product(self):
        assert anticommutator_product(self.s1, self.s2).is_zero
        assert anticommutator_product(self.s1, self.s1) == 1
        assert anticommutator_product(self.s1, self.q1) == self.s1 * self.q1

    def test_even_and_odd_parts(self):
        mixed = 2 + self.s1 + self.q3 + (self.s1 ^ self.s2 ^ self.s3)
        assert odd_part(mixed) == self.s1 + (self.s1 ^ self.s2 ^ self.s3)

    def test_scalar_product(self):
        a = Multivector.vector(self.signature, self.backend, [1, 1, 0])
        b = Multivector.vector(self.signature, self.backend, [1, -2, 5])
        assert scalar_product(a, b) == -1
        assert scalar_product(self.q1, self.q1) == -1

    def test_blade_label(self):
        assert blade_label(self.s1, 0b101) == "s1s3"
        assert blade_label(self.s1, 0) == "1"
