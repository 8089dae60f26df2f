"""
Tests for charts, connections, curvature, forms and symplectic structures
"""

import dataclasses
import math
import sys
from pathlib import Path

import numpy as np
import pytest

project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

from exceptions import GeometryError, GradeError, InputSpecError, PhaseSpaceError
from manifold_geometry import (
    Observable,
    SymplecticStructure,
    cartan_magic,
    canonical_one_form_residual,
    christoffel_report,
    coderivative,
    coordinate_frame,
    complex_structure_residual,
    coordinate_free_exterior_derivative,
    cotangent,
    covariant_derivative,
    curvature,
    cylinder,
    darboux_omega,
    dd_residual,
    divergence_coderivative,
    duality_residuals,
    exterior_derivative,
    first_cartan_residual,
    frame_structure_summary,
    frames_at,
    gaussian_curvature,
    geometry_table,
    graded_symmetry_residual,
    grid_points,
    hodge,
    hodge_field,
    idempotence_residual,
    interior_product,
    jacobi_lie_bracket,
    jacobi_lie_bracket_ambient,
    kahler_compatibility,
    load_chart,
    metric_at,
    noncoordinate_frame,
    normal_projection,
    plane,
    project,
    random_polynomial_field,
    ricci_identity_residual,
    riemann,
    scalar_field,
    schouten_nijenhuis,
    second_bianchi_residual,
    shape_bivector,
    shape_report,
    sphere,
    sphere_orthonormal_frame,
    super_jacobi_residual,
    symplectic_structures,
    table_failures,
    three_sphere,
    torus,
    torus_gaussian_curvature,
    vector_field,
    volume_form,
)
from multivector_core import Multivector
from scalar_ring import FloatBackend


class TestCharts:
    """Test chart families and chart specs"""

    def test_sphere_domain_and_names(self):
        chart = sphere(2.0)
        assert chart.coordinate_names == ("theta", "phi")
        assert chart.dim == 2
        assert chart.ambient_dim == 3
        assert chart.lows[0] > 0
        assert chart.highs[0] < math.pi

    def test_position_lies_on_sphere(self):
        chart = sphere(2.0)
        assert np.linalg.norm(chart.position([1.0, 0.4])) == pytest.approx(2.0)

    def test_out_of_domain_raises(self):
        with pytest.raises(GeometryError):
            sphere().position([0.0, 0.0])

    def test_wrong_point_shape_raises(self):
        with pytest.raises(GeometryError):
            torus().position([0.1, 0.2, 0.3])

    @pytest.mark.parametrize("builder", [lambda: sphere(-1.0), lambda: torus(1.0, 2.0), lambda: cylinder(0.0)])
    def test_invalid_parameters_raise(self, builder):
        with pytest.raises(GeometryError):
            builder()

    def test_cotangent_of_line_names(self):
        chart = cotangent(plane(1))
        assert chart.coordinate_names == ("q", "p")
        assert chart.parameters["dof"] == 1.0

    def test_cotangent_rejects_curved_base(self):
        with pytest.raises(GeometryError):
            cotangent(sphere())

    def test_load_chart_from_file(self, sphere_file):
        chart = load_chart(sphere_file)
        assert chart.parameters["radius"] == 2.0

    def test_load_chart_from_mapping(self):
        chart = load_chart({"family": "torus", "parameters": {"major": 3.0, "minor": 1.0}})
        assert chart.parameters == {"major": 3.0, "minor": 1.0}

    @pytest.mark.parametrize(
        "data",
        [
            {"family": "klein_bottle"},
            {"family": "sphere", "parameters": {"radius": float("inf")}},
            {"family": "sphere", "extra": 1},
        ],
    )
    def test_load_chart_rejects_bad_specs(self, data):
        with pytest.raises(InputSpecError):
            load_chart(data)

    def test_load_chart_missing_file(self, tmp_path):
        with pytest.raises(InputSpecError):
            load_chart(tmp_path / "missing.json")


class TestFramesAndConnection:
    """Test frames, metrics, projector and Christoffel symbols"""

    def test_sphere_metric(self):
        g = metric_at(sphere(2.0), [1.0, 0.3])
        assert g[0, 0] == pytest.approx(4.0)
        assert g[1, 1] == pytest.approx(4.0 * math.sin(1.0) ** 2)
        assert g[0, 1] == pytest.approx(0.0, abs=1e-14)

    def test_reciprocal_frame_is_dual(self):
        frame = frames_at(torus(), [0.2, 0.7])
        assert np.allclose(frame.reciprocal @ frame.tangent.T, np.eye(2))

    def test_christoffel_routes_agree(self):
        report = christoffel_report(sphere(), [1.1, 0.4])
        assert report["agreement"] < 1e-8
        assert report["compatibility"] < 1e-8

    def test_projector_is_idempotent(self):
        frame = frames_at(sphere(), [0.8, -0.5])
        a = Multivector.vector(frame.ambient_signature, FloatBackend(), [0.3, -1.2, 0.7])
        assert idempotence_residual(frame, a) < 1e-10

    def test_projector_kills_high_grades(self):
        frame = frames_at(sphere(), [0.8, -0.5])
        signature = frame.ambient_signature
        pseudoscalar = Multivector.blade(signature, FloatBackend(), [0, 1, 2], 1.0)
        assert project(frame, pseudoscalar).max_abs() < 1e-12

    def test_sphere_position_is_normal(self):
        chart = sphere()
        frame = frames_at(chart, [1.2, 0.1])
        position = chart.position([1.2, 0.1])
        assert np.allclose(normal_projection(frame, position), position)


class TestCurvature:
    """Test curvature and its identities"""

    @pytest.mark.parametrize("radius", [1.0, 2.0, 0.5])
    def test_sphere_gaussian_curvature(self, radius):
        assert gaussian_curvature(sphere(radius), [1.0, 0.3]) == pytest.approx(1.0 / radius**2, abs=1e-5)

    @pytest.mark.parametrize("point", [[0.0, 0.0], [0.4, 1.5], [-1.0, 2.5]])
    def test_torus_gaussian_curvature(self, point):
        chart = torus(2.0, 1.0)
        assert gaussian_curvature(chart, point) == pytest.approx(torus_gaussian_curvature(chart, point), abs=1e-5)

    def test_cylinder_is_flat(self):
        assert gaussian_curvature(cylinder(), [0.3, 1.0]) == pytest.approx(0.0, abs=1e-6)

    def test_curvature_report_identities(self):
        report = curvature(sphere(), [1.0, 0.5])
        assert report.gaussian == pytest.approx(1.0, abs=1e-5)
        assert report.scalar == pytest.approx(2.0, abs=1e-4)
        data = report.to_dict()
        assert set(data) >= {"gaussian_curvature", "cartan_residual", "bianchi_residual"}


class TestGeometryTables:
    """Test grid tables"""

    def test_grid_stays_inside_domain(self):
        chart = sphere()
        points = grid_points(chart, 4)
        assert points.shape == (16, 2)
        assert points[:, 0].min() > chart.lows[0]

    def test_grid_size_validated(self):
        with pytest.raises(GeometryError):
            grid_points(sphere(), 0)

    def test_sphere_table_columns(self):
        rows = geometry_table(sphere(2.0), grid=3)
        assert len(rows) == 9
        assert {"theta", "phi", "g_theta_theta", "Gamma_theta_phi_phi", "K"} <= set(rows[0])

    def test_torus_table_has_no_failures(self):
        rows = geometry_table(torus(), grid=3)
        assert table_failures(rows) == []
        chart = torus()
        for row in rows:
            expected = torus_gaussian_curvature(chart, [row["u"], row["v"]])
            assert row["K"] == pytest.approx(expected, abs=1e-5)

    def test_wrong_expected_curvature_is_reported(self):
        rows = geometry_table(cylinder(), grid=2)
        assert table_failures(rows, expected_curvature=0.0) == []
        failures = table_failures(rows, expected_curvature=5.0)
        assert failures
        assert all(f["check"] == "K" for f in failures)


class TestForms:
    """Test exterior calculus"""

    def test_exterior_derivative_of_scalar(self):
        f = scalar_field(2, lambda x: x[0] ** 2 + 3 * x[1])
        df = exterior_derivative(f, [1.5, 0.0])
        assert df[1] == pytest.approx(3.0)
        assert df[2] == pytest.approx(3.0)

    def test_dd_vanishes(self):
        rng = np.random.default_rng(3)
        form = random_polynomial_field(3, 1, rng)
        assert dd_residual(form, [0.2, -0.4, 0.9]) < 1e-5

    def test_unit_sphere_volume_form(self):
        values = volume_form(sphere(), [1.0, 0.0])
        assert abs(values[3]) == pytest.approx(math.sin(1.0))

    def test_cartan_magic_formula(self):
        rng = np.random.default_rng(5)
        a = random_polynomial_field(3, 1, rng)
        form = random_polynomial_field(3, 2, rng)
        assert cartan_magic(a, form, [0.1, 0.3, -0.2])["residual"] < 1e-5

    def test_sphere_orthonormal_frame_summary(self):
        chart = sphere()
        summary = frame_structure_summary(chart, [1.0, 0.2], sphere_orthonormal_frame(chart))
        assert summary["agreement"] < 1e-6
        assert summary["torsion_residual"] < 1e-6


class TestSymplecticStructures:
    """Test symplectic manifolds and hamiltonian fields"""

    def setup_method(self):
        self.structure = symplectic_structures()
        self.chart = self.structure.chart
        self.h = Observable("(p**2 + q**2)/2", self.chart)

    def test_observable_rejects_unknown_symbols(self):
        with pytest.raises(GeometryError):
            Observable("q*r", self.chart)

    def test_non_cotangent_chart_needs_omega(self):
        with pytest.raises(PhaseSpaceError):
            symplectic_structures(plane(2))

    def test_odd_dimension_rejected(self):
        with pytest.raises(GeometryError):
            SymplecticStructure(plane(3), darboux_omega(1))

    def test_contraction_gives_differential(self):
        assert self.structure.contraction_residual(self.h, [0.7, -0.2]) < 1e-12

    def test_canonical_bracket(self):
        q = Observable("q", self.chart)
        p = Observable("p", self.chart)
        assert self.structure.poisson_bracket(q, p, [0.3, 0.1]) == pytest.approx(1.0)
        assert self.structure.poisson_bracket_tensor(q, p, [0.3, 0.1]) == pytest.approx(1.0)

    def test_bracket_homomorphism(self):
        f = Observable("q**2", self.chart)
        g = Observable("q*p", self.chart)
        assert self.structure.bracket_homomorphism_residual(f, g, [0.4, -0.6], step=0.5) < 1e-10

    def test_omega_is_invariant_under_flow(self):
        assert self.structure.lie_derivative_residual(self.h, [0.4, 0.2]) < 1e-6

    def test_energy_is_conserved(self):
        result = self.structure.noether_check(self.h, self.h, [1.0, 0.0], dt=0.01, steps=200)
        assert result["passed"]
        assert result["drift"] < 1e-6

    def test_darboux_identities(self):
        x = [0.5, -1.5]
        assert canonical_one_form_residual(self.structure, x) < 1e-8
        assert complex_structure_residual(self.structure, x) < 1e-12
        residuals = duality_residuals(self.structure, x)
        assert residuals["one_form"] < 1e-12
        assert residuals["two_form"] < 1e-12

    @pytest.mark.parametrize("dof", [1, 2])
    def test_kahler_compatibility_is_exact(self, dof):
        assert kahler_compatibility(dof)["passed"]


class TestBrackets:
    """Test Jacobi-Lie and Schouten-Nijenhuis brackets"""

    def setup_method(self):
        self.rotation = vector_field(2, lambda x: [-x[1], x[0]], "rotation")
        self.translation = vector_field(2, lambda x: [1.0, 0.0], "translation")
        self.point = [0.4, -0.7]

    def test_jacobi_lie_bracket_of_rotation_and_translation(self):
        bracket = jacobi_lie_bracket(self.rotation, self.translation, self.point)
        assert np.allclose(bracket, [0.0, -1.0], atol=1e-8)

    def test_vector_and_function(self):
        f = scalar_field(2, lambda x: x[0] * x[1])
        result = schouten_nijenhuis(self.rotation, f, self.point)
        expected = -self.point[1] * self.point[1] + self.point[0] * self.point[0]
        assert result[0] == pytest.approx(expected, abs=1e-8)

    def test_functions_commute(self):
        f = scalar_field(2, lambda x: x[0] ** 2)
        g = scalar_field(2, lambda x: x[1])
        assert schouten_nijenhuis(f, g, self.point) == {}

    def test_vectors_reduce_to_jacobi_lie(self):
        rng = np.random.default_rng(8)
        a, b = random_polynomial_field(3, 1, rng), random_polynomial_field(3, 1, rng)
        x = [0.1, 0.5, -0.3]
        bracket = schouten_nijenhuis(a, b, x)
        components = jacobi_lie_bracket(a, b, x)
        assert max(abs(bracket.get(1 << i, 0.0) - components[i]) for i in range(3)) < 1e-8

    @pytest.mark.parametrize("grades", [(1, 0), (2, 1), (2, 2), (3, 1)])
    def test_graded_symmetry(self, grades):
        rng = np.random.default_rng(13)
        p, q = (random_polynomial_field(3, g, rng) for g in grades)
        assert graded_symmetry_residual(p, q, [0.2, -0.1, 0.6]) < 1e-8

    def test_jacobi_identity_of_vector_fields(self):
        rng = np.random.default_rng(21)
        a, b, c = (random_polynomial_field(3, 1, rng) for _ in range(3))
        assert super_jacobi_residual(a, b, c, [0.3, 0.2, -0.5]) < 1e-5

    def test_ambient_bracket_is_tangent(self):
        rng = np.random.default_rng(4)
        a, b = random_polynomial_field(2, 1, rng, degree=1), random_polynomial_field(2, 1, rng, degree=1)
        assert jacobi_lie_bracket_ambient(sphere(), a, b, [1.1, 0.4])["residual"] < 1e-6


class TestFormOperators:
    """Test Hodge duality, coderivatives and the coordinate-free derivative"""

    def test_plane_hodge_of_one_forms(self):
        frame = frames_at(plane(2), [0.0, 0.0])
        assert hodge(frame, {1: 1.0}) == pytest.approx({2: 1.0})
        assert hodge(frame, {2: 1.0}) == pytest.approx({1: -1.0})

    def test_double_hodge_sign(self):
        frame = frames_at(sphere(2.0), [0.9, 0.3])
        form = {1: 0.7, 2: -1.3}
        twice = hodge(frame, hodge(frame, form))
        assert twice[1] == pytest.approx(-0.7)
        assert twice[2] == pytest.approx(1.3)

    def test_hodge_field_has_complementary_grade(self):
        form = random_polynomial_field(3, 1, np.random.default_rng(2))
        assert hodge_field(plane(3), form).grade == 2

    @pytest.mark.parametrize("chart, point", [(plane(2), [0.3, -0.8]), (sphere(), [1.0, 0.4])])
    def test_coderivative_matches_divergence(self, chart, point):
        form = random_polynomial_field(2, 1, np.random.default_rng(6))
        via_hodge = coderivative(chart, form, point)
        via_divergence = divergence_coderivative(chart, form, point)
        assert via_hodge.get(0, 0.0) == pytest.approx(via_divergence.get(0, 0.0), abs=1e-5)

    def test_coderivative_of_function_vanishes(self):
        f = scalar_field(2, lambda x: x[0])
        assert coderivative(plane(2), f, [0.1, 0.2]) == {}

    def test_interior_product(self):
        assert interior_product([2.0, 0.0], {3: 1.0}) == {2: 2.0}
        assert interior_product([0.0, 1.0], {3: 1.0}) == {1: -1.0}

    @pytest.mark.parametrize("grade", [0, 1, 2])
    def test_coordinate_free_exterior_derivative(self, grade):
        rng = np.random.default_rng(17 + grade)
        form = random_polynomial_field(3, grade, rng)
        fields = [random_polynomial_field(3, 1, rng, degree=1) for _ in range(grade + 1)]
        result = coordinate_free_exterior_derivative(form, fields, [0.2, -0.3, 0.5])
        assert result["residual"] < 1e-5

    def test_coordinate_free_exterior_derivative_limits(self):
        rng = np.random.default_rng(1)
        three_form = random_polynomial_field(3, 3, rng)
        fields = [random_polynomial_field(3, 1, rng) for _ in range(4)]
        with pytest.raises(GradeError):
            coordinate_free_exterior_derivative(three_form, fields, [0.0, 0.0, 0.0])
        with pytest.raises(GradeError):
            coordinate_free_exterior_derivative(random_polynomial_field(3, 1, rng), fields[:1], [0.0, 0.0, 0.0])


class TestConnectionAndShape:
    """Test covariant derivatives, shape bivectors and frame structure"""

    def test_covariant_derivative_is_projected_derivative(self):
        result = covariant_derivative(sphere(), [1.0, 0.4], [0.3, -0.6], lambda x: [math.cos(x[1]), x[0]])
        assert result["residual"] < 1e-6

    def test_covariant_derivative_in_plane_is_directional(self):
        result = covariant_derivative(plane(2), [0.5, 0.5], [1.0, 0.0], lambda x: [x[0] ** 2, 0.0])
        assert np.allclose(result["components"], [1.0, 0.0], atol=1e-8)

    def test_shape_bivector_identities(self):
        report = shape_report(sphere(2.0), [1.0, 0.3], [1.0, 0.0], [0.2, 0.7])
        assert report["grade_two"]
        assert report["contraction_residual"] < 1e-6
        assert report["symmetry_residual"] < 1e-6

    def test_sphere_normal_curvature(self):
        report = shape_report(sphere(2.0), [1.0, 0.3], [1.0, 0.0], [1.0, 0.0])
        assert report["normal_curvature"] == pytest.approx(2.0, abs=1e-6)

    def test_flat_chart_has_no_shape(self):
        assert shape_bivector(plane(2), [0.1, 0.1], [1.0, 1.0]).is_zero

    def test_orthonormal_frame_structure_constants(self):
        chart = sphere()
        report = noncoordinate_frame(chart, [1.0, 0.2], sphere_orthonormal_frame(chart))
        assert report.structure_constants[1, 0, 1] == pytest.approx(-1.0 / math.tan(1.0), abs=1e-6)
        assert report.maurer_cartan_residual < 1e-6

    def test_singular_frame_raises(self):
        with pytest.raises(GeometryError):
            noncoordinate_frame(sphere(), [1.0, 0.2], lambda x: np.zeros((2, 2)))

    def test_second_bianchi_identity(self):
        assert second_bianchi_residual(torus(2.0, 1.0), [0.3, 0.9]) < 1e-4


class TestThreeSphere:
    """Test curvature identities on a curved three-dimensional chart"""

    def setup_method(self):
        self.chart = three_sphere(1.0)
        self.point = [1.0, 1.2, 0.4]

    def test_metric(self):
        g = metric_at(three_sphere(2.0), self.point)
        expected = 4.0 * np.diag([1.0, math.sin(1.0) ** 2, (math.sin(1.0) * math.sin(1.2)) ** 2])
        assert np.allclose(g, expected, atol=1e-12)

    def test_constant_curvature(self):
        report = curvature(self.chart, self.point)
        g = metric_at(self.chart, self.point)
        assert report.gaussian is None
        assert report.scalar == pytest.approx(6.0, abs=1e-6)
        assert np.allclose(report.ricci, 2.0 * g, atol=1e-6)

    def test_identities_hold(self):
        frame = frames_at(self.chart, self.point)
        r = riemann(self.chart, self.point)
        assert ricci_identity_residual(frame, r) < 1e-6
        assert second_bianchi_residual(self.chart, self.point) < 1e-6
        assert first_cartan_residual(self.chart, self.point, r) < 1e-6

    def test_ricci_identity_rejects_wrong_tensor(self):
        rng = np.random.default_rng(7)
        tensor = rng.normal(size=(3, 3, 3, 3))
        tensor = tensor - tensor.transpose(0, 2, 1, 3)
        frame = frames_at(self.chart, self.point)
        assert ricci_identity_residual(frame, tensor) > 1e-3

    def test_second_bianchi_rejects_wrong_tensor(self):
        rng = np.random.default_rng(9)
        tensor = rng.normal(size=(3, 3, 3, 3))
        tensor = tensor - tensor.transpose(0, 2, 1, 3)
        residual = second_bianchi_residual(self.chart, self.point, riemann_field=lambda y: y[0] * tensor)
        assert residual > 1e-3

    def test_table_checks_ricci_scalar(self):
        rows = geometry_table(self.chart, grid=2)
        assert len(rows) == 8
        assert "K" not in rows[0]
        assert table_failures(rows, expected_curvature=1.0, dim=3) == []
        failures = table_failures(rows, expected_curvature=2.0, dim=3)
        assert failures
        assert all(f["check"] == "ricci_scalar" for f in failures)

    def test_load_from_mapping(self):
        chart = load_chart({"family": "sphere3", "parameters": {"radius": 3.0}})
        assert chart.coordinate_names == ("chi", "theta", "phi")
        assert np.linalg.norm(chart.position(self.point)) == pytest.approx(3.0)

    def test_guard_validated(self):
        with pytest.raises(GeometryError):
            three_sphere(1.0, guard=2.0)


class TestFrameCartanEquations:
    """Test torsion and the Cartan equations of non-coordinate frames"""

    def test_three_sphere_coordinate_frame(self):
        chart = three_sphere(1.5)
        report = noncoordinate_frame(chart, [1.1, 0.9, 0.3], coordinate_frame(chart))
        assert report.torsion_residual < 1e-6
        assert report.maurer_cartan_residual < 1e-6
        assert report.second_cartan_residual < 1e-6

    def test_second_cartan_sees_bad_second_partials(self):
        chart = sphere()

        def skewed_hessian(x):
            out = chart.hessian(x).copy()
            out[0, 1] = out[0, 1] + chart.jacobian(x)[0]
            return out

        skewed = dataclasses.replace(chart, hessian=skewed_hessian)
        report = noncoordinate_frame(skewed, [1.0, 0.2], sphere_orthonormal_frame(chart))
        assert report.maurer_cartan_residual < 1e-6
        assert report.torsion_residual < 1e-6
        assert report.second_cartan_residual > 0.1
