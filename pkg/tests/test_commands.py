"""
Tests for the command layer: run configuration, commands and property suites
"""

import sys
from pathlib import Path

import pytest

project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

from commands import apply_tolerance_overrides, check, failures_from_checks, initialize, run_command
from commands.algebra import clifford_report, parse_algebra_name
from commands.brst import brst_report
from commands.geometry import expected_curvature
from commands.property_suite import run_suites
from commands.rigid_body import rigid_body_run
from commands.run_config import (
    HamiltonianSpec,
    RunConfig,
    load_hamiltonian,
    parse_tolerance_overrides,
    parse_triple,
)
from exceptions import InputSpecError
from manifold_geometry import cylinder, sphere, torus
from settings import settings_manager


class TestRunConfig:
    """Test CLI input validation"""

    def test_defaults(self):
        config = RunConfig(command="algebra", name="so3")
        assert config.output_format == "json"
        assert config.seed == 0
        assert config.grid == 20

    def test_public_dict_omits_out(self, tmp_path):
        config = RunConfig(command="algebra", name="so3", out=tmp_path / "x.json")
        data = config.public_dict()
        assert "out" not in data
        assert data["command"] == "algebra"

    @pytest.mark.parametrize(
        "values",
        [
            {"command": "unknown"},
            {"command": "algebra", "grid": 0},
            {"command": "algebra", "tolerances": {"curvature": -1.0}},
            {"command": "algebra", "colour": "blue"},
        ],
    )
    def test_invalid_configs(self, values):
        with pytest.raises(ValueError):
            RunConfig.model_validate(values)

    def test_parse_tolerance_overrides(self):
        assert parse_tolerance_overrides(["curvature=1e-5", " frame = 1e-9"]) == {"curvature": 1e-5, "frame": 1e-9}

    @pytest.mark.parametrize("item", ["curvature", "=1e-5", "curvature=small"])
    def test_bad_tolerance_overrides(self, item):
        with pytest.raises(InputSpecError):
            parse_tolerance_overrides([item])

    def test_parse_triple(self):
        assert parse_triple("1,2,3.5", "--inertia") == (1.0, 2.0, 3.5)
        with pytest.raises(InputSpecError):
            parse_triple("1,2", "--inertia")
        with pytest.raises(InputSpecError):
            parse_triple("1,a,3", "--inertia")


class TestHamiltonianSpec:
    """Test Hamiltonian documents"""

    def test_load_from_file(self, oscillator_file):
        spec = load_hamiltonian(oscillator_file)
        assert spec.degrees_of_freedom == 1
        assert len(spec.terms) == 2

    def test_polynomial(self, oscillator_spec):
        spec = HamiltonianSpec.model_validate(oscillator_spec)
        h = spec.polynomial()
        assert h.degree() == 2
        assert h.evaluate({"q": 1, "p": 1, "hbar": 0}) == 1

    @pytest.mark.parametrize(
        "data",
        [
            {"degrees_of_freedom": 0, "terms": []},
            {"degrees_of_freedom": 1, "terms": [{"coefficient": "x", "q": [1], "p": [0]}]},
            {"degrees_of_freedom": 1, "terms": [{"coefficient": "1", "q": [1, 0], "p": [0]}]},
            {"degrees_of_freedom": 1, "terms": [{"coefficient": "1", "q": [-1], "p": [0]}]},
        ],
    )
    def test_invalid_documents(self, data):
        with pytest.raises(InputSpecError):
            load_hamiltonian(data)

    def test_unreadable_file(self, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text("{", encoding="utf-8")
        with pytest.raises(InputSpecError):
            load_hamiltonian(path)


class TestHelpers:
    """Test report helpers and tolerance overrides"""

    def test_check(self):
        assert check(1e-9, 1e-8) == {"value": 1e-9, "tolerance": 1e-8, "passed": True}
        assert not check(1e-7, 1e-8)["passed"]

    def test_failures_from_checks(self):
        checks = {"energy": check(1.0, 0.1), "casimir": check(0.0, 0.1), "kahler": {"passed": False}}
        failures = failures_from_checks(checks, "rigid_body:")
        assert [f["check"] for f in failures] == ["rigid_body:energy", "rigid_body:kahler"]
        assert failures[0]["value"] == 1.0

    def test_apply_tolerance_overrides(self):
        apply_tolerance_overrides({"curvature": 1e-4, "numerics.pole_guard": 0.1})
        assert settings_manager.get("tolerances.curvature") == 1e-4
        assert settings_manager.get("numerics.pole_guard") == 0.1

    def test_unknown_tolerance(self):
        with pytest.raises(InputSpecError):
            apply_tolerance_overrides({"wobble": 1e-3})

    def test_initialize_registers_every_command(self):
        commands = initialize()
        assert set(commands) == {"algebra", "brst", "geometry", "rigid-body", "property-suite"}
        assert all(command.status == "ready" for command in commands.values())


class TestAlgebraCommand:
    """Test the algebra command"""

    @pytest.mark.parametrize(
        "name, kind, options",
        [
            ("clifford:3:euclid", "clifford", {"dim": 3, "kind": "euclid"}),
            ("so3", "so3", {}),
            ("lorentz", "lorentz", {"metric": "nonstandard"}),
            ("lorentz:std", "lorentz", {"metric": "standard"}),
            ("un:2", "un", {"n": 2}),
            ("gln:3", "gln", {"n": 3}),
        ],
    )
    def test_parse_algebra_name(self, name, kind, options):
        assert parse_algebra_name(name) == (kind, options)

    @pytest.mark.parametrize("name", ["clifford:9:euclid", "clifford:x:euclid", "lorentz:weird", "un:0", "e8"])
    def test_bad_algebra_names(self, name):
        with pytest.raises(InputSpecError):
            parse_algebra_name(name)

    def test_clifford_table(self):
        report, rows = clifford_report(2, "euclid")
        assert report["blades"] == ["1", "s1", "s2", "s1s2"]
        assert len(rows) == 16
        row = next(r for r in rows if r["left"] == "s1" and r["right"] == "s2")
        assert row["product"] == "1/1*s1s2"

    def test_minkowski_needs_four_dimensions(self):
        with pytest.raises(InputSpecError):
            clifford_report(3, "minkowski")

    def test_so3_report(self):
        result = run_command(RunConfig(command="algebra", name="so3"))
        assert result["passed"]
        assert result["status"] == "completed"
        assert len(result["rows"]) == 6
        assert result["report"]["jacobi_failures"] == 0

    def test_unitary_report_has_central_structure(self):
        result = run_command(RunConfig(command="algebra", name="un:2"))
        assert result["passed"]
        assert all(value.is_zero for value in result["report"]["complex_structure_commutators"].values())

    def test_missing_name_is_usage_error(self):
        with pytest.raises(InputSpecError):
            run_command(RunConfig(command="algebra"))


class TestBrstCommand:
    """Test the brst command"""

    def test_oscillator_report(self, oscillator_spec):
        report, mismatches = brst_report(HamiltonianSpec.model_validate(oscillator_spec))
        assert mismatches == []
        assert report["equations_match"]
        assert all(entry["vanishes"] for entry in report["brackets"].values())

    def test_command_from_file(self, oscillator_file):
        result = run_command(RunConfig(command="brst", input=oscillator_file))
        assert result["passed"]
        assert result["report"]["mismatches"] == []

    def test_command_needs_input(self):
        with pytest.raises(InputSpecError):
            run_command(RunConfig(command="brst"))


class TestGeometryCommand:
    """Test the geometry command"""

    def test_expected_curvature(self):
        assert expected_curvature(sphere(2.0)) == 0.25
        assert expected_curvature(cylinder()) == 0.0
        assert expected_curvature(torus()) is None

    def test_sphere_command(self, sphere_file):
        result = run_command(RunConfig(command="geometry", input=sphere_file, grid=4))
        assert result["passed"], result["failures"]
        assert result["report"]["points"] == 16
        assert result["report"]["expected_curvature"] == 0.25
        assert len(result["rows"]) == 16

    def test_inline_torus(self):
        config = RunConfig(command="geometry", parameters={"family": "torus", "parameters": {}}, grid=3)
        result = run_command(config)
        assert result["passed"], result["failures"]

    def test_tight_tolerance_fails_checks(self, sphere_file):
        config = RunConfig(command="geometry", input=sphere_file, grid=2, tolerances={"curvature": 1e-30})
        result = run_command(config)
        assert not result["passed"]
        assert result["status"] == "failed"


class TestRigidBodyCommand:
    """Test the rigid-body command"""

    def test_short_run(self):
        report, trajectory = rigid_body_run((1.0, 2.0, 3.0), (1.0, 0.5, 0.3), dt=1e-3, steps=500)
        assert all(c["passed"] for c in report["checks"].values())
        assert report["steps"] == 500
        assert len(trajectory.rows()) == 501

    def test_command_rows(self):
        config = RunConfig(command="rigid-body", parameters={"dt": 1e-3, "steps": 200})
        result = run_command(config)
        assert result["passed"], result["failures"]
        assert len(result["rows"]) == 201
        assert result["report"]["moments"] == [1.0, 2.0, 3.0]

    def test_bad_parameters(self):
        with pytest.raises(InputSpecError):
            run_command(RunConfig(command="rigid-body", parameters={"dt": -1.0}))

    def test_non_positive_moment_becomes_failed_report(self):
        config = RunConfig(command="rigid-body", parameters={"inertia": [1.0, 0.0, 3.0], "steps": 10})
        result = run_command(config)
        assert not result["passed"]
        assert result["failures"][0]["error"] == "InertiaError"


class TestPropertySuites:
    """Test the randomized property suites"""

    def test_kernel_and_algebra_suites(self):
        results = run_suites(seed=1, samples=5, grid=3, only=("kernel", "algebra"))
        assert set(results) == {"kernel", "algebra"}
        assert all(entry["passed"] for entry in results["algebra"].values())
        assert all(entry["passed"] for entry in results["kernel"].values())

    def test_brst_suite(self):
        results = run_suites(seed=3, samples=4, grid=3, only=("brst",))
        assert len(results["brst"]) == 4
        assert all(case["passed"] for case in results["brst"].values())

    def test_same_seed_same_results(self):
        first = run_suites(seed=5, samples=3, grid=2, only=("brst",))
        second = run_suites(seed=5, samples=3, grid=2, only=("brst",))
        assert first == second

    def test_geometry_and_symplectic_suites(self):
        results = run_suites(seed=0, samples=2, grid=3, only=("geometry", "symplectic"))
        assert all(entry["passed"] for entry in results["geometry"].values())
        assert "sphere3:1" in results["geometry"]
        assert all(entry["passed"] for entry in results["symplectic"].values())

    def test_command_report(self):
        config = RunConfig(command="property-suite", parameters={"suites": ["algebra"]}, samples=2)
        result = run_command(config)
        assert result["passed"]
        assert list(result["report"]["suites"]) == ["algebra"]

    @pytest.mark.slow
    def test_rigid_body_suite(self):
        results = run_suites(seed=0, samples=1, grid=2, only=("rigid_body",))
        assert results["rigid_body"]["passed"]
