"""
Tests for the command-line entry point (app.py)
"""

import json
import sys
from pathlib import Path

import pytest

project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

from app import EXIT_CHECKS_FAILED, EXIT_OK, EXIT_USAGE, build_config, build_parser, main, parse_params
from commands.run_config import HamiltonianSpec
from exceptions import InputSpecError
from lie_rotor import make_algebra
from moyal_engine import ExtendedPhaseSpace, equations_of_motion_expected, extended_hamiltonian
from multivector_core import multivector_from_dict
from scalar_ring import poly_from_dict


class TestArgumentParsing:
    """Test parser and configuration building"""

    def setup_method(self):
        self.parser = build_parser()

    def test_rigid_body_parameters(self):
        args = self.parser.parse_args(["rigid-body", "--inertia", "1,2,3", "--L0", "0.1,0.2,0.3", "--steps", "5"])
        config = build_config(args)
        assert config.parameters == {"inertia": (1.0, 2.0, 3.0), "L0": (0.1, 0.2, 0.3), "steps": 5}

    def test_geometry_chart_parameters(self):
        args = self.parser.parse_args(["geometry", "--chart", "sphere", "--param", "radius=2", "--grid", "5"])
        config = build_config(args)
        assert config.parameters == {"family": "sphere", "parameters": {"radius": 2.0}}
        assert config.grid == 5

    def test_geometry_needs_a_chart(self):
        args = self.parser.parse_args(["geometry"])
        with pytest.raises(InputSpecError):
            build_config(args)

    def test_property_suite_subset(self):
        args = self.parser.parse_args(["property-suite", "--suites", "kernel, brst", "--seed", "4"])
        config = build_config(args)
        assert config.parameters == {"suites": ["kernel", "brst"]}
        assert config.seed == 4

    def test_tolerance_overrides(self):
        args = self.parser.parse_args(["algebra", "so3", "--tol", "curvature=1e-5", "--tol", "frame=1e-9"])
        assert build_config(args).tolerances == {"curvature": 1e-5, "frame": 1e-9}

    def test_parse_params(self):
        assert parse_params(["radius=2", "guard=0.1"]) == {"radius": 2.0, "guard": 0.1}
        with pytest.raises(InputSpecError):
            parse_params(["radius"])

    def test_brst_requires_input(self):
        with pytest.raises(SystemExit):
            self.parser.parse_args(["brst"])


class TestMain:
    """Test exit codes and output"""

    @pytest.fixture(autouse=True)
    def _workdir(self, tmp_path, monkeypatch):
        monkeypatch.chdir(tmp_path)
        self.tmp_path = tmp_path

    def test_algebra_to_stdout(self, capsys):
        assert main(["algebra", "so3"]) == EXIT_OK
        report = json.loads(capsys.readouterr().out)
        assert report["command"] == "algebra"
        assert report["passed"] is True
        assert report["report"]["algebra"] == "so3"

    def test_brst_oscillator(self, oscillator_file, capsys):
        assert main(["brst", "--input", str(oscillator_file)]) == EXIT_OK
        report = json.loads(capsys.readouterr().out)
        assert report["report"]["equations_match"] is True

    def test_csv_output_file(self):
        target = self.tmp_path / "trajectory.csv"
        code = main(["rigid-body", "--dt", "0.001", "--steps", "100", "--format", "csv", "--out", str(target)])
        assert code == EXIT_OK
        lines = target.read_text(encoding="utf-8").splitlines()
        assert lines[0] == "t,L1,L2,L3,energy,casimir,R0,R_B1,R_B2,R_B3,spatial_drift"
        assert len(lines) == 102

    def test_relative_out_goes_to_output_directory(self):
        assert main(["algebra", "clifford:2:euclid", "--format", "csv", "--out", "table.csv"]) == EXIT_OK
        assert (self.tmp_path / "output" / "table.csv").exists()

    def test_output_is_byte_identical(self):
        first, second = self.tmp_path / "a.json", self.tmp_path / "b.json"
        assert main(["property-suite", "--suites", "algebra,brst", "--samples", "3", "--out", str(first)]) == EXIT_OK
        assert main(["property-suite", "--suites", "algebra,brst", "--samples", "3", "--out", str(second)]) == EXIT_OK
        assert first.read_bytes() == second.read_bytes()

    def test_failed_checks_exit_one(self, capsys):
        code = main(["geometry", "--chart", "sphere", "--grid", "2", "--tol", "curvature=1e-30"])
        assert code == EXIT_CHECKS_FAILED
        captured = capsys.readouterr()
        assert json.loads(captured.out)["passed"] is False
        assert '"failures"' in captured.err

    def test_missing_input_exits_two(self, capsys):
        code = main(["brst", "--input", str(self.tmp_path / "missing.json")])
        assert code == EXIT_USAGE
        assert "InputSpecError" in capsys.readouterr().err

    def test_unknown_tolerance_exits_two(self):
        assert main(["algebra", "so3", "--tol", "wobble=1e-3"]) == EXIT_USAGE

    def test_invalid_settings_exit_two(self, monkeypatch):
        monkeypatch.setenv("SUPERANALYSIS_OUTPUT_FORMAT", "xml")
        assert main(["algebra", "so3"]) == EXIT_USAGE

    def test_bad_algebra_name_exits_two(self):
        assert main(["algebra", "e8"]) == EXIT_USAGE

    def test_brst_report_uses_serialized_values(self, oscillator_spec, oscillator_file, capsys):
        assert main(["brst", "--input", str(oscillator_file)]) == EXIT_OK
        report = json.loads(capsys.readouterr().out)["report"]
        spec = HamiltonianSpec.model_validate(oscillator_spec)
        space = spec.phase_space()
        h = spec.polynomial(space)
        eps = ExtendedPhaseSpace(space)
        assert poly_from_dict(report["hamiltonian"]) == h
        assert multivector_from_dict(report["extended_hamiltonian"], eps.signature) == extended_hamiltonian(h, eps)
        assert report["brackets"]["Q,Qbar"]["value"]["blades"] == []
        flow = multivector_from_dict(report["equations_of_motion"]["z"]["q"], eps.signature)
        assert flow == equations_of_motion_expected(h, eps)["z"]["q"]

    def test_algebra_report_uses_serialized_values(self, capsys):
        assert main(["algebra", "un:2"]) == EXIT_OK
        report = json.loads(capsys.readouterr().out)["report"]
        algebra = make_algebra("un", 2)
        for name, generator in zip(algebra.names, algebra.generators):
            assert multivector_from_dict(report["generators"][name], algebra.signature) == generator
        assert all(value["blades"] == [] for value in report["complex_structure_commutators"].values())
