"""
Tests for the JSON and CSV report writer
"""

import json
import sys
from fractions import Fraction
from pathlib import Path

import numpy as np
import pytest

project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

from multivector_core import MetricSignature, Multivector
from output import ReportWriter, to_jsonable
from output.report_writer import flatten, format_cell
from scalar_ring import ExactBackend, VariableRegistry


def sample_report(rows=None):
    report = {
        "command": "rigid-body",
        "status": "completed",
        "passed": True,
        "config": {"command": "rigid-body"},
        "report": {"dt": 0.001, "checks": {"energy": {"value": 1e-12, "tolerance": 1e-8, "passed": True}}},
        "failures": [],
    }
    if rows is not None:
        report["rows"] = rows
    return report


class TestToJsonable:
    """Test conversion of engine values"""

    def test_fraction(self):
        assert to_jsonable(Fraction(3, 4)) == "3/4"

    def test_numpy_values(self):
        assert to_jsonable(np.array([1.5, 2.0])) == [1.5, 2.0]
        assert to_jsonable(np.int64(3)) == 3
        assert to_jsonable(np.bool_(True)) is True

    def test_non_finite_floats_become_strings(self):
        assert to_jsonable(float("inf")) == "inf"
        assert to_jsonable(float("nan")) == "nan"

    def test_polynomial(self):
        q, p = VariableRegistry(("q", "p")).variables("q", "p")
        data = to_jsonable(q * p)
        assert data["variables"] == ["q", "p"]
        assert data["terms"] == [{"exponents": [1, 1], "re": "1/1", "im": "0/1"}]

    def test_multivector(self):
        signature = MetricSignature.euclidean(2)
        blade = Multivector.blade(signature, ExactBackend(), [0, 1], Fraction(1, 2))
        data = to_jsonable(blade)
        assert data["signature_id"] == signature.name
        assert len(data["blades"]) == 1

    def test_nested_containers(self):
        assert to_jsonable({1: (Fraction(1, 2), Path("a"))}) == {"1": ["1/2", "a"]}


class TestCells:
    """Test CSV cell formatting"""

    @pytest.mark.parametrize(
        "value, text",
        [(True, "true"), (None, ""), (Fraction(-1, 3), "-1/3"), (3, "3"), (0.1, "0.10000000000000001"), ([1, 2], "[1, 2]")],
    )
    def test_format_cell(self, value, text):
        assert format_cell(value) == text

    def test_flatten(self):
        assert flatten({"a": {"b": 1, "c": [2]}}) == [{"key": "a.b", "value": 1}, {"key": "a.c", "value": [2]}]


class TestReportWriter:
    """Test rendering and writing"""

    def setup_method(self):
        self.writer = ReportWriter()

    def test_render_json_round_trips(self):
        text = self.writer.render(sample_report(), "json")
        assert text.endswith("\n")
        assert json.loads(text)["report"]["dt"] == 0.001

    def test_render_csv_rows(self):
        rows = [{"t": 0.0, "L1": 1.0}, {"t": 0.001, "L1": 0.5}]
        text = self.writer.render(sample_report(rows), "csv")
        assert text.splitlines() == ["t,L1", "0,1", "0.001,0.5"]

    def test_render_csv_without_rows_flattens(self):
        lines = self.writer.render(sample_report(), "csv").splitlines()
        assert lines[0] == "key,value"
        assert "passed,true" in lines
        assert "report.checks.energy.passed,true" in lines

    def test_rendering_is_deterministic(self):
        report = sample_report([{"t": 0.1}])
        assert self.writer.render(report, "json") == self.writer.render(report, "json")

    def test_write_relative_path_uses_output_dir(self, tmp_path):
        writer = ReportWriter(str(tmp_path / "reports"))
        text = writer.write(sample_report(), "json", Path("run/report.json"))
        target = tmp_path / "reports" / "run" / "report.json"
        assert target.read_text(encoding="utf-8") == text

    def test_write_absolute_path(self, tmp_path):
        target = tmp_path / "out.csv"
        self.writer.write(sample_report([{"t": 0.0}]), "csv", target)
        assert target.read_text(encoding="utf-8") == "t\n0\n"
