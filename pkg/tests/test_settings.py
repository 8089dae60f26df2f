"""
Tests for the settings system
"""

import json
import sys
import tempfile
from pathlib import Path

import pytest

project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

from settings import ConfigValidator, EnvironmentOverrides, SettingsManager


class TestSettingsManager:
    """Test class for SettingsManager"""

    def setup_method(self):
        self.temp_dir = tempfile.mkdtemp()
        self.settings_manager = SettingsManager(self.temp_dir)

    def teardown_method(self):
        import shutil

        shutil.rmtree(self.temp_dir, ignore_errors=True)

    def test_initialization(self):
        assert self.settings_manager.config_dir == Path(self.temp_dir)
        assert self.settings_manager.settings is not None
        assert self.settings_manager.default_settings is not None

    @pytest.mark.parametrize(
        "path, expected",
        [
            ("numerics.rotor_series_tol", 1e-14),
            ("numerics.rotor_max_terms", 200),
            ("tolerances.curvature", 1e-6),
            ("tolerances.rigid_body_casimir", 1e-10),
            ("rigid_body.dt", 1e-3),
            ("rigid_body.steps", 10000),
            ("output.format", "json"),
            ("property_suite.seed", 0),
        ],
    )
    def test_defaults(self, path, expected):
        assert self.settings_manager.get(path) == expected

    def test_get_nonexistent_value_with_default(self):
        assert self.settings_manager.get("nonexistent.key") is None
        assert self.settings_manager.get("nonexistent.key", 5) == 5

    def test_set_nested_value(self):
        self.settings_manager.set("tolerances.curvature", 1e-5)
        assert self.settings_manager.get("tolerances.curvature") == 1e-5

    def test_update_section_keeps_other_keys(self):
        self.settings_manager.update_section("rigid_body", {"dt": 0.01})
        assert self.settings_manager.get("rigid_body.dt") == 0.01
        assert self.settings_manager.get("rigid_body.steps") == 10000

    def test_save_and_reload(self):
        self.settings_manager.set("rigid_body.steps", 50)
        assert self.settings_manager.save_config("settings.json") is True

        saved = json.loads((Path(self.temp_dir) / "settings.json").read_text(encoding="utf-8"))
        assert saved["rigid_body"]["steps"] == 50

        self.settings_manager.set("rigid_body.steps", 7)
        self.settings_manager.reload_config()
        assert self.settings_manager.get("rigid_body.steps") == 50

    def test_reload_discards_in_memory_changes(self):
        self.settings_manager.set("tolerances.frame", 0.5)
        self.settings_manager.reload_config()
        assert self.settings_manager.get("tolerances.frame") == 1e-10

    def test_config_file_overrides_defaults(self):
        (Path(self.temp_dir) / "config.json").write_text(json.dumps({"output": {"format": "csv"}}), encoding="utf-8")
        manager = SettingsManager(self.temp_dir)
        assert manager.get("output.format") == "csv"
        assert manager.get("output.digits") == 17

    def test_broken_config_file_is_ignored(self):
        (Path(self.temp_dir) / "config.json").write_text("{not json", encoding="utf-8")
        manager = SettingsManager(self.temp_dir)
        assert manager.get("output.format") == "json"

    def test_get_all_settings_is_a_copy(self):
        everything = self.settings_manager.get_all_settings()
        assert set(everything) == {"numerics", "tolerances", "rigid_body", "output", "property_suite", "logging"}
        everything["numerics"]["rotor_max_terms"] = 1
        assert self.settings_manager.get("numerics.rotor_max_terms") == 200

    def test_validate_settings_success(self):
        assert self.settings_manager.validate_settings() == []

    def test_validate_settings_reports_problems(self):
        self.settings_manager.set("logging.level", "LOUD")
        self.settings_manager.set("rigid_body.dt", -1.0)
        errors = self.settings_manager.validate_settings()
        assert any("log level" in error for error in errors)
        assert any("rigid_body.dt" in error for error in errors)


class TestEnvironmentOverrides:
    """Test class for SUPERANALYSIS_ environment variables"""

    def test_no_overrides_by_default(self, monkeypatch):
        for name in ("LOG_LEVEL", "OUTPUT_FORMAT", "SEED", "RIGID_BODY_DT"):
            monkeypatch.delenv(f"SUPERANALYSIS_{name}", raising=False)
        assert EnvironmentOverrides().as_paths() == {}

    def test_environment_values_reach_settings(self, monkeypatch, tmp_path):
        monkeypatch.setenv("SUPERANALYSIS_SEED", "7")
        monkeypatch.setenv("SUPERANALYSIS_RIGID_BODY_DT", "0.01")
        monkeypatch.setenv("SUPERANALYSIS_OUTPUT_FORMAT", "csv")
        manager = SettingsManager(str(tmp_path))
        assert manager.get("property_suite.seed") == 7
        assert manager.get("rigid_body.dt") == 0.01
        assert manager.get("output.format") == "csv"


class TestConfigValidator:
    """Test class for ConfigValidator"""

    def setup_method(self):
        self.defaults = SettingsManager(tempfile.mkdtemp()).get_all_settings()

    def test_numerics_success(self):
        assert ConfigValidator.validate_numerics(self.defaults["numerics"]) == []

    @pytest.mark.parametrize(
        "key, value",
        [("rotor_series_tol", 0.0), ("fd_step_first", 2.0), ("rotor_max_terms", 1), ("pole_guard", 1.5)],
    )
    def test_numerics_rejects(self, key, value):
        config = dict(self.defaults["numerics"], **{key: value})
        errors = ConfigValidator.validate_numerics(config)
        assert any(key in error for error in errors)

    def test_tolerances_must_be_in_unit_interval(self):
        errors = ConfigValidator.validate_tolerances({"curvature": 0.0, "frame": 1e-10, "forms": "small"})
        assert len(errors) == 2

    def test_rigid_body_rejects_zero_steps(self):
        errors = ConfigValidator.validate_rigid_body({"dt": 1e-3, "steps": 0})
        assert errors == ["rigid_body.steps must be a positive integer"]

    def test_output_format_and_digits(self):
        assert ConfigValidator.validate_output({"format": "json", "digits": 17}) == []
        errors = ConfigValidator.validate_output({"format": "xml", "digits": 30})
        assert len(errors) == 2
