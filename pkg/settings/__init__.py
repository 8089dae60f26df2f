"""
Settings module - configuration for numerics, tolerances and output.
"""

import copy
import json
import logging
from pathlib import Path
from typing import Any, Dict, List, Optional

from pydantic_settings import BaseSettings, SettingsConfigDict

logger = logging.getLogger(__name__)


class EnvironmentOverrides(BaseSettings):
    """Environment variables recognised by the engine (prefix ``SUPERANALYSIS_``)."""

    model_config = SettingsConfigDict(env_prefix="SUPERANALYSIS_", extra="ignore")

    log_level: Optional[str] = None
    output_format: Optional[str] = None
    output_directory: Optional[str] = None
    seed: Optional[int] = None
    rotor_series_tol: Optional[float] = None
    rotor_max_terms: Optional[int] = None
    rigid_body_dt: Optional[float] = None
    rigid_body_steps: Optional[int] = None

    def as_paths(self) -> Dict[tuple, Any]:
        mappings = {
            "log_level": ("logging", "level"),
            "output_format": ("output", "format"),
            "output_directory": ("output", "directory"),
            "seed": ("property_suite", "seed"),
            "rotor_series_tol": ("numerics", "rotor_series_tol"),
            "rotor_max_terms": ("numerics", "rotor_max_terms"),
            "rigid_body_dt": ("rigid_body", "dt"),
            "rigid_body_steps": ("rigid_body", "steps"),
        }
        return {
            path: getattr(self, field)
            for field, path in mappings.items()
            if getattr(self, field) is not None
        }


class SettingsManager:
    """Central manager for all engine settings"""

    def __init__(self, config_dir: str = "settings"):
        self.config_dir = Path(config_dir)

        self.settings: Dict[str, Any] = {}
        self.default_settings: Dict[str, Any] = {}
        self.environment_settings: Dict[str, Any] = {}

        self._load_default_settings()
        self._load_environment_settings()
        self._load_config_files()

    def _load_default_settings(self):
        """Loads default settings"""
        self.default_settings = {
            "numerics": {
                "rotor_series_tol": 1e-14,
                "rotor_max_terms": 200,
                "rotor_unit_tol": 1e-12,
                "fd_step_first": 1e-5,
                "fd_step_second": 1e-4,
                "pole_guard": 0.05,
            },
            "tolerances": {
                "frame": 1e-10,
                "christoffel": 1e-8,
                "curvature": 1e-6,
                "forms": 1e-6,
                "symplectic": 1e-10,
                "circle_action": 1e-9,
                "rigid_body_casimir": 1e-10,
                "rigid_body_energy": 1e-8,
                "spatial_momentum": 1e-6,
                "poincare": 1e-6,
                "reversal": 1e-8,
            },
            "rigid_body": {"dt": 1e-3, "steps": 10000, "rotor_unit_tol": 1e-9},
            "output": {"format": "json", "digits": 17, "directory": "output"},
            "property_suite": {"seed": 0, "samples": 200},
            "logging": {"level": "INFO"},
        }

        self.settings = copy.deepcopy(self.default_settings)
        logger.debug("Default settings loaded")

    def _load_environment_settings(self):
        """Loads settings from environment variables"""
        self.environment_settings = {}
        for path, value in EnvironmentOverrides().as_paths().items():
            self._set_nested_value(self.environment_settings, path, value)

        self._merge_settings(self.settings, self.environment_settings)
        logger.debug("Environment settings loaded")

    def _load_config_files(self):
        """Loads JSON configuration files from the config directory"""
        for config_file in ("config.json", "settings.json"):
            config_path = self.config_dir / config_file
            if config_path.exists():
                try:
                    with open(config_path, "r", encoding="utf-8") as f:
                        file_settings = json.load(f)
                    self._merge_settings(self.settings, file_settings)
                    logger.info(f"Loaded config file: {config_path}")
                except (OSError, json.JSONDecodeError) as e:
                    logger.error(f"Error loading config file {config_path}: {e}")

    def _set_nested_value(self, dictionary: Dict, path: tuple, value: Any):
        current = dictionary
        for key in path[:-1]:
            current = current.setdefault(key, {})
        current[path[-1]] = value

    def _merge_settings(self, target: Dict, source: Dict):
        for key, value in source.items():
            if key in target and isinstance(target[key], dict) and isinstance(value, dict):
                self._merge_settings(target[key], value)
            else:
                target[key] = value

    def get(self, key_path: str, default: Any = None) -> Any:
        """Fetches a value through a dotted path such as ``tolerances.frame``"""
        current: Any = self.settings
        try:
            for key in key_path.split("."):
                current = current[key]
            return current
        except (KeyError, TypeError):
            return default

    def set(self, key_path: str, value: Any):
        """Sets a value through a dotted path"""
        keys = key_path.split(".")
        self._set_nested_value(self.settings, tuple(keys), value)
        logger.info(f"Setting updated: {key_path} = {value}")

    def get_section(self, section: str) -> Dict[str, Any]:
        return self.settings.get(section, {})

    def update_section(self, section: str, updates: Dict[str, Any]):
        self.settings.setdefault(section, {}).update(updates)
        logger.info(f"Section updated: {section}")

    def save_config(self, filename: str = "settings.json") -> bool:
        """Writes the current settings into the config directory"""
        config_path = self.config_dir / filename
        try:
            self.config_dir.mkdir(parents=True, exist_ok=True)
            with open(config_path, "w", encoding="utf-8") as f:
                json.dump(self.settings, f, indent=2, sort_keys=True)
            logger.info(f"Settings saved to {config_path}")
            return True
        except OSError as e:
            logger.error(f"Error saving settings: {e}")
            return False

    def reload_config(self):
        """Rebuilds settings from defaults, environment and files"""
        self.settings = copy.deepcopy(self.default_settings)
        self._load_environment_settings()
        self._load_config_files()
        logger.info("Configuration reloaded")

    def get_all_settings(self) -> Dict[str, Any]:
        return copy.deepcopy(self.settings)

    def validate_settings(self) -> List[str]:
        """Validates the current settings and returns a list of problems"""
        errors: List[str] = []
        errors.extend(ConfigValidator.validate_numerics(self.get_section("numerics")))
        errors.extend(ConfigValidator.validate_tolerances(self.get_section("tolerances")))
        errors.extend(ConfigValidator.validate_rigid_body(self.get_section("rigid_body")))
        errors.extend(ConfigValidator.validate_output(self.get_section("output")))

        level = str(self.get("logging.level", "INFO")).upper()
        if level not in ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"):
            errors.append(f"Unknown log level: {level}")
        return errors


class ConfigValidator:
    """Validates configuration sections"""

    @staticmethod
    def validate_numerics(config: Dict[str, Any]) -> List[str]:
        errors = []
        for key in ("rotor_series_tol", "rotor_unit_tol", "fd_step_first", "fd_step_second"):
            value = config.get(key)
            if not isinstance(value, (int, float)) or not 0 < value < 1:
                errors.append(f"numerics.{key} must be a float in (0, 1)")

        max_terms = config.get("rotor_max_terms")
        if not isinstance(max_terms, int) or max_terms < 2:
            errors.append("numerics.rotor_max_terms must be an integer >= 2")

        guard = config.get("pole_guard")
        if not isinstance(guard, (int, float)) or not 0 < guard < 1:
            errors.append("numerics.pole_guard must be in (0, 1)")
        return errors

    @staticmethod
    def validate_tolerances(config: Dict[str, Any]) -> List[str]:
        errors = []
        for key, value in config.items():
            if not isinstance(value, (int, float)) or not 0 < value < 1:
                errors.append(f"tolerances.{key} must be a float in (0, 1)")
        return errors

    @staticmethod
    def validate_rigid_body(config: Dict[str, Any]) -> List[str]:
        errors = []
        dt = config.get("dt")
        if not isinstance(dt, (int, float)) or dt <= 0:
            errors.append("rigid_body.dt must be positive")

        steps = config.get("steps")
        if not isinstance(steps, int) or steps < 1:
            errors.append("rigid_body.steps must be a positive integer")
        return errors

    @staticmethod
    def validate_output(config: Dict[str, Any]) -> List[str]:
        errors = []
        if config.get("format") not in ("json", "csv"):
            errors.append("output.format must be 'json' or 'csv'")

        digits = config.get("digits")
        if not isinstance(digits, int) or not 1 <= digits <= 17:
            errors.append("output.digits must be an integer between 1 and 17")
        return errors


# Global settings instance
settings_manager = SettingsManager()
