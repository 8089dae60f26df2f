"""
Commands module - one command per CLI subcommand.
"""

import logging
from abc import ABC, abstractmethod
from typing import Any, Dict, Iterable, List, Mapping, Optional

from app_types.report_types import CheckResult, CommandReport, Failure
from exceptions import InputSpecError, SuperanalysisError
from settings import settings_manager
from utils import computation_context

from .run_config import RunConfig

logger = logging.getLogger(__name__)


class BaseCommand(ABC):
    """Base class for all commands"""

    def __init__(self, name: str, description: str = ""):
        self.name = name
        self.description = description
        self.parameters: Dict[str, str] = {}
        self.status = "initialized"
        self.logger = logging.getLogger(f"command.{name}")

    @abstractmethod
    def execute(self, config: RunConfig) -> CommandReport:
        """Runs the command for a validated configuration"""

    def get_info(self) -> Dict[str, Any]:
        """Returns information about the command"""
        return {
            "name": self.name,
            "description": self.description,
            "parameters": self.parameters,
            "status": self.status,
        }

    def initialize(self):
        """Initializes the command"""
        self.status = "ready"
        self.logger.debug(f"Command {self.name} initialized")

    def build_report(
        self,
        config: RunConfig,
        report: Dict[str, Any],
        failures: List[Failure],
        rows: Optional[List[Dict[str, Any]]] = None,
    ) -> CommandReport:
        passed = not failures
        self.status = "completed" if passed else "failed"
        out: CommandReport = {
            "command": config.command,
            "status": self.status,
            "passed": passed,
            "config": config.public_dict(),
            "report": report,
            "failures": failures,
        }
        if rows is not None:
            out["rows"] = rows
        return out


def check(value: float, tolerance: float) -> CheckResult:
    """Residual against tolerance as a report entry."""
    return {"value": float(value), "tolerance": float(tolerance), "passed": bool(value <= tolerance)}


def failures_from_checks(checks: Mapping[str, Mapping[str, Any]], prefix: str = "") -> List[Failure]:
    """Failure entries for every check whose ``passed`` flag is false."""
    failures: List[Failure] = []
    for name, result in checks.items():
        if result.get("passed", True):
            continue
        failure: Failure = {"check": f"{prefix}{name}", "message": f"{prefix}{name} failed"}
        if "value" in result:
            failure["value"] = result["value"]
            failure["tolerance"] = result.get("tolerance")
        failures.append(failure)
    return failures


def failure_from_error(error: SuperanalysisError) -> Failure:
    return {"check": "error", "message": str(error), "error": type(error).__name__}


def apply_tolerance_overrides(overrides: Mapping[str, float]) -> None:
    """Applies ``--tol`` overrides; bare names address the ``tolerances`` section.

    Raises:
        InputSpecError: If a name does not address an existing setting.
    """
    for key, value in overrides.items():
        path = key if "." in key else f"tolerances.{key}"
        if settings_manager.get(path) is None:
            raise InputSpecError(f"Unknown tolerance {key!r}", "--tol")
        settings_manager.set(path, value)
        logger.debug(f"Tolerance override {path} = {value}")


def initialize() -> Dict[str, BaseCommand]:
    """Initializes all commands"""
    from .algebra import AlgebraCommand
    from .brst import BrstCommand
    from .geometry import GeometryCommand
    from .property_suite import PropertySuiteCommand
    from .rigid_body import RigidBodyCommand

    commands: Dict[str, BaseCommand] = {
        "algebra": AlgebraCommand(),
        "brst": BrstCommand(),
        "geometry": GeometryCommand(),
        "rigid-body": RigidBodyCommand(),
        "property-suite": PropertySuiteCommand(),
    }
    for command in commands.values():
        command.initialize()
    return commands


def run_command(config: RunConfig, commands: Optional[Dict[str, BaseCommand]] = None) -> CommandReport:
    """Executes ``config.command``; engine errors become a failed report.

    Raises:
        InputSpecError: For malformed input, which the front end treats as a usage error.
    """
    commands = commands or initialize()
    command = commands[config.command]
    apply_tolerance_overrides(config.tolerances)
    command.status = "running"
    try:
        with computation_context(config.command, "command"):
            return command.execute(config)
    except InputSpecError:
        command.status = "failed"
        raise
    except SuperanalysisError as e:
        return command.build_report(config, {}, [failure_from_error(e)])


def iter_failures(groups: Iterable[List[Failure]]) -> List[Failure]:
    return [failure for group in groups for failure in group]


__all__ = [
    "BaseCommand",
    "RunConfig",
    "apply_tolerance_overrides",
    "check",
    "failure_from_error",
    "failures_from_checks",
    "initialize",
    "iter_failures",
    "run_command",
]
