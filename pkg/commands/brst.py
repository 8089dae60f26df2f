"""``brst --input H.json``: extended Hamiltonian, equations of motion and BRST charges."""

from typing import Any, Dict, List, Tuple

from app_types.report_types import BrstReport, CommandReport, Failure
from exceptions import InputSpecError
from moyal_engine import (
    ExtendedPhaseSpace,
    brst_checks,
    compare_equations_of_motion,
    extended_equations_of_motion,
    extended_hamiltonian,
)

from . import BaseCommand
from .run_config import HamiltonianSpec, RunConfig, load_hamiltonian


def brst_report(spec: HamiltonianSpec) -> Tuple[BrstReport, List[str]]:
    """Report plus the names of equations of motion that differ from their expected form."""
    space = spec.phase_space()
    h = spec.polynomial(space)
    eps = ExtendedPhaseSpace(space)
    h_extended = extended_hamiltonian(h, eps)
    equations = extended_equations_of_motion(h_extended, eps)
    comparison = compare_equations_of_motion(h, eps)
    checks = brst_checks(eps, h_extended=h_extended)
    report: BrstReport = {
        "hamiltonian": h,
        "extended_hamiltonian": h_extended,
        "equations_of_motion": {family: dict(components) for family, components in equations.items()},
        "equations_match": comparison["passed"],
        "brackets": checks["brackets"],
    }
    return report, comparison["mismatches"]


def brst_failures(report: BrstReport, mismatches: List[str]) -> List[Failure]:
    failures: List[Failure] = [
        {"check": f"equation_of_motion:{name}", "message": f"Bracket-derived {name} differs from its expected form"}
        for name in mismatches
    ]
    for name, result in report["brackets"].items():
        if not result["vanishes"]:
            failures.append({"check": f"bracket:{name}", "message": f"{{{name}}} = {result['value']}"})
    return failures


class BrstCommand(BaseCommand):
    """Command for the extended phase space of a polynomial Hamiltonian"""

    def __init__(self):
        super().__init__(name="brst", description="Checks extended equations of motion and BRST charges")
        self.parameters = {
            "input": "path",  # Hamiltonian spec JSON
            "parameters": "dict",  # Inline Hamiltonian spec when no input is given
        }

    def execute(self, config: RunConfig) -> CommandReport:
        source: Any = config.input if config.input is not None else config.parameters
        if not source:
            raise InputSpecError("brst needs a Hamiltonian spec (--input)", "brst")
        spec = load_hamiltonian(source)
        self.logger.info(f"Extended phase space with {spec.degrees_of_freedom} degrees of freedom")
        report, mismatches = brst_report(spec)
        result: Dict[str, Any] = dict(report)
        result["mismatches"] = mismatches
        return self.build_report(config, result, brst_failures(report, mismatches))
