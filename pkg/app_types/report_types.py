"""Type definitions for command reports.

Provides TypedDict definitions and type aliases for the structured
documents emitted by the command-line front end.
"""

from typing import Any, Dict, List, Literal, Optional, Tuple, TypedDict

# Type Aliases
OutputFormat = Literal["json", "csv"]
CommandName = Literal["algebra", "brst", "geometry", "rigid-body", "property-suite"]
CommandStatus = Literal["initialized", "running", "completed", "failed"]

RIGID_BODY_COLUMNS: Tuple[str, ...] = (
    "t",
    "L1",
    "L2",
    "L3",
    "energy",
    "casimir",
    "R0",
    "R_B1",
    "R_B2",
    "R_B3",
    "spatial_drift",
)


class Failure(TypedDict, total=False):
    """One failed in-run check."""

    check: str
    message: str
    value: Optional[float]
    tolerance: Optional[float]
    error: str


class CheckResult(TypedDict):
    """Residual of a named identity against its tolerance."""

    value: float
    tolerance: float
    passed: bool


class AlgebraReport(TypedDict, total=False):
    """Structure constants and Killing metric, or a Clifford product table."""

    algebra: str
    signature: str
    kind: str
    generators: Dict[str, Any]
    structure_constants: List[Dict[str, Any]]
    killing: List[List[Any]]
    jacobi_failures: int
    complex_structure_commutators: Dict[str, Any]
    blades: List[str]


class BrstReport(TypedDict):
    """Extended Hamiltonian, equations of motion and BRST bracket checks."""

    hamiltonian: Any
    extended_hamiltonian: Any
    equations_of_motion: Dict[str, Dict[str, Any]]
    equations_match: bool
    brackets: Dict[str, Dict[str, Any]]


class CommandReport(TypedDict, total=False):
    """Complete machine-readable result of one command run."""

    command: CommandName
    status: CommandStatus
    passed: bool
    config: Dict[str, Any]
    report: Dict[str, Any]
    rows: List[Dict[str, Any]]
    failures: List[Failure]
