"""Type definitions for command reports.

Exports all type definitions for easy import across the project.
"""

from .report_types import (  # Type Aliases; TypedDict Classes
    RIGID_BODY_COLUMNS,
    AlgebraReport,
    BrstReport,
    CheckResult,
    CommandName,
    CommandReport,
    CommandStatus,
    Failure,
    OutputFormat,
)

__all__ = [
    # Type Aliases
    "OutputFormat",
    "CommandName",
    "CommandStatus",
    "RIGID_BODY_COLUMNS",
    # TypedDict Classes
    "Failure",
    "CheckResult",
    "AlgebraReport",
    "BrstReport",
    "CommandReport",
]
