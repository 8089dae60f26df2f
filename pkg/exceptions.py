"""Custom exception classes for the superanalysis engine.

Provides a hierarchy of exceptions for fine-grained error handling
across coefficient arithmetic, multivector products, phase-space
calculus, chart geometry and rigid-body integration.
"""

from typing import Any, Optional, Sequence


class SuperanalysisError(Exception):
    """Base exception for all superanalysis errors."""

    pass


class RegistryError(SuperanalysisError):
    """Raised when a variable is unknown, unbound or registries disagree."""

    def __init__(self, message: str, variable: str, cause: Optional[Exception] = None):
        self.variable = variable
        self.cause = cause
        super().__init__(f"{message} (variable: {variable})")


class BackendMismatchError(SuperanalysisError):
    """Raised when exact and float scalars meet in one expression."""

    def __init__(self, message: str, left: str, right: str):
        self.left = left
        self.right = right
        super().__init__(f"{message} (backends: {left}, {right})")


class NonFiniteError(SuperanalysisError):
    """Raised when a float operation produces NaN or Inf."""

    def __init__(self, message: str, operation: str):
        self.operation = operation
        super().__init__(f"{message} (operation: {operation})")


class SignatureError(SuperanalysisError):
    """Raised for malformed, degenerate or mismatched metric signatures."""

    def __init__(self, message: str, signature: str = "", cause: Optional[Exception] = None):
        self.signature = signature
        self.cause = cause
        if signature:
            message = f"{message} (signature: {signature})"
        super().__init__(message)


class GradeError(SuperanalysisError):
    """Raised when a grade is out of range or an input is not homogeneous."""

    def __init__(self, message: str, grade: Any = None):
        self.grade = grade
        super().__init__(f"{message} (grade: {grade})")


class RotorError(SuperanalysisError):
    """Raised when a multivector fails the rotor unit check."""

    pass


class SeriesConvergenceError(RotorError):
    """Raised when a star-exponential series hits its term cap."""

    def __init__(self, message: str, terms: int):
        self.terms = terms
        super().__init__(f"{message} (terms: {terms})")


class AlgebraClosureError(SuperanalysisError):
    """Raised when bivector generators are dependent or not closed."""

    def __init__(self, message: str, product: str = ""):
        self.product = product
        super().__init__(f"{message} (product: {product})" if product else message)


class PhaseSpaceError(SuperanalysisError):
    """Raised for phase-space scope violations and unsupported Hamiltonians."""

    def __init__(self, message: str, variable: str = ""):
        self.variable = variable
        super().__init__(f"{message} (variable: {variable})" if variable else message)


class GeometryError(SuperanalysisError):
    """Raised when chart evaluation fails."""

    def __init__(
        self,
        message: str,
        chart: str,
        point: Optional[Sequence[float]] = None,
        cause: Optional[Exception] = None,
    ):
        self.chart = chart
        self.point = tuple(point) if point is not None else None
        self.cause = cause
        location = f", point: {self.point}" if self.point is not None else ""
        super().__init__(f"{message} (chart: {chart}{location})")


class ToleranceError(GeometryError):
    """Raised when a geometric identity residual exceeds its tolerance."""

    def __init__(
        self,
        message: str,
        chart: str,
        residual: float,
        point: Optional[Sequence[float]] = None,
    ):
        self.residual = residual
        super().__init__(f"{message}: residual {residual:.3e}", chart, point)


class InertiaError(SuperanalysisError):
    """Raised when an inertia operator is singular, indefinite or asymmetric."""

    def __init__(self, message: str, moments: Sequence[float] = ()):
        self.moments = tuple(moments)
        super().__init__(f"{message} (moments: {self.moments})" if self.moments else message)


class IntegrationError(SuperanalysisError):
    """Raised when a trajectory blows up or produces non-finite values."""

    def __init__(self, message: str, step: int):
        self.step = step
        super().__init__(f"{message} (step: {step})")


class ConfigurationError(SuperanalysisError):
    """Raised when configuration is invalid or missing."""

    pass


class InputSpecError(SuperanalysisError):
    """Raised when a CLI input document is malformed."""

    def __init__(self, message: str, source: str, cause: Optional[Exception] = None):
        self.source = source
        self.cause = cause
        super().__init__(f"{message} (source: {source})")
