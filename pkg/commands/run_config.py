"""Validated inputs of the command-line front end."""

import json
import logging
import math
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

from app_types.report_types import CommandName, OutputFormat
from exceptions import InputSpecError
from moyal_engine import PhaseSpace
from scalar_ring import PolyScalar, parse_rational

logger = logging.getLogger(__name__)


class RunConfig(BaseModel):
    """One CLI invocation.

    Attributes:
        command: Subcommand to run.
        name: Algebra name for ``algebra``.
        input: JSON input document (Hamiltonian or chart spec).
        parameters: Inline parameters used when no input file is given.
        output_format: ``json`` or ``csv``.
        out: Output path; standard output when omitted.
        tolerances: Overrides keyed by setting name (``curvature``) or dotted path.
        seed: Seed of the randomized suites.
        samples: Sample count of the randomized suites.
        grid: Points per axis of geometry grids.
    """

    model_config = ConfigDict(extra="forbid")

    command: CommandName
    name: Optional[str] = None
    input: Optional[Path] = None
    parameters: Dict[str, Any] = Field(default_factory=dict)
    output_format: OutputFormat = "json"
    out: Optional[Path] = None
    tolerances: Dict[str, float] = Field(default_factory=dict)
    seed: int = Field(0, ge=0)
    samples: int = Field(200, ge=1)
    grid: int = Field(20, ge=1, le=200)

    @field_validator("tolerances")
    @classmethod
    def _positive(cls, value: Dict[str, float]) -> Dict[str, float]:
        for key, number in value.items():
            if not (math.isfinite(number) and number > 0):
                raise ValueError(f"tolerance {key} must be a positive finite number")
        return value

    def public_dict(self) -> Dict[str, Any]:
        """Deterministic, JSON-ready echo of the configuration."""
        return json.loads(self.model_dump_json(exclude={"out"}))


def parse_tolerance_overrides(items: List[str]) -> Dict[str, float]:
    """``["curvature=1e-5", ...]`` to a mapping.

    Raises:
        InputSpecError: If an item is not ``name=value`` with a numeric value.
    """
    out: Dict[str, float] = {}
    for item in items:
        key, sep, raw = item.partition("=")
        if not sep or not key.strip():
            raise InputSpecError(f"Tolerance override {item!r} is not name=value", "--tol")
        try:
            out[key.strip()] = float(raw)
        except ValueError as e:
            raise InputSpecError(f"Tolerance override {item!r} has a non-numeric value", "--tol", e) from e
    return out


def parse_triple(text: str, label: str) -> Tuple[float, float, float]:
    """``"1,2,3"`` to three floats."""
    try:
        values = tuple(float(v) for v in text.split(","))
    except ValueError as e:
        raise InputSpecError(f"{label} must be three comma-separated numbers", label, e) from e
    if len(values) != 3:
        raise InputSpecError(f"{label} must have three components, got {len(values)}", label)
    return values  # type: ignore[return-value]


# ----------------------------------------------------------- Hamiltonians


class TermSpec(BaseModel):
    """``coefficient * q^q * p^p`` with exponents per degree of freedom."""

    model_config = ConfigDict(extra="forbid")

    coefficient: str
    q: List[int]
    p: List[int]

    @field_validator("coefficient")
    @classmethod
    def _rational(cls, value: str) -> str:
        try:
            parse_rational(value)
        except (ValueError, ZeroDivisionError) as e:
            raise ValueError(f"coefficient {value!r} is not a rational 'num/den'") from e
        return value

    @field_validator("q", "p")
    @classmethod
    def _exponents(cls, value: List[int]) -> List[int]:
        if any(e < 0 for e in value):
            raise ValueError("exponents must be non-negative")
        return value


class HamiltonianSpec(BaseModel):
    """``{"degrees_of_freedom": d, "terms": [{"coefficient": "n/d", "q": [..], "p": [..]}]}``."""

    model_config = ConfigDict(extra="forbid")

    degrees_of_freedom: int = Field(ge=1, le=4)
    terms: List[TermSpec] = Field(default_factory=list)

    @model_validator(mode="after")
    def _lengths(self) -> "HamiltonianSpec":
        for index, term in enumerate(self.terms):
            if len(term.q) != self.degrees_of_freedom or len(term.p) != self.degrees_of_freedom:
                raise ValueError(f"term {index} needs {self.degrees_of_freedom} q and p exponents")
        return self

    def phase_space(self) -> PhaseSpace:
        return PhaseSpace.darboux(self.degrees_of_freedom)

    def polynomial(self, space: Optional[PhaseSpace] = None) -> PolyScalar:
        space = space or self.phase_space()
        positions = [space.variable(name) for name in space.configuration]
        momenta = [space.variable(name) for name in space.momenta]
        total = space.registry.zero()
        for term in self.terms:
            monomial = space.registry.one() * Fraction(parse_rational(term.coefficient))
            for variable, exponent in zip(positions + momenta, term.q + term.p):
                if exponent:
                    monomial = monomial * variable ** exponent
            total = total + monomial
        return total


def load_hamiltonian(source: Any) -> HamiltonianSpec:
    """Loads a Hamiltonian spec from a JSON path or a parsed mapping.

    Raises:
        InputSpecError: If the document cannot be read or fails validation.
    """
    label = str(source)
    try:
        if isinstance(source, (str, Path)):
            data = json.loads(Path(source).read_text(encoding="utf-8"))
        else:
            data = dict(source)
        spec = HamiltonianSpec.model_validate(data)
    except (OSError, json.JSONDecodeError, ValidationError, TypeError, ValueError) as e:
        raise InputSpecError("Invalid Hamiltonian spec", label, e) from e
    logger.info(f"Loaded Hamiltonian with {len(spec.terms)} terms from {label}")
    return spec


# ------------------------------------------------------------- rigid body


class RigidBodyParams(BaseModel):
    """Principal moments, initial body angular momentum and step control."""

    model_config = ConfigDict(extra="forbid")

    inertia: Tuple[float, float, float] = (1.0, 2.0, 3.0)
    L0: Tuple[float, float, float] = (1.0, 0.5, 0.3)
    dt: Optional[float] = Field(None, gt=0)
    steps: Optional[int] = Field(None, ge=1)

    @field_validator("inertia", "L0")
    @classmethod
    def _finite(cls, value: Tuple[float, float, float]) -> Tuple[float, float, float]:
        if not all(math.isfinite(v) for v in value):
            raise ValueError("components must be finite")
        return value
