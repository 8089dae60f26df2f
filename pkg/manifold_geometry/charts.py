"""Embedded charts ``x(x^i) = f^a(x^i) s_a`` with a domain box.

Every built-in family supplies analytic first and second partials; custom
charts may omit them and fall back to central differences.
"""

import json
import logging
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable, Dict, Literal, Optional, Sequence, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator

from exceptions import GeometryError, InputSpecError
from settings import settings_manager

logger = logging.getLogger(__name__)

Embedding = Callable[[np.ndarray], np.ndarray]


@dataclass(frozen=True)
class Chart:
    """Single-chart vector manifold embedded in a euclidean ambient space.

    Attributes:
        name: Label used in reports and error messages.
        dim: Intrinsic dimension ``d``.
        ambient_dim: Ambient dimension ``D``.
        embedding: ``x -> f(x)``, shape ``(D,)``.
        jacobian: Optional ``x -> df``, shape ``(d, D)`` with row ``i`` equal to ``xi_i``.
        hessian: Optional ``x -> d2f``, shape ``(d, d, D)``.
        lows: Lower corner of the domain box.
        highs: Upper corner of the domain box.
        coordinate_names: One name per intrinsic coordinate.
    """

    name: str
    dim: int
    ambient_dim: int
    embedding: Embedding
    jacobian: Optional[Callable[[np.ndarray], np.ndarray]] = None
    hessian: Optional[Callable[[np.ndarray], np.ndarray]] = None
    lows: Tuple[float, ...] = ()
    highs: Tuple[float, ...] = ()
    coordinate_names: Tuple[str, ...] = ()
    parameters: Dict[str, float] = field(default_factory=dict)

    def __post_init__(self):
        if self.ambient_dim < self.dim:
            raise GeometryError(f"Ambient dimension {self.ambient_dim} below intrinsic {self.dim}", self.name)
        if not self.coordinate_names:
            object.__setattr__(self, "coordinate_names", tuple(f"x{i + 1}" for i in range(self.dim)))
        if not self.lows:
            object.__setattr__(self, "lows", (-math.inf,) * self.dim)
        if not self.highs:
            object.__setattr__(self, "highs", (math.inf,) * self.dim)

    def require_domain(self, x: Sequence[float]) -> np.ndarray:
        """Returns ``x`` as an array, raising if it leaves the domain box."""
        point = np.asarray(x, dtype=float)
        if point.shape != (self.dim,):
            raise GeometryError(f"Expected {self.dim} coordinates, got shape {point.shape}", self.name, point)
        for value, low, high, coordinate in zip(point, self.lows, self.highs, self.coordinate_names):
            if not low <= value <= high:
                raise GeometryError(
                    f"Coordinate {coordinate}={value:.6g} outside [{low:.6g}, {high:.6g}]", self.name, point
                )
        return point

    def position(self, x: Sequence[float]) -> np.ndarray:
        return np.asarray(self.embedding(self.require_domain(x)), dtype=float)

    def partials(self, x: Sequence[float]) -> np.ndarray:
        """Frame vectors ``xi_i = dx/dx^i`` as rows."""
        point = self.require_domain(x)
        if self.jacobian is not None:
            return np.asarray(self.jacobian(point), dtype=float)
        h = settings_manager.get("numerics.fd_step_first", 1e-5)
        rows = []
        for i in range(self.dim):
            step = np.zeros(self.dim)
            step[i] = h
            rows.append((self.embedding(point + step) - self.embedding(point - step)) / (2 * h))
        return np.array(rows)

    def second_partials(self, x: Sequence[float]) -> np.ndarray:
        """``d_i d_j x`` with shape ``(d, d, D)``."""
        point = self.require_domain(x)
        if self.hessian is not None:
            return np.asarray(self.hessian(point), dtype=float)
        h = settings_manager.get("numerics.fd_step_second", 1e-4)
        logger.debug(f"Chart {self.name} has no analytic second partials, using step {h}")
        out = np.zeros((self.dim, self.dim, self.ambient_dim))
        for i in range(self.dim):
            step = np.zeros(self.dim)
            step[i] = h
            upper = self.jacobian(point + step) if self.jacobian is not None else self._fd_partials(point + step, h)
            lower = self.jacobian(point - step) if self.jacobian is not None else self._fd_partials(point - step, h)
            out[i] = (np.asarray(upper) - np.asarray(lower)) / (2 * h)
        return 0.5 * (out + out.transpose(1, 0, 2))

    def _fd_partials(self, point: np.ndarray, h: float) -> np.ndarray:
        rows = []
        for i in range(self.dim):
            step = np.zeros(self.dim)
            step[i] = h
            rows.append((self.embedding(point + step) - self.embedding(point - step)) / (2 * h))
        return np.array(rows)

    def sample_points(self, count: int, rng: np.random.Generator, margin: float = 0.0) -> np.ndarray:
        """Uniform samples in the domain box (infinite sides replaced by ``[-1, 1]``)."""
        lows = np.array([low if math.isfinite(low) else -1.0 for low in self.lows]) + margin
        highs = np.array([high if math.isfinite(high) else 1.0 for high in self.highs]) - margin
        return rng.uniform(lows, highs, size=(count, self.dim))


# ------------------------------------------------------------------ families


def plane(dim: int = 2, names: Sequence[str] = ()) -> Chart:
    """Flat ``R^d`` with the identity embedding."""
    identity = np.eye(dim)
    return Chart(
        name=f"plane{dim}",
        dim=dim,
        ambient_dim=dim,
        embedding=lambda x: np.array(x, dtype=float),
        jacobian=lambda x: identity.copy(),
        hessian=lambda x: np.zeros((dim, dim, dim)),
        coordinate_names=tuple(names),
    )


def sphere(radius: float = 1.0, guard: Optional[float] = None) -> Chart:
    """``R (sin t cos f, sin t sin f, cos t)`` with ``t`` kept ``guard`` away from the poles."""
    if radius <= 0:
        raise GeometryError(f"Sphere radius must be positive, got {radius}", "sphere")
    guard = guard if guard is not None else settings_manager.get("numerics.pole_guard", 0.05)

    def embedding(x):
        t, f = x
        return radius * np.array([math.sin(t) * math.cos(f), math.sin(t) * math.sin(f), math.cos(t)])

    def jacobian(x):
        t, f = x
        st, ct, sf, cf = math.sin(t), math.cos(t), math.sin(f), math.cos(f)
        return radius * np.array([[ct * cf, ct * sf, -st], [-st * sf, st * cf, 0.0]])

    def hessian(x):
        t, f = x
        st, ct, sf, cf = math.sin(t), math.cos(t), math.sin(f), math.cos(f)
        out = np.zeros((2, 2, 3))
        out[0, 0] = [-st * cf, -st * sf, -ct]
        out[0, 1] = out[1, 0] = [-ct * sf, ct * cf, 0.0]
        out[1, 1] = [-st * cf, -st * sf, 0.0]
        return radius * out

    return Chart(
        name=f"sphere(R={radius:g})",
        dim=2,
        ambient_dim=3,
        embedding=embedding,
        jacobian=jacobian,
        hessian=hessian,
        lows=(guard, -math.pi),
        highs=(math.pi - guard, math.pi),
        coordinate_names=("theta", "phi"),
        parameters={"radius": radius},
    )


def three_sphere(radius: float = 1.0, guard: float = 0.3) -> Chart:
    """``R (cos c, sin c cos t, sin c sin t cos f, sin c sin t sin f)`` in R^4.

    ``c`` and ``t`` stay ``guard`` away from 0 and pi. Sectional curvature is ``1 / R^2``.
    """
    if radius <= 0:
        raise GeometryError(f"Three-sphere radius must be positive, got {radius}", "sphere3")
    if not 0 < guard < math.pi / 2:
        raise GeometryError(f"Pole guard must lie in (0, pi/2), got {guard}", "sphere3")

    def embedding(x):
        c, t, f = x
        sc, st = math.sin(c), math.sin(t)
        return radius * np.array([math.cos(c), sc * math.cos(t), sc * st * math.cos(f), sc * st * math.sin(f)])

    def jacobian(x):
        c, t, f = x
        sc, cc, st, ct, sf, cf = math.sin(c), math.cos(c), math.sin(t), math.cos(t), math.sin(f), math.cos(f)
        return radius * np.array(
            [
                [-sc, cc * ct, cc * st * cf, cc * st * sf],
                [0.0, -sc * st, sc * ct * cf, sc * ct * sf],
                [0.0, 0.0, -sc * st * sf, sc * st * cf],
            ]
        )

    def hessian(x):
        c, t, f = x
        sc, cc, st, ct, sf, cf = math.sin(c), math.cos(c), math.sin(t), math.cos(t), math.sin(f), math.cos(f)
        out = np.zeros((3, 3, 4))
        out[0, 0] = [-cc, -sc * ct, -sc * st * cf, -sc * st * sf]
        out[0, 1] = out[1, 0] = [0.0, -cc * st, cc * ct * cf, cc * ct * sf]
        out[0, 2] = out[2, 0] = [0.0, 0.0, -cc * st * sf, cc * st * cf]
        out[1, 1] = [0.0, -sc * ct, -sc * st * cf, -sc * st * sf]
        out[1, 2] = out[2, 1] = [0.0, 0.0, -sc * ct * sf, sc * ct * cf]
        out[2, 2] = [0.0, 0.0, -sc * st * cf, -sc * st * sf]
        return radius * out

    return Chart(
        name=f"sphere3(R={radius:g})",
        dim=3,
        ambient_dim=4,
        embedding=embedding,
        jacobian=jacobian,
        hessian=hessian,
        lows=(guard, guard, -math.pi),
        highs=(math.pi - guard, math.pi - guard, math.pi),
        coordinate_names=("chi", "theta", "phi"),
        parameters={"radius": radius},
    )


def torus(major: float = 2.0, minor: float = 1.0) -> Chart:
    """``((R + r cos v) cos u, (R + r cos v) sin u, r sin v)`` with ``R > r > 0``."""
    if not major > minor > 0:
        raise GeometryError(f"Torus needs R > r > 0, got R={major}, r={minor}", "torus")

    def embedding(x):
        u, v = x
        ring = major + minor * math.cos(v)
        return np.array([ring * math.cos(u), ring * math.sin(u), minor * math.sin(v)])

    def jacobian(x):
        u, v = x
        ring = major + minor * math.cos(v)
        su, cu, sv, cv = math.sin(u), math.cos(u), math.sin(v), math.cos(v)
        return np.array([[-ring * su, ring * cu, 0.0], [-minor * sv * cu, -minor * sv * su, minor * cv]])

    def hessian(x):
        u, v = x
        ring = major + minor * math.cos(v)
        su, cu, sv, cv = math.sin(u), math.cos(u), math.sin(v), math.cos(v)
        out = np.zeros((2, 2, 3))
        out[0, 0] = [-ring * cu, -ring * su, 0.0]
        out[0, 1] = out[1, 0] = [minor * sv * su, -minor * sv * cu, 0.0]
        out[1, 1] = [-minor * cv * cu, -minor * cv * su, -minor * sv]
        return out

    return Chart(
        name=f"torus(R={major:g},r={minor:g})",
        dim=2,
        ambient_dim=3,
        embedding=embedding,
        jacobian=jacobian,
        hessian=hessian,
        lows=(-math.pi, -math.pi),
        highs=(math.pi, math.pi),
        coordinate_names=("u", "v"),
        parameters={"major": major, "minor": minor},
    )


def torus_gaussian_curvature(chart: Chart, x: Sequence[float]) -> float:
    """Closed form ``cos v / (r (R + r cos v))`` for :func:`torus` charts."""
    major, minor = chart.parameters["major"], chart.parameters["minor"]
    v = float(x[1])
    return math.cos(v) / (minor * (major + minor * math.cos(v)))


def cylinder(radius: float = 1.0, height: float = 10.0) -> Chart:
    """``(R cos f, R sin f, z)``; flat intrinsically, curved extrinsically."""
    if radius <= 0:
        raise GeometryError(f"Cylinder radius must be positive, got {radius}", "cylinder")

    def embedding(x):
        f, z = x
        return np.array([radius * math.cos(f), radius * math.sin(f), z])

    def jacobian(x):
        f, _ = x
        return np.array([[-radius * math.sin(f), radius * math.cos(f), 0.0], [0.0, 0.0, 1.0]])

    def hessian(x):
        f, _ = x
        out = np.zeros((2, 2, 3))
        out[0, 0] = [-radius * math.cos(f), -radius * math.sin(f), 0.0]
        return out

    return Chart(
        name=f"cylinder(R={radius:g})",
        dim=2,
        ambient_dim=3,
        embedding=embedding,
        jacobian=jacobian,
        hessian=hessian,
        lows=(-math.pi, -height / 2),
        highs=(math.pi, height / 2),
        coordinate_names=("phi", "z"),
        parameters={"radius": radius},
    )


def cotangent(base: Chart) -> Chart:
    """Flat cotangent space ``(q^1..q^d, p_1..p_d)`` of a flat base chart."""
    if base.hessian is None or np.any(base.hessian(np.zeros(base.dim))):
        raise GeometryError("Cotangent charts are built over flat bases only", base.name)
    d = base.dim
    names = tuple(f"q{i + 1}" for i in range(d)) + tuple(f"p{i + 1}" for i in range(d))
    if d == 1:
        names = ("q", "p")
    chart = plane(2 * d, names)
    return Chart(
        name=f"cotangent({base.name})",
        dim=2 * d,
        ambient_dim=2 * d,
        embedding=chart.embedding,
        jacobian=chart.jacobian,
        hessian=chart.hessian,
        coordinate_names=names,
        parameters={"dof": float(d)},
    )


# --------------------------------------------------------------- JSON specs


ChartFamily = Literal["plane", "sphere", "sphere3", "torus", "cylinder", "cotangent"]


class ChartSpec(BaseModel):
    """Input model for chart definitions.

    Attributes:
        family: Built-in chart family.
        parameters: Family parameters (``dim``, ``radius``, ``major``, ``minor``, ``height``).
    """

    model_config = ConfigDict(extra="forbid")

    family: ChartFamily
    parameters: Dict[str, float] = Field(default_factory=dict)

    @field_validator("parameters")
    @classmethod
    def _finite(cls, value: Dict[str, float]) -> Dict[str, float]:
        for key, number in value.items():
            if not math.isfinite(number):
                raise ValueError(f"parameter {key} must be finite")
        return value


def chart_from_spec(spec: ChartSpec) -> Chart:
    """Builds the chart a validated :class:`ChartSpec` describes."""
    params = spec.parameters
    builders: Dict[str, Callable[[], Chart]] = {
        "plane": lambda: plane(int(params.get("dim", 2))),
        "sphere": lambda: sphere(params.get("radius", 1.0), params.get("guard")),
        "sphere3": lambda: three_sphere(params.get("radius", 1.0), params.get("guard", 0.3)),
        "torus": lambda: torus(params.get("major", 2.0), params.get("minor", 1.0)),
        "cylinder": lambda: cylinder(params.get("radius", 1.0), params.get("height", 10.0)),
        "cotangent": lambda: cotangent(plane(int(params.get("dim", 1)))),
    }
    return builders[spec.family]()


def load_chart(source: Any) -> Chart:
    """Loads a chart from a JSON file path or an already-parsed mapping.

    Raises:
        InputSpecError: If the file cannot be read or fails validation.
    """
    label = str(source)
    try:
        if isinstance(source, (str, Path)):
            data = json.loads(Path(source).read_text(encoding="utf-8"))
        else:
            data = dict(source)
        spec = ChartSpec.model_validate(data)
    except (OSError, json.JSONDecodeError, ValidationError, TypeError, ValueError) as e:
        raise InputSpecError("Invalid chart spec", label, e) from e
    logger.info(f"Loaded {spec.family} chart from {label}")
    return chart_from_spec(spec)
