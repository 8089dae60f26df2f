"""Bosonic phase spaces: coordinates, the Poisson matrix and a formal hbar."""

import logging
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import numpy as np
import sympy

from exceptions import PhaseSpaceError, RegistryError
from scalar_ring import PolyScalar, VariableRegistry

logger = logging.getLogger(__name__)

HBAR = "hbar"


def _fraction(value) -> Fraction:
    if isinstance(value, bool) or not isinstance(value, (int, Fraction)):
        raise PhaseSpaceError(f"Poisson matrix entries must be exact rationals, got {value!r}")
    return Fraction(value)


class PhaseSpace:
    """Coordinates ``z^a`` with an exact Poisson matrix ``J^{ab}``.

    The registry holds the coordinates followed by ``hbar``. ``J`` must be
    antisymmetric and invertible; in Darboux form ``J^{q^m p_m} = +1``.

    Args:
        coordinates: Coordinate names in order.
        poisson_matrix: ``J^{ab}`` rows, exact rationals.
        configuration: Names treated as positions (``q``), if any.
        momenta: Names treated as momenta (``p``), if any.
    """

    def __init__(
        self,
        coordinates: Sequence[str],
        poisson_matrix: Sequence[Sequence],
        configuration: Sequence[str] = (),
        momenta: Sequence[str] = (),
    ):
        coordinates = tuple(coordinates)
        if HBAR in coordinates:
            raise PhaseSpaceError("hbar is reserved and cannot be a coordinate", HBAR)
        n = len(coordinates)
        if n == 0 or n % 2:
            raise PhaseSpaceError(f"Phase space needs an even, positive number of coordinates, got {n}")

        rows = tuple(tuple(_fraction(v) for v in row) for row in poisson_matrix)
        if len(rows) != n or any(len(row) != n for row in rows):
            raise PhaseSpaceError(f"Poisson matrix must be {n}x{n}")
        if any(rows[a][b] != -rows[b][a] for a in range(n) for b in range(n)):
            raise PhaseSpaceError("Poisson matrix is not antisymmetric")

        self._coordinates = coordinates
        self._matrix = rows
        if self.as_sympy().det() == 0:
            raise PhaseSpaceError("Poisson matrix is degenerate")

        self._registry = VariableRegistry(coordinates + (HBAR,))
        self.configuration = tuple(configuration)
        self.momenta = tuple(momenta)
        for name in self.configuration + self.momenta:
            if name not in coordinates:
                raise PhaseSpaceError("Unknown coordinate", name)

    # ----------------------------------------------------------- constructors

    @classmethod
    def darboux(
        cls,
        dof: int,
        configuration: Optional[Sequence[str]] = None,
        momenta: Optional[Sequence[str]] = None,
    ) -> "PhaseSpace":
        """Canonical phase space ``(q^1..q^d, p_1..p_d)`` with ``J^{q^m p_m} = 1``.

        One degree of freedom uses the names ``q`` and ``p``.
        """
        if dof < 1:
            raise PhaseSpaceError(f"Degrees of freedom must be positive, got {dof}")
        if configuration is None:
            configuration = ("q",) if dof == 1 else tuple(f"q{m + 1}" for m in range(dof))
        if momenta is None:
            momenta = ("p",) if dof == 1 else tuple(f"p{m + 1}" for m in range(dof))
        if len(configuration) != dof or len(momenta) != dof:
            raise PhaseSpaceError("Need one position and one momentum name per degree of freedom")

        n = 2 * dof
        rows = [[0] * n for _ in range(n)]
        for m in range(dof):
            rows[m][dof + m] = 1
            rows[dof + m][m] = -1
        return cls(tuple(configuration) + tuple(momenta), rows, configuration, momenta)

    @classmethod
    def from_matrix(cls, coordinates: Sequence[str], poisson_matrix: Sequence[Sequence]) -> "PhaseSpace":
        """Phase space with an arbitrary antisymmetric invertible ``J``."""
        return cls(coordinates, poisson_matrix)

    # ------------------------------------------------------------- properties

    @property
    def coordinates(self) -> Tuple[str, ...]:
        return self._coordinates

    @property
    def dim(self) -> int:
        return len(self._coordinates)

    @property
    def dof(self) -> int:
        return len(self._coordinates) // 2

    @property
    def registry(self) -> VariableRegistry:
        return self._registry

    @property
    def hbar(self) -> PolyScalar:
        return self._registry.variable(HBAR)

    @property
    def poisson_matrix(self) -> Tuple[Tuple[Fraction, ...], ...]:
        return self._matrix

    def poisson(self, a: str, b: str) -> Fraction:
        """``J^{ab}`` by coordinate names."""
        return self._matrix[self.index(a)][self.index(b)]

    def index(self, name: str) -> int:
        try:
            return self._coordinates.index(name)
        except ValueError:
            raise PhaseSpaceError("Not a phase-space coordinate", name) from None

    def as_sympy(self) -> sympy.Matrix:
        return sympy.Matrix([[sympy.Rational(v.numerator, v.denominator) for v in row] for row in self._matrix])

    def as_array(self) -> np.ndarray:
        return np.array([[float(v) for v in row] for row in self._matrix])

    def symplectic_rows(self) -> Tuple[Tuple[Fraction, ...], ...]:
        """``Omega = -J^{-1}``; equals ``J`` in Darboux form."""
        inverse = self.as_sympy().inv()
        return tuple(
            tuple(-Fraction(int(inverse[a, b].p), int(inverse[a, b].q)) for b in range(self.dim))
            for a in range(self.dim)
        )

    # ---------------------------------------------------------------- values

    def variable(self, name: str) -> PolyScalar:
        self.index(name)
        return self._registry.variable(name)

    def variables(self) -> Tuple[PolyScalar, ...]:
        return tuple(self._registry.variable(name) for name in self._coordinates)

    def coerce(self, value) -> PolyScalar:
        """Brings ``value`` into this phase space's registry.

        Raises:
            PhaseSpaceError: If ``value`` uses a variable outside the phase space.
        """
        if isinstance(value, PolyScalar):
            try:
                return value.lift(self._registry)
            except RegistryError as e:
                raise PhaseSpaceError("Polynomial uses a variable outside the phase space", e.variable) from e
        if isinstance(value, (int, Fraction)) and not isinstance(value, bool):
            return self._registry.constant(Fraction(value))
        raise PhaseSpaceError(f"Cannot interpret {value!r} as a phase-space function")

    def gradient(self, f: PolyScalar) -> List[PolyScalar]:
        f = self.coerce(f)
        return [f.diff(name) for name in self._coordinates]

    def hessian(self, f: PolyScalar) -> List[List[PolyScalar]]:
        return [[g.diff(name) for name in self._coordinates] for g in self.gradient(f)]

    def hamiltonian_vector_field(self, h: PolyScalar) -> List[PolyScalar]:
        """Components ``J^{ab} d_b H``."""
        gradient = self.gradient(h)
        field = []
        for a in range(self.dim):
            component = self._registry.zero()
            for b in range(self.dim):
                if self._matrix[a][b]:
                    component = component + gradient[b] * self._matrix[a][b]
            field.append(component)
        return field

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PhaseSpace):
            return NotImplemented
        return self._coordinates == other._coordinates and self._matrix == other._matrix

    def __hash__(self) -> int:
        return hash((self._coordinates, self._matrix))

    def __repr__(self) -> str:
        return f"PhaseSpace({list(self._coordinates)!r})"
