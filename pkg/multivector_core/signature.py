"""Contraction matrices that define a star product on Grassmann generators."""

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Literal, Optional, Sequence, Tuple, Union

import numpy as np
import sympy

from exceptions import SignatureError

logger = logging.getLogger(__name__)

SignatureKind = Literal["symmetric", "antisymmetric", "general"]
Entry = Union[Fraction, float]


def _normalize_entry(value) -> Entry:
    if isinstance(value, bool):
        raise SignatureError(f"Boolean matrix entry {value!r}")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, (float, np.floating)):
        if not math.isfinite(float(value)):
            raise SignatureError(f"Non-finite matrix entry {value!r}")
        return float(value)
    if isinstance(value, np.integer):
        return Fraction(int(value))
    raise SignatureError(f"Unsupported matrix entry {value!r}")


@dataclass(frozen=True)
class MetricSignature:
    """Contraction matrix ``M_ij`` of the star product ``exp(<-d_i M_ij d_j->)``.

    ``kind`` records whether the matrix is a metric (symmetric), a
    symplectic form (antisymmetric) or a one-way pairing (general). Exact
    signatures hold Fractions; numeric signatures (chart Gram matrices)
    hold floats and only accept float coefficients.

    Example:
        >>> sig = MetricSignature.euclidean(3)
        >>> sig.dim, sig.kind
        (3, 'symmetric')
    """

    matrix: Tuple[Tuple[Entry, ...], ...]
    kind: SignatureKind = "symmetric"
    name: str = ""
    generator_names: Tuple[str, ...] = field(default=())

    def __post_init__(self):
        rows = tuple(tuple(_normalize_entry(v) for v in row) for row in self.matrix)
        dim = len(rows)
        if dim == 0:
            raise SignatureError("Signature needs at least one generator", self.name)
        if any(len(row) != dim for row in rows):
            raise SignatureError("Contraction matrix must be square", self.name)

        exact = all(isinstance(v, Fraction) for row in rows for v in row)
        if not exact:
            rows = tuple(tuple(float(v) for v in row) for row in rows)

        if self.kind == "symmetric":
            bad = any(rows[i][j] != rows[j][i] for i in range(dim) for j in range(dim))
        elif self.kind == "antisymmetric":
            bad = any(rows[i][j] != -rows[j][i] for i in range(dim) for j in range(dim))
        elif self.kind == "general":
            bad = False
        else:
            raise SignatureError(f"Unknown signature kind {self.kind!r}", self.name)
        if bad:
            raise SignatureError(f"Contraction matrix is not {self.kind}", self.name)

        names = tuple(self.generator_names) or tuple(f"e{i + 1}" for i in range(dim))
        if len(names) != dim:
            raise SignatureError("Generator name count does not match dimension", self.name)

        object.__setattr__(self, "matrix", rows)
        object.__setattr__(self, "generator_names", names)
        if not self.name:
            object.__setattr__(self, "name", f"{self.kind}:{dim}:{abs(hash(rows)) % 10**8}")

    # ----------------------------------------------------------- constructors

    @classmethod
    def from_rows(
        cls,
        rows: Sequence[Sequence],
        kind: SignatureKind = "symmetric",
        name: str = "",
        generator_names: Sequence[str] = (),
    ) -> "MetricSignature":
        return cls(tuple(tuple(row) for row in rows), kind, name, tuple(generator_names))

    @classmethod
    def diagonal(
        cls, entries: Sequence, name: str = "", generator_names: Sequence[str] = ()
    ) -> "MetricSignature":
        d = len(entries)
        rows = [[entries[i] if i == j else 0 for j in range(d)] for i in range(d)]
        return cls.from_rows(rows, "symmetric", name, generator_names)

    @classmethod
    def euclidean(cls, dim: int, generator_names: Sequence[str] = ()) -> "MetricSignature":
        names = tuple(generator_names) or tuple(f"s{i + 1}" for i in range(dim))
        return cls.diagonal([1] * dim, f"euclidean:{dim}", names)

    @classmethod
    def zero(cls, dim: int) -> "MetricSignature":
        """All contractions vanish: the star product is the wedge product."""
        return cls.diagonal([0] * dim, f"grassmann:{dim}")

    @classmethod
    def minkowski(cls, metric: str = "nonstandard") -> "MetricSignature":
        """``diag(-1, 1, 1, 1)`` (nonstandard) or ``diag(1, -1, -1, -1)`` (standard)."""
        if metric == "nonstandard":
            entries = [-1, 1, 1, 1]
        elif metric == "standard":
            entries = [1, -1, -1, -1]
        else:
            raise SignatureError(f"Unknown Minkowski metric choice {metric!r}")
        return cls.diagonal(entries, f"minkowski:{metric}", ("g0", "g1", "g2", "g3"))

    @classmethod
    def symplectic_darboux(cls, dof: int) -> "MetricSignature":
        """Antisymmetric ``Omega`` on ``(eta_1..eta_d, rho_1..rho_d)`` with ``Omega[eta_m, rho_m] = 1``."""
        dim = 2 * dof
        rows = [[0] * dim for _ in range(dim)]
        for m in range(dof):
            rows[m][dof + m] = 1
            rows[dof + m][m] = -1
        names = tuple(f"eta{m + 1}" for m in range(dof)) + tuple(f"rho{m + 1}" for m in range(dof))
        return cls.from_rows(rows, "antisymmetric", f"symplectic:{dof}", names)

    @classmethod
    def duality_pairing(cls, dof: int) -> "MetricSignature":
        """One-way pairing ``eta_m <- -> rho^m`` of a flat cotangent space."""
        dim = 2 * dof
        rows = [[0] * dim for _ in range(dim)]
        for m in range(dof):
            rows[m][dof + m] = 1
        names = tuple(f"eta{m + 1}" for m in range(dof)) + tuple(f"rho{m + 1}" for m in range(dof))
        return cls.from_rows(rows, "general", f"duality:{dof}", names)

    @classmethod
    def numeric(
        cls, matrix, name: str = "", generator_names: Sequence[str] = ()
    ) -> "MetricSignature":
        """Float symmetric signature from a numpy array, symmetrized to absorb round-off."""
        array = np.asarray(matrix, dtype=float)
        array = 0.5 * (array + array.T)
        return cls.from_rows(array.tolist(), "symmetric", name, generator_names)

    # ------------------------------------------------------------- properties

    @property
    def dim(self) -> int:
        return len(self.matrix)

    @property
    def is_exact(self) -> bool:
        return isinstance(self.matrix[0][0], Fraction)

    def entry(self, i: int, j: int) -> Entry:
        return self.matrix[i][j]

    def as_array(self) -> np.ndarray:
        return np.array([[float(v) for v in row] for row in self.matrix])

    def as_sympy(self) -> sympy.Matrix:
        if not self.is_exact:
            raise SignatureError("Numeric signature has no exact matrix", self.name)
        return sympy.Matrix(
            [[sympy.Rational(v.numerator, v.denominator) for v in row] for row in self.matrix]
        )

    def determinant(self) -> Entry:
        if self.is_exact:
            value = self.as_sympy().det()
            return Fraction(int(value.p), int(value.q))
        return float(np.linalg.det(self.as_array()))

    def is_invertible(self) -> bool:
        det = self.determinant()
        return det != 0 if self.is_exact else abs(det) > 1e-14

    def require_invertible(self, purpose: str) -> None:
        if not self.is_invertible():
            raise SignatureError(f"Degenerate contraction matrix cannot be used for {purpose}", self.name)

    def inverse_rows(self) -> Tuple[Tuple[Entry, ...], ...]:
        self.require_invertible("inversion")
        if self.is_exact:
            inverse = self.as_sympy().inv()
            return tuple(
                tuple(Fraction(int(inverse[i, j].p), int(inverse[i, j].q)) for j in range(self.dim))
                for i in range(self.dim)
            )
        return tuple(tuple(float(v) for v in row) for row in np.linalg.inv(self.as_array()))

    def __str__(self) -> str:
        return self.name
