"""Inertia operator on the so(3) bivector algebra."""

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Sequence, Tuple

import numpy as np

from exceptions import InertiaError
from lie_rotor import BivectorAlgebra, make_so3
from multivector_core import Multivector, inner
from scalar_ring import FloatBackend

logger = logging.getLogger(__name__)


@lru_cache(maxsize=1)
def so3() -> BivectorAlgebra:
    """``B1 = s2 s3``, ``B2 = s3 s1``, ``B3 = s1 s2``."""
    return make_so3()


@lru_cache(maxsize=1)
def bivector_basis() -> np.ndarray:
    """Dense images of ``B1, B2, B3``; row ``i`` is ``B_i`` as a length-8 array."""
    return np.array([b.to_float().to_dense() for b in so3().generators])


@lru_cache(maxsize=1)
def structure_tensor() -> np.ndarray:
    """``C[i, j, k] = C^k_ij`` as floats."""
    return np.array([[[float(c) for c in row] for row in block] for block in so3().structure_constants])


def bivector(coordinates: Sequence[float]) -> Multivector:
    """Float bivector ``sum_i c_i B_i``."""
    signature = so3().signature
    return Multivector.from_dense(signature, np.asarray(coordinates, dtype=float) @ bivector_basis())


def bivector_coordinates(value: Multivector) -> np.ndarray:
    """Coordinates of the bivector part of a float multivector in ``B1, B2, B3``."""
    return bivector_basis() @ value.to_dense()


def cross(a: Sequence[float], b: Sequence[float]) -> np.ndarray:
    """Coordinates of the commutator product ``A x B``."""
    return np.einsum("i,j,ijk->k", np.asarray(a, dtype=float), np.asarray(b, dtype=float), structure_tensor())


@dataclass(frozen=True)
class InertiaOperator:
    """Symmetric positive-definite operator ``I`` with ``L_B = I(W_B)``.

    ``tensor[i, j]`` maps the ``B_j`` coordinate of ``W_B`` to the ``B_i``
    coordinate of ``L_B``; principal axes give a diagonal tensor.

    Raises:
        InertiaError: If the tensor is not symmetric or not positive-definite.
    """

    tensor: np.ndarray

    def __post_init__(self):
        tensor = np.asarray(self.tensor, dtype=float)
        if tensor.shape != (3, 3):
            raise InertiaError(f"Inertia tensor must be 3x3, got shape {tensor.shape}")
        if not np.all(np.isfinite(tensor)):
            raise InertiaError("Inertia tensor is not finite")
        if np.max(np.abs(tensor - tensor.T)) > 1e-12 * max(1.0, np.max(np.abs(tensor))):
            raise InertiaError("Inertia tensor is not symmetric", np.diag(tensor))
        eigenvalues = np.linalg.eigvalsh(tensor)
        if eigenvalues[0] <= 0:
            raise InertiaError("Inertia tensor must be positive-definite", eigenvalues)
        object.__setattr__(self, "tensor", tensor)

    @classmethod
    def principal(cls, moments: Sequence[float]) -> "InertiaOperator":
        moments = tuple(float(m) for m in moments)
        if len(moments) != 3:
            raise InertiaError("Three principal moments are required", moments)
        if any(m <= 0 for m in moments):
            raise InertiaError("Principal moments must be positive", moments)
        return cls(np.diag(moments))

    @classmethod
    def from_mass_samples(cls, masses: Sequence[float], positions: Sequence[Sequence[float]]) -> "InertiaOperator":
        """``I(B) = sum_k m_k x_k ^ (x_k . B)`` over point masses.

        Example:
            >>> cloud = [[1, 0, 0], [-1, 0, 0], [0, 1, 0], [0, -1, 0]]
            >>> InertiaOperator.from_mass_samples([1, 1, 1, 1], cloud).moments
            (2.0, 2.0, 4.0)
        """
        signature = so3().signature
        backend = FloatBackend()
        points = np.asarray(positions, dtype=float)
        weights = np.asarray(masses, dtype=float)
        if points.ndim != 2 or points.shape[1] != 3 or len(weights) != len(points):
            raise InertiaError("Mass samples need one 3-vector per mass")
        if np.any(weights <= 0):
            raise InertiaError("Sample masses must be positive")
        tensor = np.zeros((3, 3))
        for j in range(3):
            b = bivector(np.eye(3)[j])
            image = Multivector.zero(signature, backend)
            for m, x in zip(weights, points):
                position = Multivector.vector(signature, backend, [float(c) for c in x])
                if position.is_zero:
                    continue
                contracted = inner(position, b)
                if contracted.is_zero:
                    continue
                image = image + position.wedge(contracted).scale(float(m))
            tensor[:, j] = bivector_coordinates(image) if not image.is_zero else 0.0
        logger.debug(f"Inertia from {len(weights)} mass samples: {np.diag(tensor)}")
        return cls(0.5 * (tensor + tensor.T))

    @property
    def moments(self) -> Tuple[float, ...]:
        """Principal moments in ascending order (the diagonal for principal axes)."""
        if self.is_principal:
            return tuple(float(v) for v in np.diag(self.tensor))
        return tuple(float(v) for v in np.linalg.eigvalsh(self.tensor))

    @property
    def is_principal(self) -> bool:
        off = self.tensor - np.diag(np.diag(self.tensor))
        return bool(np.max(np.abs(off)) <= 1e-12 * np.max(np.abs(self.tensor)))

    def apply(self, w: Sequence[float]) -> np.ndarray:
        """Coordinates of ``I(W)``."""
        return self.tensor @ np.asarray(w, dtype=float)

    def inverse(self, l: Sequence[float]) -> np.ndarray:
        """Coordinates of ``W = I^-1(L)``."""
        return np.linalg.solve(self.tensor, np.asarray(l, dtype=float))

    def apply_bivector(self, w: Multivector) -> Multivector:
        return bivector(self.apply(bivector_coordinates(w)))

    def pairing(self, a: Multivector, b: Multivector) -> float:
        """``reverse(A) . I(B)``."""
        return inner(a.reverse(), self.apply_bivector(b)).scalar_part().value

    def symmetry_residual(self, rng: Optional[np.random.Generator] = None, samples: int = 5) -> float:
        """``|reverse(A) . I(B) - reverse(B) . I(A)|`` on random bivectors."""
        rng = rng or np.random.default_rng(0)
        worst = 0.0
        for _ in range(samples):
            a, b = bivector(rng.normal(size=3)), bivector(rng.normal(size=3))
            worst = max(worst, abs(self.pairing(a, b) - self.pairing(b, a)))
        return worst

    def energy(self, l: Sequence[float]) -> float:
        """``H = 1/2 L . I^-1(L)``."""
        l = np.asarray(l, dtype=float)
        return 0.5 * float(l @ self.inverse(l))

    def lagrangian(self, w: Sequence[float]) -> float:
        """Reduced Lagrangian ``l(W) = 1/2 reverse(W) . I(W)``."""
        w = np.asarray(w, dtype=float)
        return 0.5 * float(w @ self.apply(w))


def casimir(l: Sequence[float]) -> float:
    """``|L_B|^2``."""
    l = np.asarray(l, dtype=float)
    return float(l @ l)
