"""Linear Hamiltonian flows generated by quadratic Hamiltonians."""

import logging
from dataclasses import dataclass
from typing import Dict, Sequence, Tuple

import numpy as np
from scipy.linalg import expm

from exceptions import PhaseSpaceError
from scalar_ring import PolyScalar

from .phase_space import HBAR, PhaseSpace

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class LinearFlow:
    """``z^a(t) = M[a, b] z^b(0)`` on the coordinates ``variables``."""

    matrix: np.ndarray
    variables: Tuple[str, ...]

    def apply(self, point: Sequence[float]) -> np.ndarray:
        point = np.asarray(point, dtype=float)
        if point.shape != (len(self.variables),):
            raise PhaseSpaceError(f"Expected a point with {len(self.variables)} coordinates")
        return self.matrix @ point

    def images(self) -> Dict[str, Dict[str, float]]:
        """Each coordinate's image as ``{name: {source name: coefficient}}``."""
        return {
            target: {source: float(self.matrix[a, b]) for b, source in enumerate(self.variables) if self.matrix[a, b]}
            for a, target in enumerate(self.variables)
        }

    def is_symplectic(self, poisson: np.ndarray, tol: float = 1e-10) -> bool:
        """``M J M^T = J``."""
        return bool(np.max(np.abs(self.matrix @ poisson @ self.matrix.T - poisson)) <= tol)


def quadratic_hessian(h: PolyScalar, ps: PhaseSpace) -> np.ndarray:
    """Constant Hessian of a quadratic Hamiltonian.

    Raises:
        PhaseSpaceError: If ``H`` involves ``hbar``, has linear terms or terms of degree above two.
    """
    h = ps.coerce(h)
    if HBAR in h.variables():
        raise PhaseSpaceError("Quadratic flow Hamiltonian must not involve hbar", HBAR)
    for exponents, _ in h.terms():
        degree = sum(exponents)
        if degree not in (0, 2):
            raise PhaseSpaceError(f"Hamiltonian {h} is not quadratic (term of degree {degree})")

    hessian = np.zeros((ps.dim, ps.dim))
    for a, row in enumerate(ps.hessian(h)):
        for b, entry in enumerate(row):
            re, im = entry.constant_value()
            if im:
                raise PhaseSpaceError(f"Hamiltonian {h} has complex coefficients")
            hessian[a, b] = float(re)
    return hessian


def hamiltonian_flow_quadratic(h: PolyScalar, t: float, ps: PhaseSpace) -> LinearFlow:
    """Flow ``exp(t J Hess H)`` of a quadratic Hamiltonian.

    Args:
        h: Quadratic polynomial in the phase-space coordinates.
        t: Flow time.
        ps: Phase space supplying ``J``.

    Returns:
        The linear map on the coordinates.

    Example:
        >>> flow = hamiltonian_flow_quadratic((p**2 + q**2) / 2, t, ps)
        >>> flow.matrix   # [[cos t, sin t], [-sin t, cos t]]
    """
    generator = ps.as_array() @ quadratic_hessian(h, ps)
    matrix = expm(float(t) * generator)
    if not np.all(np.isfinite(matrix)):
        raise PhaseSpaceError(f"Flow matrix is not finite at t={t}")
    logger.debug(f"Quadratic flow at t={t}: {matrix.tolist()}")
    return LinearFlow(matrix, ps.coordinates)
