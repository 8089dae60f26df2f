"""Component fields over a chart: forms and tangent multivector fields.

A field of grade ``r`` maps intrinsic coordinates to ``{mask: value}``,
bit ``i`` of ``mask`` standing for ``dx^i`` (forms) or ``xi_i``
(multivector fields), indices ascending.
"""

from dataclasses import dataclass
from itertools import combinations
from typing import Callable, Dict, Iterable, List, Optional, Sequence

import numpy as np

from multivector_core import mask_of, popcount
from settings import settings_manager

Components = Dict[int, float]


@dataclass(frozen=True)
class ComponentField:
    """Homogeneous field of grade ``grade`` on a ``dim``-dimensional chart."""

    dim: int
    grade: int
    components: Callable[[np.ndarray], Components]
    label: str = ""

    def __call__(self, x: Sequence[float]) -> Components:
        values = self.components(np.asarray(x, dtype=float))
        return {m: float(v) for m, v in values.items() if v}

    def derivative(self, x: Sequence[float], index: int, step: Optional[float] = None) -> Components:
        """``d_index`` of every component by five-point central differences (exact up to quartics)."""
        h = step if step is not None else settings_manager.get("numerics.fd_step_first", 1e-5)
        point = np.asarray(x, dtype=float)
        shift = np.zeros(self.dim)
        shift[index] = h
        return combine(
            [
                (self(point + shift), 8.0 / (12 * h)),
                (self(point - shift), -8.0 / (12 * h)),
                (self(point + 2 * shift), -1.0 / (12 * h)),
                (self(point - 2 * shift), 1.0 / (12 * h)),
            ]
        )


def combine(terms: Iterable) -> Components:
    """Linear combination ``sum c_k f_k`` of component dictionaries."""
    out: Components = {}
    for values, factor in terms:
        for mask, value in values.items():
            out[mask] = out.get(mask, 0.0) + factor * value
    return out


def max_abs(values: Components) -> float:
    return max((abs(v) for v in values.values()), default=0.0)


def masks_of_grade(dim: int, grade: int) -> List[int]:
    return [mask_of(c) for c in combinations(range(dim), grade)]


def constant_field(dim: int, grade: int, values: Components, label: str = "") -> ComponentField:
    frozen = dict(values)
    return ComponentField(dim, grade, lambda x: frozen, label)


def scalar_field(dim: int, function: Callable[[np.ndarray], float], label: str = "") -> ComponentField:
    return ComponentField(dim, 0, lambda x: {0: float(function(x))}, label)


def vector_field(dim: int, function: Callable[[np.ndarray], Sequence[float]], label: str = "") -> ComponentField:
    return ComponentField(dim, 1, lambda x: {1 << i: float(v) for i, v in enumerate(function(x))}, label)


def vector_components(field: ComponentField, x: Sequence[float]) -> np.ndarray:
    values = field(x)
    return np.array([values.get(1 << i, 0.0) for i in range(field.dim)])


def random_polynomial_field(
    dim: int, grade: int, rng: np.random.Generator, degree: int = 2, label: str = ""
) -> ComponentField:
    """Field whose components are random polynomials of total degree at most 2."""
    masks = masks_of_grade(dim, grade)
    constants = rng.normal(size=len(masks))
    linear = rng.normal(size=(len(masks), dim)) if degree >= 1 else np.zeros((len(masks), dim))
    quadratic = rng.normal(size=(len(masks), dim, dim)) * 0.5 if degree >= 2 else np.zeros((len(masks), dim, dim))

    def components(x: np.ndarray) -> Components:
        return {
            m: float(constants[k] + linear[k] @ x + x @ quadratic[k] @ x)
            for k, m in enumerate(masks)
        }

    return ComponentField(dim, grade, components, label or f"random grade-{grade}")


def permutation_sign(sequence: Sequence[int]) -> int:
    """Sign that sorts ``sequence``; ``0`` if an index repeats."""
    if len(set(sequence)) != len(sequence):
        return 0
    inversions = sum(1 for i in range(len(sequence)) for j in range(i + 1, len(sequence)) if sequence[i] > sequence[j])
    return -1 if inversions & 1 else 1


def ordered_component(values: Components, sequence: Sequence[int]) -> float:
    """Component ``w_{i1..ir}`` for an arbitrary index order."""
    sign = permutation_sign(sequence)
    if sign == 0:
        return 0.0
    return sign * values.get(mask_of(sequence), 0.0)


def grade_of(mask: int) -> int:
    return popcount(mask)
