"""Bivector Lie algebras under the commutator product."""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, List, Sequence, Tuple

from exceptions import AlgebraClosureError, GradeError
from multivector_core import MetricSignature, Multivector, commutator_product
from utils import computation_context

from .linear import rank, solve_in_span, to_fraction

logger = logging.getLogger(__name__)

Structure = Tuple[Tuple[Tuple[Fraction, ...], ...], ...]


@dataclass(frozen=True)
class BivectorAlgebra:
    """Bivectors ``B_i`` with ``B_i x B_j = C^k_ij B_k`` and ``kappa_ij = B_i . B_j``.

    ``structure_constants[i][j][k]`` is ``C^k_ij``.
    """

    signature: MetricSignature
    generators: Tuple[Multivector, ...]
    names: Tuple[str, ...]
    structure_constants: Structure
    killing: Tuple[Tuple[Fraction, ...], ...]
    label: str = ""

    @property
    def dim(self) -> int:
        return len(self.generators)

    def generator(self, name: str) -> Multivector:
        return self.generators[self.names.index(name)]

    def structure(self, i: int, j: int) -> Dict[str, Fraction]:
        """Nonzero ``C^k_ij`` keyed by generator name."""
        return {self.names[k]: c for k, c in enumerate(self.structure_constants[i][j]) if c}

    def element(self, coordinates: Sequence[Any]) -> Multivector:
        if len(coordinates) != self.dim:
            raise AlgebraClosureError(f"Expected {self.dim} coordinates")
        total = Multivector.zero(self.signature, self.generators[0].backend)
        for c, b in zip(coordinates, self.generators):
            if c:
                total = total + b.scale(c)
        return total

    def coordinates_of(self, value: Multivector) -> List[Fraction]:
        """Exact coordinates of an algebra element.

        Raises:
            AlgebraClosureError: If ``value`` is outside the span.
        """
        solution = solve_in_span(self.generators, value)
        if solution is None:
            raise AlgebraClosureError("Element outside the algebra span", repr(value))
        return [to_fraction(s, repr(value)) for s in solution]

    def bracket_coordinates(self, a: Sequence[Fraction], b: Sequence[Fraction]) -> List[Fraction]:
        """Coordinates of ``A x B`` from those of ``A`` and ``B``."""
        out = [Fraction(0)] * self.dim
        for i, ai in enumerate(a):
            if not ai:
                continue
            for j, bj in enumerate(b):
                if not bj:
                    continue
                for k, c in enumerate(self.structure_constants[i][j]):
                    if c:
                        out[k] += ai * bj * c
        return out

    def jacobi_residuals(self) -> List[Tuple[int, int, int, Tuple[Fraction, ...]]]:
        """Nonzero ``C^m_il C^l_jk + C^m_jl C^l_ki + C^m_kl C^l_ij`` entries."""
        return jacobi_residuals(self)

    def killing_form(self) -> Tuple[Tuple[Fraction, ...], ...]:
        return self.killing

    def to_rows(self) -> Dict[str, Any]:
        """Tables for reports: generators, nonzero structure constants and Killing metric."""
        structure = []
        for i in range(self.dim):
            for j in range(self.dim):
                for k, c in enumerate(self.structure_constants[i][j]):
                    if c:
                        structure.append({"i": self.names[i], "j": self.names[j], "k": self.names[k], "value": c})
        return {
            "algebra": self.label,
            "signature": self.signature.name,
            "generators": dict(zip(self.names, self.generators)),
            "structure_constants": structure,
            "killing": [list(row) for row in self.killing],
        }


def jacobi_residuals(algebra: BivectorAlgebra) -> List[Tuple[int, int, int, Tuple[Fraction, ...]]]:
    C = algebra.structure_constants
    n = algebra.dim
    failures = []
    for i in range(n):
        for j in range(n):
            for k in range(n):
                residual = []
                for m in range(n):
                    total = Fraction(0)
                    for l in range(n):
                        total += C[j][k][l] * C[i][l][m] + C[k][i][l] * C[j][l][m] + C[i][j][l] * C[k][l][m]
                    residual.append(total)
                if any(residual):
                    failures.append((i, j, k, tuple(residual)))
    return failures


def killing_metric(generators: Sequence[Multivector]) -> Tuple[Tuple[Fraction, ...], ...]:
    """``kappa_ij = <B_i * B_j>_0`` for exact real generators."""
    rows = []
    for a in generators:
        row = []
        for b in generators:
            re, im = a.star(b).scalar_part().constant_value()
            if im:
                raise AlgebraClosureError("Killing metric entry is not real")
            row.append(re)
        rows.append(tuple(row))
    return tuple(rows)


def extract_structure(
    generators: Sequence[Multivector], names: Sequence[str] = (), label: str = ""
) -> BivectorAlgebra:
    """Solves ``B_i x B_j = C^k_ij B_k`` exactly.

    Args:
        generators: Linearly independent exact bivectors with constant coefficients.
        names: Generator names (default ``B1..Bn``).
        label: Algebra label for reports.

    Returns:
        The algebra with structure constants and Killing metric.

    Raises:
        GradeError: If a generator is not a bivector.
        AlgebraClosureError: If the generators are dependent or a product leaves their span.
    """
    generators = tuple(generators)
    if not generators:
        raise AlgebraClosureError("An algebra needs at least one generator")
    names = tuple(names) or tuple(f"B{i + 1}" for i in range(len(generators)))
    if len(names) != len(generators):
        raise AlgebraClosureError("Generator name count does not match")
    signature = generators[0].signature
    for name, b in zip(names, generators):
        if b.is_zero or b.grades() != (2,):
            raise GradeError(f"Generator {name} is not a nonzero bivector", b.grades())
        if not b.backend.is_exact:
            raise AlgebraClosureError(f"Generator {name} needs exact coefficients")

    with computation_context(label or signature.name, "structure extraction"):
        if rank(generators) != len(generators):
            raise AlgebraClosureError("Generators are linearly dependent")

        n = len(generators)
        table: List[List[Tuple[Fraction, ...]]] = [[() for _ in range(n)] for _ in range(n)]
        for i in range(n):
            table[i][i] = tuple(Fraction(0) for _ in range(n))
            for j in range(i + 1, n):
                product = commutator_product(generators[i], generators[j])
                solution = solve_in_span(generators, product)
                if solution is None:
                    raise AlgebraClosureError("Commutator leaves the generator span", f"{names[i]} x {names[j]}")
                row = tuple(to_fraction(s, f"{names[i]} x {names[j]}") for s in solution)
                table[i][j] = row
                table[j][i] = tuple(-c for c in row)
                logger.debug(f"{names[i]} x {names[j]} = {dict(zip(names, row))}")

        algebra = BivectorAlgebra(
            signature=signature,
            generators=generators,
            names=names,
            structure_constants=tuple(tuple(row) for row in table),
            killing=killing_metric(generators),
            label=label,
        )
    logger.info(f"Extracted {label or 'algebra'} of dimension {n}")
    return algebra
