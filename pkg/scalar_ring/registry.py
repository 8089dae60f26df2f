"""Variable registries and Gaussian-rational conversions.

A registry fixes the ordered set of commuting variables a polynomial may
use. Registries are immutable and compare by their variable names, so two
sessions that register the same names share one sympy ring.
"""

import logging
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Tuple, Union

from sympy import Symbol
from sympy.polys.domains import QQ, QQ_I
from sympy.polys.rings import PolyRing

from exceptions import RegistryError

logger = logging.getLogger(__name__)

RationalLike = Union[int, Fraction]
GaussianPair = Tuple[Fraction, Fraction]


@lru_cache(maxsize=4096)
def to_gaussian(re: Fraction, im: Fraction = Fraction(0)):
    """Builds a ``QQ_I`` element from exact real and imaginary parts."""
    re, im = Fraction(re), Fraction(im)
    return QQ_I(QQ(re.numerator, re.denominator), QQ(im.numerator, im.denominator))


def from_gaussian(value) -> GaussianPair:
    """Splits a ``QQ_I`` element into a pair of Fractions."""
    return (
        Fraction(int(value.x.numerator), int(value.x.denominator)),
        Fraction(int(value.y.numerator), int(value.y.denominator)),
    )


def gaussian_inverse(value):
    """Exact reciprocal of a nonzero Gaussian rational."""
    re, im = from_gaussian(value)
    norm = re * re + im * im
    if norm == 0:
        raise ZeroDivisionError("Gaussian rational zero has no inverse")
    return to_gaussian(re / norm, -im / norm)


def parse_rational(text: str) -> Fraction:
    """Parses the canonical ``"num/den"`` form (a bare integer is accepted)."""
    return Fraction(text.strip())


def format_rational(value: Fraction) -> str:
    """Formats a Fraction as ``"num/den"``, always with an explicit denominator."""
    value = Fraction(value)
    return f"{value.numerator}/{value.denominator}"


class VariableRegistry:
    """Ordered, immutable set of commuting variable names.

    Args:
        names: Variable names in their canonical order.

    Raises:
        RegistryError: If a name is duplicated or empty.

    Example:
        >>> registry = VariableRegistry(["q", "p", "hbar"])
        >>> registry.index("p")
        1
    """

    __slots__ = ("_names", "_index", "_ring")

    def __init__(self, names: Iterable[str]):
        names = tuple(names)
        if not names:
            raise RegistryError("A registry needs at least one variable", "")
        for name in names:
            if not name or not isinstance(name, str):
                raise RegistryError("Variable names must be non-empty strings", repr(name))
        if len(set(names)) != len(names):
            duplicate = next(n for n in names if names.count(n) > 1)
            raise RegistryError("Duplicate variable name", duplicate)

        self._names = names
        self._index = {name: i for i, name in enumerate(names)}
        self._ring = _ring_for(names)

    @property
    def names(self) -> Tuple[str, ...]:
        return self._names

    @property
    def ring(self) -> PolyRing:
        return self._ring

    def __len__(self) -> int:
        return len(self._names)

    def __contains__(self, name: object) -> bool:
        return name in self._index

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, VariableRegistry):
            return NotImplemented
        return self._names == other._names

    def __hash__(self) -> int:
        return hash(("VariableRegistry", self._names))

    def __repr__(self) -> str:
        return f"VariableRegistry({list(self._names)!r})"

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise RegistryError("Unknown variable", name) from None

    def extended(self, names: Iterable[str]) -> "VariableRegistry":
        """Returns a registry with ``names`` appended (existing names are kept once)."""
        extra = [n for n in names if n not in self._index]
        return VariableRegistry(self._names + tuple(extra))

    # Construction helpers return PolyScalar; imported lazily to avoid a cycle.

    def zero(self):
        from .poly_scalar import PolyScalar

        return PolyScalar(self, self._ring.zero)

    def one(self):
        from .poly_scalar import PolyScalar

        return PolyScalar(self, self._ring.one)

    def constant(self, re: RationalLike = 0, im: RationalLike = 0):
        from .poly_scalar import PolyScalar

        return PolyScalar(self, self._ring.ground_new(to_gaussian(Fraction(re), Fraction(im))))

    def imaginary_unit(self):
        return self.constant(0, 1)

    def variable(self, name: str):
        from .poly_scalar import PolyScalar

        return PolyScalar(self, self._ring.gens[self.index(name)])

    def variables(self, *names: str):
        return tuple(self.variable(name) for name in names)


def default_registry() -> VariableRegistry:
    """Registry holding only the formal parameter ``t``, for constant-coefficient work."""
    return VariableRegistry(("t",))


@lru_cache(maxsize=None)
def _ring_for(names: Tuple[str, ...]) -> PolyRing:
    logger.debug(f"Creating polynomial ring over QQ_I in {names}")
    return PolyRing(tuple(Symbol(name) for name in names), QQ_I)
