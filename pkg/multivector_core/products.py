"""Blade-level product rules.

Blades are bitmasks over the generators, bit ``k`` set meaning generator
``k`` is present, in ascending order. The star product of two blades is
expanded with the generator-left rule

    s_i * X = s_i ^ X + sum_j M_ij d_j X

where ``d_j`` is the left Grassmann derivative, and associativity peels
the lowest generator off the left blade.
"""

import logging
from functools import lru_cache
from typing import Dict, List, Tuple

import numpy as np

from .signature import Entry, MetricSignature

logger = logging.getLogger(__name__)

BladeTerms = Dict[int, Entry]


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def bits(mask: int) -> List[int]:
    """Generator indices present in ``mask``, ascending."""
    out = []
    index = 0
    while mask:
        if mask & 1:
            out.append(index)
        mask >>= 1
        index += 1
    return out


def mask_of(indices) -> int:
    mask = 0
    for i in indices:
        mask |= 1 << i
    return mask


def wedge_sign(a: int, b: int) -> int:
    """Sign of ``e_a ^ e_b`` relative to ``e_(a|b)``; ``0`` when the blades overlap."""
    if a & b:
        return 0
    swaps = 0
    for j in bits(b):
        swaps += popcount(a >> (j + 1))
    return -1 if swaps & 1 else 1


def left_derivative_sign(mask: int, index: int) -> int:
    """Sign of the left derivative ``d/de_index`` acting on ``e_mask``."""
    return -1 if popcount(mask & ((1 << index) - 1)) & 1 else 1


def right_derivative_sign(mask: int, index: int) -> int:
    """Sign of the right derivative ``e_mask <- d/de_index``."""
    return -1 if popcount(mask >> (index + 1)) & 1 else 1


def _accumulate(target: BladeTerms, mask: int, value: Entry) -> None:
    total = target.get(mask, 0) + value
    if total:
        target[mask] = total
    else:
        target.pop(mask, None)


class ProductTable:
    """Memoized blade products for one signature."""

    def __init__(self, signature: MetricSignature):
        self.signature = signature
        self._cache: Dict[Tuple[int, int], BladeTerms] = {}
        self._dense = None

    def generator_left(self, index: int, mask: int) -> BladeTerms:
        """``s_index * e_mask``."""
        out: BladeTerms = {}
        sign = wedge_sign(1 << index, mask)
        if sign:
            out[mask | (1 << index)] = sign
        row = self.signature.matrix[index]
        for j in bits(mask):
            coefficient = row[j]
            if coefficient:
                _accumulate(out, mask ^ (1 << j), coefficient * left_derivative_sign(mask, j))
        return out

    def product(self, a: int, b: int) -> BladeTerms:
        """``e_a * e_b`` as ``{mask: coefficient}``."""
        key = (a, b)
        cached = self._cache.get(key)
        if cached is not None:
            return cached

        if a == 0:
            result: BladeTerms = {b: 1}
        else:
            lowest = (a & -a).bit_length() - 1
            rest = a ^ (1 << lowest)
            result = {}
            for mask, coefficient in self.product(rest, b).items():
                for out_mask, value in self.generator_left(lowest, mask).items():
                    _accumulate(result, out_mask, coefficient * value)
            # s_i ^ U = s_i * U - sum_j M_ij d_j U
            row = self.signature.matrix[lowest]
            for j in bits(rest):
                contraction = row[j]
                if not contraction:
                    continue
                factor = contraction * left_derivative_sign(rest, j)
                for mask, coefficient in self.product(rest ^ (1 << j), b).items():
                    _accumulate(result, mask, -factor * coefficient)

        self._cache[key] = result
        return result

    def dense(self) -> np.ndarray:
        """Float tensor ``T[a, b, c]`` with ``e_a * e_b = sum_c T[a, b, c] e_c``."""
        if self._dense is None:
            size = 1 << self.signature.dim
            if size > 64:
                raise ValueError(f"Dense product tensor too large for dimension {self.signature.dim}")
            tensor = np.zeros((size, size, size))
            for a in range(size):
                for b in range(size):
                    for c, value in self.product(a, b).items():
                        tensor[a, b, c] = float(value)
            self._dense = tensor
            logger.debug(f"Built dense product tensor for {self.signature.name}")
        return self._dense


@lru_cache(maxsize=64)
def _cached_table(signature: MetricSignature) -> ProductTable:
    return ProductTable(signature)


def product_table(signature: MetricSignature) -> ProductTable:
    """Shared table for exact signatures; numeric (per-point) signatures get a fresh one."""
    if signature.is_exact:
        return _cached_table(signature)
    return ProductTable(signature)


def multiplication_table(signature: MetricSignature) -> List[Tuple[int, int, BladeTerms]]:
    """Every blade pair with its product, for table dumps."""
    table = product_table(signature)
    size = 1 << signature.dim
    return [(a, b, dict(sorted(table.product(a, b).items()))) for a in range(size) for b in range(size)]
