"""Named bivector algebras: so(3), Lorentz, u(n) and gl(n)."""

import logging
from fractions import Fraction
from typing import List, Tuple

from multivector_core import MetricSignature, Multivector, pseudoscalar
from scalar_ring import ExactBackend

from .algebra import BivectorAlgebra, extract_structure

logger = logging.getLogger(__name__)


def _blade(signature: MetricSignature, backend: ExactBackend, i: int, j: int, coefficient=1) -> Multivector:
    return Multivector.blade(signature, backend, [i, j], coefficient)


def make_so3() -> BivectorAlgebra:
    """``B1 = s2 s3``, ``B2 = s3 s1``, ``B3 = s1 s2`` with ``B_i x B_j = -eps_ijk B_k``."""
    signature = MetricSignature.euclidean(3)
    backend = ExactBackend()
    generators = [_blade(signature, backend, 1, 2), _blade(signature, backend, 2, 0), _blade(signature, backend, 0, 1)]
    return extract_structure(generators, ("B1", "B2", "B3"), "so3")


def lorentz_sigma(signature: MetricSignature, backend: ExactBackend, mu: int, nu: int) -> Multivector:
    """``sigma_{mu nu} = (I/2)(g_mu * g_nu - g_nu * g_mu)`` with ``I`` the pseudoscalar."""
    g_mu = Multivector.generator(signature, backend, mu)
    g_nu = Multivector.generator(signature, backend, nu)
    commutator = g_mu.star(g_nu) - g_nu.star(g_mu)
    return pseudoscalar(signature, backend).star(commutator).scale(Fraction(1, 2))


def lorentz_generators(metric: str = "nonstandard") -> Tuple[MetricSignature, List[Multivector], Tuple[str, ...]]:
    """Passive boosts ``K_i = sigma_0i / 2`` and rotations ``L_i = (1/2) sum_{j<k} eps_ijk sigma_jk``."""
    signature = MetricSignature.minkowski(metric)
    backend = ExactBackend()
    sigma = {(mu, nu): lorentz_sigma(signature, backend, mu, nu) for mu in range(4) for nu in range(4) if mu != nu}
    half = Fraction(1, 2)
    boosts = [sigma[(0, i)].scale(half) for i in (1, 2, 3)]
    rotations = [sigma[(2, 3)].scale(half), sigma[(3, 1)].scale(half), sigma[(1, 2)].scale(half)]
    return signature, rotations + boosts, ("L1", "L2", "L3", "K1", "K2", "K3")


def make_lorentz(metric: str = "nonstandard") -> BivectorAlgebra:
    """Passive Lorentz algebra on ``diag(-1,1,1,1)`` (nonstandard) or ``diag(1,-1,-1,-1)``."""
    _, generators, names = lorentz_generators(metric)
    return extract_structure(generators, names, f"lorentz:{metric}")


def paired_signature(n: int, opposite: bool) -> MetricSignature:
    """``alpha_1..alpha_n, beta_1..beta_n``; ``beta`` carries the opposite metric when ``opposite``."""
    beta = -1 if opposite else 1
    names = tuple(f"a{i + 1}" for i in range(n)) + tuple(f"b{i + 1}" for i in range(n))
    label = "gl" if opposite else "u"
    return MetricSignature.diagonal([1] * n + [beta] * n, f"{label}-pairs:{n}", names)


def _paired_generators(n: int, opposite: bool) -> Tuple[MetricSignature, List[Multivector], List[str]]:
    if n < 1:
        raise ValueError(f"n must be at least 1, got {n}")
    signature = paired_signature(n, opposite)
    backend = ExactBackend()
    sign = -1 if opposite else 1
    generators: List[Multivector] = []
    names: List[str] = []
    for i in range(n):
        for j in range(i + 1, n):
            generators.append(_blade(signature, backend, i, j) + _blade(signature, backend, n + i, n + j, sign))
            names.append(f"E{i + 1}{j + 1}")
            generators.append(_blade(signature, backend, i, n + j) - _blade(signature, backend, n + i, j))
            names.append(f"F{i + 1}{j + 1}")
    diagonal = "K" if opposite else "J"
    for i in range(n):
        generators.append(_blade(signature, backend, i, n + i))
        names.append(f"{diagonal}{i + 1}")
    return signature, generators, names


def make_un(n: int) -> BivectorAlgebra:
    """u(n): ``E_ij = a_i a_j + b_i b_j``, ``F_ij = a_i b_j - b_i a_j``, ``J_i = a_i b_i``."""
    _, generators, names = _paired_generators(n, opposite=False)
    return extract_structure(generators, names, f"u{n}")


def make_gln(n: int) -> BivectorAlgebra:
    """gl(n) on opposite-metric pairs: ``E_ij = a_i a_j - b_i b_j``, ``F_ij``, ``K_i = a_i b_i``."""
    _, generators, names = _paired_generators(n, opposite=True)
    return extract_structure(generators, names, f"gl{n}")


def complex_structure(algebra: BivectorAlgebra) -> Multivector:
    """``J = sum_i a_i b_i`` of a u(n) algebra."""
    total = Multivector.zero(algebra.signature, algebra.generators[0].backend)
    for name, b in zip(algebra.names, algebra.generators):
        if name.startswith("J"):
            total = total + b
    return total


def make_algebra(name: str, n: int = 2, metric: str = "nonstandard") -> BivectorAlgebra:
    """Dispatch by name: ``so3``, ``lorentz``, ``un`` or ``gln``."""
    if name == "so3":
        return make_so3()
    if name == "lorentz":
        return make_lorentz(metric)
    if name == "un":
        return make_un(n)
    if name == "gln":
        return make_gln(n)
    raise ValueError(f"Unknown algebra {name!r}")
