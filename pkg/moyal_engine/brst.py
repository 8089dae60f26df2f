"""BRST and anti-BRST charges of the extended phase space."""

import logging
from dataclasses import dataclass
from typing import Any, Dict, Optional

from multivector_core import Multivector
from scalar_ring import PolyScalar
from utils import performance_monitor

from .extended import ExtendedPhaseSpace, extended_hamiltonian, extended_poisson_bracket

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class BrstCharges:
    """``Q = y_j lambda^j`` and ``Qbar = zeta_j J^{jk} y_k``."""

    q: Multivector
    qbar: Multivector


def brst_charges(eps: ExtendedPhaseSpace) -> BrstCharges:
    names = eps.base.coordinates
    J = eps.base.poisson_matrix
    q = Multivector.zero(eps.signature, eps.backend)
    qbar = Multivector.zero(eps.signature, eps.backend)
    for j, name in enumerate(names):
        q = q + eps.lam(name).scale(eps.registry.variable(eps.auxiliary[j]))
        for k in range(eps.dim):
            if J[j][k]:
                qbar = qbar + eps.zeta(name).scale(eps.registry.variable(eps.auxiliary[k]) * J[j][k])
    return BrstCharges(q, qbar)


def brst_checks(
    eps: ExtendedPhaseSpace,
    h_extended: Optional[Multivector] = None,
    h: Optional[PolyScalar] = None,
) -> Dict[str, Any]:
    """Conservation and nilpotency brackets of the BRST charges.

    Args:
        eps: Extended phase space.
        h_extended: Extended Hamiltonian; built from ``h`` when omitted.
        h: Base Hamiltonian, used only when ``h_extended`` is omitted.

    Returns:
        ``{"passed": bool, "brackets": {name: {"value": Multivector, "vanishes": bool}}}``
        for ``{Q,H_E}``, ``{Qbar,H_E}``, ``{Q,Q}``, ``{Qbar,Qbar}`` and ``{Q,Qbar}``.
    """
    if h_extended is None:
        if h is None:
            raise ValueError("brst_checks needs h_extended or h")
        h_extended = extended_hamiltonian(h, eps)

    charges = brst_charges(eps)
    with performance_monitor("brst_checks") as metrics:
        brackets = {
            "Q,H": extended_poisson_bracket(charges.q, h_extended, eps),
            "Qbar,H": extended_poisson_bracket(charges.qbar, h_extended, eps),
            "Q,Q": extended_poisson_bracket(charges.q, charges.q, eps),
            "Qbar,Qbar": extended_poisson_bracket(charges.qbar, charges.qbar, eps),
            "Q,Qbar": extended_poisson_bracket(charges.q, charges.qbar, eps),
        }

    report = {
        name: {"value": value, "vanishes": value.is_zero} for name, value in brackets.items()
    }
    passed = all(entry["vanishes"] for entry in report.values())
    if passed:
        logger.info(f"BRST brackets vanish ({metrics['duration']:.3f}s)")
    else:
        logger.warning(f"Non-vanishing BRST brackets: {[n for n, e in report.items() if not e['vanishes']]}")
    return {"passed": passed, "brackets": report}
