"""``rigid-body``: free rigid-body integration with conservation columns."""

from typing import Any, Dict, Optional, Sequence, Tuple

from pydantic import ValidationError

from app_types.report_types import CommandReport
from exceptions import InputSpecError
from rigid_body_sim import (
    InertiaOperator,
    RigidBodyState,
    Trajectory,
    integrate,
    poincare_report,
    reversal_error,
    rhs_agreement,
)
from settings import settings_manager

from . import BaseCommand, check, failures_from_checks
from .run_config import RigidBodyParams, RunConfig

RHS_TOLERANCE = 1e-12


def load_params(parameters: Dict[str, Any]) -> RigidBodyParams:
    try:
        return RigidBodyParams.model_validate(parameters)
    except ValidationError as e:
        raise InputSpecError("Invalid rigid-body parameters", "rigid-body", e) from e


def rigid_body_run(
    moments: Sequence[float], l0: Sequence[float], dt: Optional[float] = None, steps: Optional[int] = None
) -> Tuple[Dict[str, Any], Trajectory]:
    """Integrates one body and collects every conservation and consistency check."""
    inertia = InertiaOperator.principal(moments)
    state = RigidBodyState.initial(l0)
    dt = dt or settings_manager.get("rigid_body.dt", 1e-3)
    steps = steps or settings_manager.get("rigid_body.steps", 10000)

    trajectory = integrate(state, inertia, dt, steps)
    summary = trajectory.summary()
    poincare = poincare_report(trajectory)
    reversal = reversal_error(state, inertia, dt, steps)

    checks = dict(summary["checks"])
    for name, value in poincare["residuals"].items():
        checks[f"poincare_{name}"] = check(value, poincare["tolerance"])
    checks["reversal"] = check(reversal, settings_manager.get("tolerances.reversal", 1e-8))
    for name, value in rhs_agreement(l0, inertia).items():
        checks[f"rhs_{name}"] = check(value, RHS_TOLERANCE)

    report = {
        "moments": summary["moments"],
        "L0": [float(v) for v in l0],
        "dt": dt,
        "steps": steps,
        "checks": checks,
        "final_orientation": trajectory.orientation_matrix().tolist(),
    }
    return report, trajectory


class RigidBodyCommand(BaseCommand):
    """Command for rigid-body trajectories"""

    def __init__(self):
        super().__init__(name="rigid-body", description="Integrates a free rigid body and checks conservation laws")
        self.parameters = {
            "inertia": "float[3]",  # Principal moments
            "L0": "float[3]",  # Initial body angular momentum
            "dt": "float",
            "steps": "int",
        }

    def execute(self, config: RunConfig) -> CommandReport:
        params = load_params(config.parameters)
        report, trajectory = rigid_body_run(params.inertia, params.L0, params.dt, params.steps)
        self.logger.info(f"Rigid body with moments {params.inertia}: {report['steps']} steps")
        return self.build_report(config, report, failures_from_checks(report["checks"]), trajectory.rows())
