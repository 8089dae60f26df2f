"""
Tests for the free rigid body on the bivector algebra
"""

import sys
from pathlib import Path

import numpy as np
import pytest
from scipy.integrate import solve_ivp

project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

from exceptions import InertiaError, IntegrationError
from rigid_body_sim import (
    InertiaOperator,
    RigidBodyState,
    bivector,
    bivector_coordinates,
    casimir,
    convergence_study,
    euler_rhs,
    integrate,
    lie_poisson_equations,
    poincare_convergence,
    poincare_report,
    reversal_error,
    rhs_agreement,
)

MOMENTS = (1.0, 2.0, 3.0)
L0 = (1.0, 0.5, 0.3)


class TestInertiaOperator:
    """Test inertia operators"""

    def test_principal_moments(self):
        inertia = InertiaOperator.principal(MOMENTS)
        assert inertia.moments == MOMENTS
        assert inertia.is_principal

    @pytest.mark.parametrize("moments", [(1.0, 0.0, 3.0), (1.0, -2.0, 3.0), (1.0, 2.0)])
    def test_invalid_moments_raise(self, moments):
        with pytest.raises(InertiaError):
            InertiaOperator.principal(moments)

    def test_non_symmetric_tensor_raises(self):
        with pytest.raises(InertiaError):
            InertiaOperator(np.array([[1.0, 0.5, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]]))

    def test_from_mass_samples(self):
        cloud = [[1, 0, 0], [-1, 0, 0], [0, 1, 0], [0, -1, 0]]
        inertia = InertiaOperator.from_mass_samples([1, 1, 1, 1], cloud)
        assert inertia.moments == pytest.approx((2.0, 2.0, 4.0))

    def test_mass_samples_validated(self):
        with pytest.raises(InertiaError):
            InertiaOperator.from_mass_samples([1, -1], [[1, 0, 0], [0, 1, 0]])

    def test_pairing_is_symmetric(self):
        inertia = InertiaOperator(np.array([[2.0, 0.3, 0.0], [0.3, 1.5, 0.1], [0.0, 0.1, 1.0]]))
        assert inertia.symmetry_residual() < 1e-12

    def test_energy(self):
        inertia = InertiaOperator.principal(MOMENTS)
        assert inertia.energy([1.0, 2.0, 3.0]) == pytest.approx(0.5 * (1.0 + 2.0 + 3.0))

    def test_bivector_coordinates(self):
        assert np.allclose(bivector_coordinates(bivector([0.1, -0.2, 0.3])), [0.1, -0.2, 0.3])

    def test_casimir(self):
        assert casimir([1.0, 2.0, 2.0]) == pytest.approx(9.0)


class TestEquationsOfMotion:
    """Test the equivalent right-hand sides"""

    def test_right_hand_sides_agree(self):
        agreement = rhs_agreement(L0, InertiaOperator.principal(MOMENTS))
        assert set(agreement) == {"lie_poisson", "commutator", "hamilton_form", "exact_lie_poisson"}
        assert all(value < 1e-12 for value in agreement.values())

    def test_general_tensor_agreement(self):
        inertia = InertiaOperator(np.array([[2.0, 0.3, 0.0], [0.3, 1.5, 0.1], [0.0, 0.1, 1.0]]))
        agreement = rhs_agreement(L0, inertia)
        assert "exact_lie_poisson" not in agreement
        assert max(agreement.values()) < 1e-12

    def test_euler_rhs_preserves_casimir_rate(self):
        l = np.array(L0)
        assert float(l @ euler_rhs(l, InertiaOperator.principal(MOMENTS))) == pytest.approx(0.0, abs=1e-15)

    def test_exact_equations_need_principal_axes(self):
        inertia = InertiaOperator(np.array([[2.0, 0.3, 0.0], [0.3, 1.5, 0.0], [0.0, 0.0, 1.0]]))
        with pytest.raises(InertiaError):
            lie_poisson_equations(inertia)


class TestIntegration:
    """Test RK4 integration and its diagnostics"""

    def setup_method(self):
        self.inertia = InertiaOperator.principal(MOMENTS)
        self.state = RigidBodyState.initial(L0)

    def test_short_run_passes_checks(self):
        trajectory = integrate(self.state, self.inertia, dt=1e-3, steps=1000)
        summary = trajectory.summary()
        assert summary["passed"]
        assert summary["steps"] == 1000
        assert set(summary["checks"]) == {"casimir", "energy", "spatial_momentum", "rotor_unit", "orientation"}

    def test_trajectory_rows(self):
        trajectory = integrate(self.state, self.inertia, dt=1e-2, steps=10)
        rows = trajectory.rows()
        assert len(rows) == 11
        assert list(rows[0]) == ["t", "L1", "L2", "L3", "energy", "casimir", "R0", "R_B1", "R_B2", "R_B3", "spatial_drift"]
        assert rows[0]["R0"] == pytest.approx(1.0)
        assert rows[-1]["t"] == pytest.approx(0.1)

    def test_orientation_stays_orthogonal(self):
        trajectory = integrate(self.state, self.inertia, dt=1e-2, steps=200)
        assert trajectory.orthogonality_residual() < 1e-9

    @pytest.mark.parametrize(
        "kwargs", [{"dt": 0.0, "steps": 10}, {"dt": 1e-3, "steps": 0}, {"dt": 1e-3, "steps": 10, "method": "euler"}]
    )
    def test_invalid_integration_arguments(self, kwargs):
        with pytest.raises(IntegrationError):
            integrate(self.state, self.inertia, **kwargs)

    def test_invalid_initial_state(self):
        with pytest.raises(IntegrationError):
            RigidBodyState.initial([1.0, float("nan"), 0.0])

    def test_matches_reference_solver(self):
        trajectory = integrate(self.state, self.inertia, dt=1e-3, steps=1000)
        reference = solve_ivp(
            lambda t, l: euler_rhs(l, self.inertia), (0.0, 1.0), np.array(L0), rtol=1e-12, atol=1e-12
        )
        assert np.max(np.abs(trajectory.angular_momentum[-1] - reference.y[:, -1])) < 1e-8

    def test_time_reversal(self):
        assert reversal_error(self.state, self.inertia, 1e-2, 200) < 1e-8

    def test_fourth_order_convergence(self):
        study = convergence_study(self.state, self.inertia, duration=1.0)
        assert study["errors"][0] > study["errors"][-1]
        assert all(order > 3.0 for order in study["orders"])

    def test_poincare_residuals(self):
        trajectory = integrate(self.state, self.inertia, dt=1e-3, steps=500)
        report = poincare_report(trajectory)
        assert report["passed"]
        assert set(report["residuals"]) == {"bivector", "vector", "reconstruction"}

    def test_poincare_residual_shrinks_with_step(self):
        result = poincare_convergence(self.state, self.inertia, duration=1.0)
        assert result["residuals"][0] > result["residuals"][-1]
