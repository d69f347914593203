"""
Tests for :func:`inhibhawkes.longtime.classify_regime` and
:func:`inhibhawkes.longtime.check_assumption_U`.
"""
import math

import pytest

from inhibhawkes import FeedbackSpec, InhibitionSpec, ModelSpec
from inhibhawkes.longtime import (
    AssumptionU,
    PhaseTransition,
    Regime,
    Subcondition,
    check_assumption_U,
    classify_regime,
)
from tests import (
    decoupled_model,
    exponential_model,
    hierarchy_model,
    polynomial_model,
    sigmoid_model,
)


def _b_supercritical():
    return ModelSpec.from_kappas(
        0.8,
        (0.5, 0.5, 1.5, 1.0),
        mu_A=10,
        mu_B=1,
        phi_BA=InhibitionSpec.polynomial(tau=1, beta=1),
    )


class Test_check_assumption_U:
    def test_polynomial_beta1(self):
        assert check_assumption_U(polynomial_model()) is AssumptionU.PROVEN

    def test_constant_phi(self):
        assert check_assumption_U(decoupled_model()) is AssumptionU.PROVEN

    def test_exponential_contraction(self):
        model = ModelSpec.from_kappas(
            0.8,
            (0.5, 0.5, 0.5, 0.5),
            mu_A=1,
            mu_B=1,
            phi_BA=InhibitionSpec.exponential(tau=0.2),
            family="exponential",
        )
        assert check_assumption_U(model) is AssumptionU.PROVEN

    def test_exponential_fails(self):
        result = check_assumption_U(exponential_model())
        assert result is AssumptionU.NUMERICALLY_FAILS
        assert not result.holds

    def test_sigmoid(self):
        assert check_assumption_U(sigmoid_model(0.99)).holds
        assert (
            check_assumption_U(sigmoid_model(1.01))
            is AssumptionU.NUMERICALLY_FAILS
        )

    def test_not_applicable(self):
        indicator = hierarchy_model(phi_BA=InhibitionSpec.indicator(R=2.0))
        assert check_assumption_U(indicator) is AssumptionU.NOT_APPLICABLE
        assert (
            check_assumption_U(_b_supercritical())
            is AssumptionU.NOT_APPLICABLE
        )


class Test_classify_regime__full_coupling:
    def test_polynomial(self):
        report = classify_regime(polynomial_model())
        assert report.regime is Regime.FULL_COUPLED_CONVERGENT
        assert report.rule == "full_coupling.convergence"
        assert report.reason.startswith("full coupling convergence")
        assert report.kappas == pytest.approx((1.5, 0.5, 0.5, 1.0))
        assert report.ab == pytest.approx((1.0, 1.0))
        assert report.x_star == pytest.approx(1.0)
        assert report.subcondition
        assert report.uB_in_I is Subcondition.GUARANTEED
        assert report.assumption_U is AssumptionU.PROVEN
        assert report.ell == pytest.approx(7.844, abs=1e-3)
        assert report.ell_B == report.ell
        assert report.ell_A == pytest.approx(2.922, abs=1e-3)
        assert report.conjecture_convex
        # kappa1 >= 1: no threshold heuristic
        assert report.heuristic is None

    def test_exponential(self):
        report = classify_regime(exponential_model())
        assert report.regime is Regime.FULL_COUPLED_OSCILLATORY_CANDIDATE
        assert report.rule == "full_coupling.no_guarantee"
        assert report.assumption_U is AssumptionU.NUMERICALLY_FAILS
        assert report.ell == pytest.approx(7.567, abs=1e-2)
        assert report.notes[0].startswith("Phi(Phi(u)) <= u")

    @pytest.mark.parametrize(
        "mu_A, regime, heuristic",
        [
            (
                0.99,
                Regime.FULL_COUPLED_CONVERGENT,
                PhaseTransition.FIXED_POINT_EXISTS,
            ),
            (
                1.01,
                Regime.FULL_COUPLED_OSCILLATORY_CANDIDATE,
                PhaseTransition.NO_FIXED_POINT,
            ),
        ],
    )
    def test_sigmoid(self, mu_A, regime, heuristic):
        report = classify_regime(sigmoid_model(mu_A))
        assert report.regime is regime
        assert report.heuristic is heuristic
        assert report.ab == pytest.approx((0.0, 0.5))

    def test_b_supercritical(self):
        report = classify_regime(_b_supercritical())
        assert report.rule == "full_coupling.b_supercritical"
        assert report.regime is Regime.FULL_COUPLED_B_SUPER_A_KILLED
        assert report.limits == (0.0, math.inf)
        assert report.ab is None

    def test_no_drive(self):
        report = classify_regime(hierarchy_model(mu_A=0.0))
        assert report.rule == "full_coupling.a_undriven"
        assert report.regime is Regime.FULL_COUPLED_CONVERGENT
        assert report.limits == pytest.approx((0.0, 2.0))

    def test_indicator(self):
        model = hierarchy_model(phi_BA=InhibitionSpec.indicator(R=2.0))
        report = classify_regime(model)
        assert report.regime is Regime.OUTSIDE_THEORY
        assert report.rule == "outside.discontinuous"
        assert report.reason == "discontinuous inhibition"
        assert report.limits is None
        assert report.heuristic is not None

    def test_b_supercritical_undriven(self):
        report = classify_regime(_b_supercritical().replace(mu_B=0.0))
        assert report.regime is Regime.OUTSIDE_THEORY
        assert report.rule == "outside.b_supercritical_undriven"
        assert report.reason == "population B supercritical, no own drive"


class Test_classify_regime__partial_coupling:
    def test_decoupled(self):
        report = classify_regime(decoupled_model())
        assert report.regime is Regime.DECOUPLED_BOTH_SUB
        assert report.rule == "decoupled"
        assert report.limits == pytest.approx((20.0, 2.0))

    def test_decoupled_a_super(self):
        report = classify_regime(decoupled_model(kappa1=1.5))
        assert report.regime is Regime.DECOUPLED_A_SUPER
        assert report.limits[0] == math.inf
        assert report.limits[1] == pytest.approx(2.0)

    def test_inhibition_only(self):
        report = classify_regime(hierarchy_model(phi_AB=FeedbackSpec.zero()))
        assert report.regime is Regime.INHIB_ONLY_SUB
        assert report.rule == "inhibition_only.b_subcritical"
        assert report.limits == pytest.approx((20 / 3, 2.0))
        assert report.subcondition

    def test_inhibition_only_b_super(self):
        model = _b_supercritical().replace(phi_AB=FeedbackSpec.zero())
        report = classify_regime(model)
        assert report.regime is Regime.INHIB_ONLY_B_SUPER_A_KILLED
        assert report.limits == (0.0, math.inf)

    def test_feedback_only(self):
        report = classify_regime(hierarchy_model(phi_BA=InhibitionSpec.one()))
        assert report.regime is Regime.FEEDBACK_ONLY_SUB
        assert report.rule == "feedback_only"
        # B is driven by mu_B + kappa4 * 20
        assert report.limits == pytest.approx((20.0, 42.0))


class Test_LongTimeReport:
    def test_to_dict(self):
        result = classify_regime(polynomial_model()).to_dict()
        assert result["regime"] == "FullCoupledConvergent"
        assert result["assumption_U"] == "Proven"
        assert result["uB_in_I"] == "Guaranteed"
        assert result["heuristic"] is None
        assert isinstance(result["kappas"], list)
        assert isinstance(result["notes"], list)
        assert result["tolerances"]["u_grid_points"] == 10_000
        assert result["rule"] == "full_coupling.convergence"
        assert result["reason"].startswith("full coupling convergence")
