"""
Tests for :func:`inhibhawkes.meanfield.detect_oscillation` and the
:class:`inhibhawkes.meanfield.MeanFieldTrajectory` accessors.
"""
import numpy as np
import pytest

from inhibhawkes import ModelDomainError, NumericalError
from inhibhawkes.meanfield import (
    MeanFieldTrajectory,
    OdeState,
    SolverMethod,
    detect_oscillation,
    solve,
)
from tests import decoupled_model, poisson_model, sigmoid_model


@pytest.fixture(scope="module")
def below_threshold():
    return solve(sigmoid_model(0.99), 100.0, 0.01)


@pytest.fixture(scope="module")
def above_threshold():
    return solve(sigmoid_model(1.01), 100.0, 0.01)


class Test_detect_oscillation:
    def test_constant(self):
        traj = solve(poisson_model(), 5.0, 0.01)
        report = detect_oscillation(traj, 0.5)
        assert not report.oscillating
        assert report.lower_B == report.upper_B == 1.0
        assert report.lower_A == report.upper_A == 2.0
        assert report.n_peaks == 0
        assert report.period_estimate is None

    def test_converges(self, below_threshold):
        report = detect_oscillation(below_threshold, 0.5)
        assert not report.oscillating
        assert report.relative_amplitude < 0.05

    def test_oscillates(self, above_threshold):
        report = detect_oscillation(above_threshold, 0.5)
        assert report.oscillating
        assert report.n_peaks >= 3
        assert report.lower_B < report.upper_B
        assert report.period_estimate > 0.0

    def test_threshold(self, above_threshold):
        report = detect_oscillation(above_threshold, 0.5, osc_threshold=10.0)
        assert not report.oscillating

    def test_min_peaks(self, above_threshold):
        report = detect_oscillation(above_threshold, 0.5, min_peaks=10**6)
        assert not report.oscillating

    @pytest.mark.parametrize("burn_in", [-0.1, 0.95])
    def test_bad_burn_in(self, below_threshold, burn_in):
        with pytest.raises(ModelDomainError, match="burn_in"):
            detect_oscillation(below_threshold, burn_in)

    def test_short_window(self):
        traj = solve(poisson_model(), 0.1, 0.01)
        with pytest.raises(ModelDomainError, match="at least 10"):
            detect_oscillation(traj, 0.5)

    def test_diverged(self):
        traj = solve(decoupled_model(kappa1=1.5), 100.0, 0.01)
        with pytest.raises(NumericalError, match="diverged"):
            detect_oscillation(traj, 0.5)

    def test_to_dict(self, below_threshold):
        report = detect_oscillation(below_threshold, 0.5)
        result = report.to_dict()
        assert result["oscillating"] is False
        assert set(result) == {
            "oscillating",
            "lower_B",
            "upper_B",
            "lower_A",
            "upper_A",
            "period_estimate",
            "n_peaks",
            "relative_amplitude",
        }


class Test_MeanFieldTrajectory:
    @pytest.fixture
    def traj(self):
        return MeanFieldTrajectory(
            poisson_model(),
            0.5,
            [1.0, 2.0, 4.0],
            [0.0, 1.0, 1.0],
            [0.0, 0.75, 2.25],
            [0.0, 0.25, 0.75],
            "volterra",
            1.0,
        )

    def test_grid(self, traj):
        np.testing.assert_array_equal(traj.grid, [0.0, 0.5, 1.0])
        assert len(traj) == 3
        assert traj.method is SolverMethod.VOLTERRA

    def test_final(self, traj):
        assert traj.final() == (4.0, 1.0)

    def test_at(self, traj):
        assert traj.at(0.25) == (1.5, 0.5)
        assert traj.at(1.0) == (4.0, 1.0)

    @pytest.mark.parametrize("t", [-0.1, 1.5])
    def test_at_outside(self, traj, t):
        with pytest.raises(ModelDomainError, match="outside"):
            traj.at(t)

    def test_read_only(self, traj):
        with pytest.raises(ValueError):
            traj.lambda_A[0] = 3.0

    def test_no_ode_state(self, traj):
        with pytest.raises(ValueError, match="ODE reduction"):
            traj.ode_state()

    def test_ode_state(self):
        traj = solve(decoupled_model(), 2.0, 0.01, method="ode")
        state = traj.ode_state()
        assert isinstance(state, OdeState)
        # no cross coupling in this model
        assert state.X2 == 0.0
        assert state.X1 > 0.0
        assert traj.ode_state(0) == OdeState()

    def test_repr(self, traj):
        expected = (
            "MeanFieldTrajectory(method='volterra', dt=0.5, T=1.0, points=3)"
        )
        assert repr(traj) == expected
