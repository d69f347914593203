"""Tests for :func:`inhibhawkes.longtime.limit_hierarchy`."""
import pytest

from inhibhawkes import InhibitionSpec, ModelSpec
from inhibhawkes.longtime import limit_hierarchy
from tests import exponential_model, hierarchy_model, polynomial_model


class Test_limit_hierarchy:
    def test_values(self):
        result = limit_hierarchy(hierarchy_model())
        assert result.as_tuple() == pytest.approx((20.0, 20 / 3, 2.5))
        assert result.ordered
        assert not result.collapsed
        assert result.reasons == {}

    def test_no_inhibition_collapses(self):
        result = limit_hierarchy(hierarchy_model(phi_BA=InhibitionSpec.one()))
        assert result.as_tuple() == pytest.approx((20.0, 20.0, 20.0))
        assert result.collapsed
        assert result.ordered is False

    def test_a_supercritical_alone(self):
        # inhibition keeps A finite although kappa1 >= 1
        result = limit_hierarchy(polynomial_model())
        assert result.ell_I is None
        assert result.reasons["ell_I"] == "kappa1 >= 1"
        assert result.ell_II == pytest.approx(20.0)
        assert result.ell_III == pytest.approx(2.922, abs=1e-3)
        assert result.ordered is None

    def test_assumption_fails(self):
        result = limit_hierarchy(exponential_model())
        assert result.ell_III is None
        assert result.reasons["ell_III"] == "assumption U NumericallyFails"

    def test_b_supercritical(self):
        model = ModelSpec.from_kappas(0.8, (0.5, 0.5, 1.5, 1.0), 10, 1)
        result = limit_hierarchy(model)
        assert result.ell_I == pytest.approx(20.0)
        assert result.ell_II is result.ell_III is None
        assert result.reasons["ell_II"] == "kappa3 >= 1"

    @pytest.mark.parametrize("kappa1", [0.1, 0.3, 0.6, 0.9])
    @pytest.mark.parametrize("kappa2", [0.2, 0.8])
    @pytest.mark.parametrize("beta", [0.5, 1.0])
    def test_strictly_ordered(self, kappa1, kappa2, beta):
        model = ModelSpec.from_kappas(
            0.8,
            (kappa1, kappa2, 0.5, 1.0),
            mu_A=10,
            mu_B=1,
            phi_BA=InhibitionSpec.polynomial(tau=1, beta=beta),
        )
        result = limit_hierarchy(model)
        ell_I, ell_II, ell_III = result.as_tuple()
        assert ell_I > ell_II > ell_III

    def test_to_dict(self):
        result = limit_hierarchy(hierarchy_model()).to_dict()
        assert set(result) == {
            "ell_I",
            "ell_II",
            "ell_III",
            "collapsed",
            "ordered",
            "reasons",
        }
