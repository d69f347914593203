"""
Tests for :func:`inhibhawkes.utils.model_errors`
"""
import pytest

from inhibhawkes import InhibitionSpec, KernelSpec
from inhibhawkes.utils import model_errors
from tests import polynomial_model


def _params(**changes):
    zero = KernelSpec.zero()
    params = dict(
        alpha=0.5, mu_A=1.0, mu_B=1.0, h1=zero, h2=zero, h3=zero, h4=zero
    )
    params.update(changes)
    return params


class TestModelErrors_Okay:
    def test_noerrors_model(self):
        assert model_errors(polynomial_model()) == []

    def test_noerrors_mapping(self):
        assert model_errors(_params()) == []

    def test_noerrors_with_rate_functions(self):
        params = _params(phi_BA=InhibitionSpec.exponential(tau=1.0))
        assert model_errors(params) == []

    def test_zero_rates(self):
        assert model_errors(_params(mu_A=0, mu_B=0)) == []


class TestModelErrors_Numbers:
    @pytest.mark.parametrize("alpha", [0.0, 1.0, -0.2, 7])
    def test_alpha_range(self, alpha):
        errors = model_errors(_params(alpha=alpha))
        assert errors == [
            "'alpha' must lie strictly between 0.0 and 1.0, "
            f"got {alpha!r}."
        ]

    def test_negative_rate(self):
        errors = model_errors(_params(mu_B=-1.0))
        assert errors == ["'mu_B' must be >= 0.0, got -1.0."]

    def test_nan_rate(self):
        errors = model_errors(_params(mu_A=float("nan")))
        assert errors == ["'mu_A' is not finite : nan."]

    def test_not_a_number(self):
        errors = model_errors(_params(mu_A="fast"))
        assert errors == ["'mu_A' is not a number : 'fast'."]

    def test_numeric_string(self):
        assert model_errors(_params(mu_A="2.5")) == []


class TestModelErrors_Types:
    def test_bad_kernel(self):
        errors = model_errors(_params(h3=1.0))
        assert errors == ["'h3' must be a KernelSpec, got float : 1.0."]

    def test_bad_inhibition(self):
        errors = model_errors(_params(phi_BA=KernelSpec.zero()))
        assert errors == [
            "'phi_BA' must be a InhibitionSpec, got KernelSpec : "
            "KernelSpec.zero()."
        ]

    def test_missing(self):
        params = _params()
        del params["h2"]
        del params["alpha"]
        errors = model_errors(params)
        assert errors == ["'alpha' is missing.", "'h2' is missing."]

    def test_multiple(self):
        errors = model_errors(_params(alpha=2.0, mu_A=-1.0, h1=None))
        assert len(errors) == 3
