"""Tests for :class:`inhibhawkes.kernels.ModelSpec`."""
import pytest

from inhibhawkes import (
    FeedbackSpec,
    InhibitionSpec,
    KernelSpec,
    ModelDomainError,
    ModelSpec,
    kappas,
)
from tests import decoupled_model, polynomial_model


class Test_create:
    def test_basic(self):
        model = polynomial_model()
        assert model.alpha == 0.8
        assert model.mu_A == 10.0
        assert isinstance(model.mu_A, float)
        assert model.phi_AB == FeedbackSpec.identity()

    def test_defaults(self):
        zero = KernelSpec.zero()
        model = ModelSpec(0.5, 1, 1, zero, zero, zero, zero)
        assert model.phi_BA.is_one
        assert model.phi_AB.is_zero
        assert not model.has_inhibition
        assert not model.has_feedback

    def test_all_errors_reported(self):
        zero = KernelSpec.zero()
        with pytest.raises(ModelDomainError) as error:
            ModelSpec(1.5, -1.0, 0.0, zero, zero, zero, "h4")
        msg = str(error.value)
        assert "'alpha' must lie strictly between 0.0 and 1.0" in msg
        assert "'mu_A' must be >= 0.0" in msg
        assert "'h4' must be a KernelSpec" in msg

    def test_nonfinite_rate(self):
        zero = KernelSpec.zero()
        with pytest.raises(ModelDomainError, match="'mu_B' is not finite"):
            ModelSpec(0.5, 1.0, float("inf"), zero, zero, zero, zero)


class Test_from_kappas:
    def test_kernels(self):
        model = polynomial_model()
        assert model.h1 == KernelSpec.indicator(1.875)
        assert model.h2 == KernelSpec.indicator(2.5)
        assert model.h3 == KernelSpec.indicator(2.5)
        assert model.h4 == KernelSpec.indicator(1.25)

    def test_kappas(self):
        expected = pytest.approx((1.5, 0.5, 0.5, 1.0))
        assert kappas(polynomial_model()) == expected

    def test_exponential_family(self):
        model = ModelSpec.from_kappas(
            0.8, (0.95, 1.0, 0.5, 1.0), 10, 1, family="exponential"
        )
        assert model.h1 == KernelSpec.exponential(0.95 / 0.8)
        assert model.ode_reducible

    def test_zero_kappa(self):
        model = decoupled_model()
        assert model.h2.is_zero
        assert model.h4.is_zero
        assert model.kappas() == pytest.approx((0.5, 0.0, 0.5, 0.0))

    def test_erlang_refused(self):
        with pytest.raises(ValueError, match="indicator or exponential"):
            ModelSpec.from_kappas(0.5, (0.5,) * 4, 1, 1, family="erlang")

    def test_wrong_count(self):
        with pytest.raises(ValueError, match="expected 4 kappa values"):
            ModelSpec.from_kappas(0.5, (0.5, 0.5), 1, 1)

    def test_negative(self):
        with pytest.raises(ModelDomainError, match=">= 0"):
            ModelSpec.from_kappas(0.5, (0.5, -0.5, 0.5, 0.5), 1, 1)


class Test_intensities:
    def test_lambda_A(self):
        model = polynomial_model()
        assert model.lambda_A(2.0, 3.0) == pytest.approx(12.0 / 4.0)

    def test_lambda_B(self):
        model = polynomial_model()
        assert model.lambda_B(2.0, 3.0) == pytest.approx(1.0 + 2.0 + 3.0)

    def test_linear_feedback(self):
        model = polynomial_model(phi_AB=FeedbackSpec.linear(2.0))
        assert model.lambda_B(0.0, 3.0) == pytest.approx(7.0)


class Test_properties:
    def test_coupling(self):
        model = polynomial_model()
        assert model.has_inhibition
        assert model.has_feedback
        assert not model.ode_reducible
        assert not model.outside_theory

    def test_outside_theory(self):
        model = polynomial_model(phi_BA=InhibitionSpec.indicator(R=1.0))
        assert model.outside_theory

    def test_replace(self):
        model = polynomial_model()
        changed = model.replace(mu_A=3.0)
        assert changed.mu_A == 3.0
        assert model.mu_A == 10.0
        assert changed.h1 == model.h1

    def test_replace_checked(self):
        with pytest.raises(ModelDomainError):
            polynomial_model().replace(alpha=0.0)

    def test_dict(self):
        model = polynomial_model(phi_AB=FeedbackSpec.linear(0.5))
        assert ModelSpec.from_dict(model.to_dict()) == model

    def test_hashable(self):
        assert len({polynomial_model(), polynomial_model()}) == 1
