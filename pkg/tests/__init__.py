"""Tests for :mod:`inhibhawkes`."""
from pathlib import Path

from inhibhawkes import FeedbackSpec, InhibitionSpec, KernelSpec, ModelSpec

configs_dir = Path(__file__).parents[1] / "configs"


def polynomial_model(**changes) -> ModelSpec:
    """
    Fully coupled model with polynomial inhibition, beta = 1.

    kappa = (1.5, 0.5, 0.5, 1), mu_A = 10, mu_B = 1, indicator kernels.
    The limits are l_B = 7.844 and l_A = 2.922.
    """
    model = ModelSpec.from_kappas(
        0.8,
        (1.5, 0.5, 0.5, 1.0),
        mu_A=10,
        mu_B=1,
        phi_BA=InhibitionSpec.polynomial(tau=1, beta=1),
    )
    return model.replace(**changes) if changes else model


def exponential_model(**changes) -> ModelSpec:
    """
    Fully coupled model with exponential inhibition, tau = 0.2.

    kappa = (0.95, 1, 0.5, 1), exponential kernels.  The fixed point is
    l = 7.567, yet Phi o Phi falls below the diagonal under l.
    """
    model = ModelSpec.from_kappas(
        0.8,
        (0.95, 1.0, 0.5, 1.0),
        mu_A=10,
        mu_B=1,
        phi_BA=InhibitionSpec.exponential(tau=0.2),
        family="exponential",
    )
    return model.replace(**changes) if changes else model


def sigmoid_model(mu_A: float) -> ModelSpec:
    """Steep sigmoid inhibition switching at R = 1, with mu_B = 0."""
    return ModelSpec.from_kappas(
        0.5,
        (0.5, 0.5, 0.5, 0.5),
        mu_A=mu_A,
        mu_B=0,
        phi_BA=InhibitionSpec.sigmoid_polynomial(R=1, beta=1000),
    )


def hierarchy_model(**changes) -> ModelSpec:
    """kappa = (0.5, 0.5, 0.5, 1), whose A limits are (20, 6.667, 2.5)."""
    model = ModelSpec.from_kappas(
        0.8,
        (0.5, 0.5, 0.5, 1.0),
        mu_A=10,
        mu_B=1,
        phi_BA=InhibitionSpec.polynomial(tau=1, beta=1),
    )
    return model.replace(**changes) if changes else model


def decoupled_model(kappa1: float = 0.5, family="exponential") -> ModelSpec:
    """Self-excited populations without coupling, limits (20, 2)."""
    return ModelSpec.from_kappas(
        0.8,
        (kappa1, 0.0, 0.5, 0.0),
        mu_A=10,
        mu_B=1,
        phi_AB=FeedbackSpec.zero(),
        family=family,
    )


def poisson_model(mu_A: float = 2.0, mu_B: float = 1.0) -> ModelSpec:
    """No interactions: every neuron is a homogeneous Poisson process."""
    zero = KernelSpec.zero()
    return ModelSpec(0.8, mu_A, mu_B, zero, zero, zero, zero)
