"""
Monte Carlo level and power of :func:`inhibhawkes.stats.inhibition_test`.
"""
import pytest

from inhibhawkes import HeuristicWarning, InhibitionSpec, ModelSpec
from inhibhawkes.stats import monte_carlo_rejection_rate


def _toxin_pair():
    control = ModelSpec.from_kappas(
        0.8,
        (0.5, 0.5, 0.5, 0.0),
        mu_A=10,
        mu_B=1,
        phi_BA=InhibitionSpec.one(),
    )
    toxin = control.replace(phi_BA=InhibitionSpec.polynomial(tau=1, beta=1))
    return control, toxin


@pytest.mark.slow
def test_level():
    model = ModelSpec.from_kappas(
        0.8, (0.2, 0.0, 0.0, 0.0), mu_A=1, mu_B=0, family="exponential"
    )
    with pytest.warns(HeuristicWarning, match="T/N"):
        result = monte_carlo_rejection_rate(
            model, model, 20, 100.0, 500, 0.05, seed=2024, threads=2
        )
    assert result.n_excluded == 0
    assert 0.02 <= result.rate <= 0.09


def test_power():
    control, toxin = _toxin_pair()
    with pytest.warns(HeuristicWarning, match="T/N"):
        result = monte_carlo_rejection_rate(
            control, toxin, 5, 50.0, 100, 0.05, seed=11
        )
    assert result.rate >= 0.95


def test_power_grows_with_T():
    control, toxin = _toxin_pair()
    rates = []
    for T in (0.05, 2.0):
        result = monte_carlo_rejection_rate(
            control, toxin, 50, T, 40, 0.05, seed=3
        )
        rates.append(result.rate)
    assert rates[0] < rates[1]
