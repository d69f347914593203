"""
Running convolution accumulators for the particle simulator.

For a kernel h and a sequence of event times t_j, an accumulator maintains

    S(t) = sum_j h(t - t_j)

so that it can be queried at non-decreasing times in constant (or small)
time, whatever the length of the history.

"""
import math
from collections import deque
from typing import Iterable, List, Tuple

from .kernels import KernelFamily, KernelSpec, ModelSpec


class _ZeroAccumulator:
    def value(self, t: float) -> float:
        return 0.0

    def bound(self, t: float) -> float:
        return 0.0

    def add(self, t: float) -> None:
        pass


class _ExponentialAccumulator:
    """A single decaying scalar."""

    def __init__(self, theta: float):
        self.theta = theta
        self._sum = 0.0
        self._t_ref = 0.0

    def value(self, t: float) -> float:
        if self._sum == 0.0:
            return 0.0
        return self._sum * math.exp((self._t_ref - t) / self.theta)

    bound = value

    def add(self, t: float) -> None:
        self._sum = self.value(t) + 1.0
        self._t_ref = t


class _IndicatorAccumulator:
    """The events still inside the window [t - theta, t]."""

    def __init__(self, theta: float):
        self.theta = theta
        self._times = deque()

    def value(self, t: float) -> float:
        times = self._times
        horizon = t - self.theta
        while times and times[0] < horizon:
            times.popleft()
        return float(len(times))

    bound = value

    def add(self, t: float) -> None:
        self._times.append(t)


class _ErlangAccumulator:
    """
    Erlang kernel exp(-u/theta) u**n / n!, kept as n+1 partial sums.

    S_k(t) = sum_j exp(-(t - t_j)/theta) (t - t_j)**k / k!, for k = 0..n.
    Moving the reference time forward by d mixes them binomially:
    S_k(t + d) = exp(-d/theta) sum_{m <= k} S_m(t) d**(k-m) / (k-m)!
    The kernel value is S_n.
    """

    def __init__(self, kernel: KernelSpec):
        self.theta = kernel.theta
        self.n = kernel.n
        self.peak_time = kernel.peak_time()
        self.peak_value = kernel.sup_norm()
        self._sums = [0.0] * (self.n + 1)
        self._t_ref = 0.0
        # events still before their kernel peak
        self._rising = deque()

    def _advanced(self, t: float) -> List[float]:
        delta = t - self._t_ref
        if delta == 0.0:
            return list(self._sums)
        decay = math.exp(-delta / self.theta)
        powers = [1.0]
        for k in range(1, self.n + 1):
            powers.append(powers[-1] * delta / k)
        sums = self._sums
        return [
            decay * sum(sums[m] * powers[k - m] for m in range(k + 1))
            for k in range(self.n + 1)
        ]

    def value(self, t: float) -> float:
        return self._advanced(t)[-1]

    def bound(self, t: float) -> float:
        # Events past their peak only decrease from here, the others are
        # bounded by the kernel maximum.
        rising = self._rising
        horizon = t - self.peak_time
        while rising and rising[0] <= horizon:
            rising.popleft()
        return self.value(t) + self.peak_value * len(rising)

    def add(self, t: float) -> None:
        sums = self._advanced(t)
        sums[0] += 1.0
        self._sums = sums
        self._t_ref = t
        if self.n > 0:
            self._rising.append(t)


def make_accumulator(kernel: KernelSpec):
    """An empty accumulator for the given kernel."""
    family = kernel.family
    if family is KernelFamily.ZERO:
        return _ZeroAccumulator()
    if family is KernelFamily.EXPONENTIAL:
        return _ExponentialAccumulator(kernel.theta)
    if family is KernelFamily.INDICATOR:
        return _IndicatorAccumulator(kernel.theta)
    if kernel.n == 0:
        return _ExponentialAccumulator(kernel.theta)
    return _ErlangAccumulator(kernel)


class IntensityState:
    """
    The accumulated activities x1..x4 of an N-particle system.

    x1 and x4 sum the A events through h1 and h4, x2 and x3 the B events
    through h2 and h3, all divided by the total number of neurons N.
    Queries must be made at non-decreasing times, and events recorded in
    time order.

    Parameters
    ----------
    model : ModelSpec
        the model
    N : int
        total number of neurons
    """

    def __init__(self, model: ModelSpec, N: int):  # noqa: D107
        self.model = model
        self.scale = 1.0 / N
        self._acc = [make_accumulator(kernel) for kernel in model.kernels]

    def record(self, t: float, population: int) -> None:
        """Record one event of population 0 (A) or 1 (B) at time t."""
        acc = self._acc
        if population == 0:
            acc[0].add(t)
            acc[3].add(t)
        else:
            acc[1].add(t)
            acc[2].add(t)

    def activities(self, t: float) -> Tuple[float, float, float, float]:
        """(x1, x2, x3, x4) at time t."""
        scale = self.scale
        return tuple(scale * acc.value(t) for acc in self._acc)

    def intensity(self, t: float, population: int) -> float:
        """Per-neuron intensity of a population at time t."""
        model = self.model
        acc = self._acc
        scale = self.scale
        if population == 0:
            return model.lambda_A(
                scale * acc[0].value(t), scale * acc[1].value(t)
            )
        return model.lambda_B(scale * acc[2].value(t), scale * acc[3].value(t))

    def intensities(self, t: float) -> Tuple[float, float]:
        """(lambda_A, lambda_B) at time t."""
        x1, x2, x3, x4 = self.activities(t)
        model = self.model
        return model.lambda_A(x1, x2), model.lambda_B(x3, x4)

    def dominating(self, t: float) -> Tuple[float, float]:
        """
        Per-neuron rates bounding each population's intensity after t.

        Valid from t until the next recorded event.  The inhibition factor
        is bounded by 1, so that A's bound only needs x1.
        """
        model = self.model
        acc = self._acc
        scale = self.scale
        bound_A = model.mu_A + scale * acc[0].bound(t)
        bound_B = (
            model.mu_B
            + scale * acc[2].bound(t)
            + model.phi_AB(scale * acc[3].bound(t))
        )
        return bound_A, bound_B


def activities_from_history(
    model: ModelSpec,
    N: int,
    times: Iterable[float],
    populations: Iterable[int],
    t: float,
) -> Tuple[float, float, float, float]:
    """
    Recompute (x1, x2, x3, x4) at time t by direct summation.

    Only events at or before t are counted.
    """
    h1, h2, h3, h4 = model.kernels
    x = [0.0, 0.0, 0.0, 0.0]
    for event_time, population in zip(times, populations):
        if event_time > t:
            continue
        age = t - event_time
        if population == 0:
            x[0] += h1(age)
            x[3] += h4(age)
        else:
            x[1] += h2(age)
            x[2] += h3(age)
    return tuple(value / N for value in x)
