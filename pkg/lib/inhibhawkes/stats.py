"""
Estimators and tests built on simulated spike data.

* :func:`estimate_ell` : long-time firing rate of one neuron, Z^i_T / T
* :func:`inhibition_test` : one-sided test of an inhibitive effect of B on A,
  comparing a control and a toxin recording
* :func:`chaos_experiment` : size scaling of the particle / mean-field gap
* :func:`monte_carlo_rejection_rate` : empirical level or power of the test

Batch experiments run their replicas as :mod:`dask` delayed tasks.  Each
replica seed is spawned from the batch seed, so results do not depend on
the number of workers.

"""
import logging
import math
import warnings
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

import dask
import numpy as np
from scipy.stats import norm

from ._errors import ExplosionError, HeuristicWarning, ModelDomainError
from .kernels import ModelSpec
from .meanfield import solve
from .simulate import (
    DEFAULT_DT_MAX,
    DEFAULT_EVENT_CAP,
    EventLog,
    Population,
    PopulationConfig,
    coupled_simulate,
    simulate,
)

__all__ = [
    "ChaosScalingResult",
    "CltCondition",
    "Decision",
    "MonteCarloResult",
    "TestResult",
    "chaos_experiment",
    "clt_condition",
    "estimate_ell",
    "inhibition_test",
    "monte_carlo_rejection_rate",
    "rejection_threshold",
    "spawn_seeds",
]

_LOG = logging.getLogger(__name__)

#: above this T/N ratio the normal approximation is questionable
T_OVER_N_WARNING = 0.1


class Decision(str, Enum):
    """Outcome of the inhibition test."""

    REJECT_H0 = "RejectH0"
    ACCEPT_H0 = "AcceptH0"


def spawn_seeds(seed: int, n: int) -> List[int]:
    """``n`` independent 64-bit seeds derived from one batch seed."""
    children = np.random.SeedSequence(seed).spawn(n)
    return [
        int(child.generate_state(1, dtype=np.uint64)[0]) for child in children
    ]


def _scheduler(threads: int) -> Dict[str, Any]:
    if threads is None or threads <= 1:
        return {"scheduler": "synchronous"}
    return {"scheduler": "processes", "num_workers": int(threads)}


def estimate_ell(log: EventLog, neuron: int) -> float:
    """
    Long-time intensity estimate of one neuron: its spike count over T.

    Raises
    ------
    ModelDomainError
        for a neuron id outside the log's population.
    """
    times = log.neuron_times(neuron)
    return times.size / log.T


def _subset_estimate(log: EventLog, neurons: Sequence[int]) -> float:
    return float(np.mean([estimate_ell(log, neuron) for neuron in neurons]))


def rejection_threshold(
    ell_hat_control: float, ell_hat_toxin: float, T: float, level: float
) -> float:
    """The test threshold ``sqrt((l_C + l_T) / T) * q(1 - level)``."""
    return math.sqrt((ell_hat_control + ell_hat_toxin) / T) * float(
        norm.ppf(1.0 - level)
    )


@dataclass(frozen=True)
class TestResult:
    """
    Outcome of :func:`inhibition_test`.

    ``statistic`` is ``ell_hat_control - ell_hat_toxin`` and ``threshold``
    the value of :func:`rejection_threshold`.
    """

    __test__ = False  # not a pytest class

    ell_hat_control: float
    ell_hat_toxin: float
    statistic: float
    threshold: float
    level: float
    decision: Decision
    T: float
    N: int
    neurons: Tuple[int, ...] = (0,)
    ell_hat_wash: Optional[float] = None

    def to_dict(self) -> Dict[str, Any]:  # noqa: D102
        result = dict(self.__dict__)
        result["decision"] = self.decision.value
        result["neurons"] = list(self.neurons)
        return result

    @classmethod
    def from_dict(cls, content) -> "TestResult":  # noqa: D102
        content = dict(content)
        content["decision"] = Decision(content["decision"])
        content["neurons"] = tuple(content.get("neurons", (0,)))
        return cls(**content)


def _check_level(level: float) -> None:
    if not 0.0 < level < 1.0:
        msg = f"test level must lie in (0, 1), got {level!r}."
        raise ModelDomainError(msg)


def _neuron_subset(
    neurons: Union[int, Sequence[int]], logs: Sequence[EventLog]
) -> Tuple[int, ...]:
    if isinstance(neurons, (int, np.integer)):
        if neurons < 1:
            msg = f"neuron subset size must be >= 1, got {neurons}."
            raise ModelDomainError(msg)
        neurons = tuple(range(int(neurons)))
    neurons = tuple(int(neuron) for neuron in neurons)
    for log in logs:
        for neuron in neurons:
            if log.pop.population_of(neuron) is not Population.A:
                msg = (
                    f"neuron {neuron} is not in population A "
                    f"(N_A={log.pop.N_A})."
                )
                raise ModelDomainError(msg)
    return neurons


def inhibition_test(
    control: EventLog,
    toxin: EventLog,
    level: float = 0.05,
    neurons: Union[int, Sequence[int]] = 1,
    wash: Optional[EventLog] = None,
) -> TestResult:
    """
    Test "population B has no inhibitive effect" against an inhibitive one.

    H0 is rejected when ``ell_hat_control - ell_hat_toxin`` reaches the
    threshold ``sqrt((ell_hat_control + ell_hat_toxin) / T) * q(1 - level)``,
    q being the standard normal quantile.  The test has asymptotic level
    ``level`` as N, T grow with T / N going to 0.

    Parameters
    ----------
    control, toxin : EventLog
        recordings over the same horizon, from independent seeds
    level : float
        test level, in (0, 1)
    neurons : int or sequence of int
        the population-A neurons whose estimates are averaged: a count k
        (the first k neurons) or explicit ids.  The threshold is not
        rescaled for k > 1.
    wash : EventLog, optional
        recording after washing out the toxin, reported descriptively

    Raises
    ------
    ModelDomainError
        for mismatched horizons, an invalid level, or neurons outside A.
    """
    _check_level(level)
    if control.T != toxin.T:
        msg = f"horizons differ: control T={control.T!r}, toxin T={toxin.T!r}."
        raise ModelDomainError(msg)
    logs = [control, toxin] + ([wash] if wash is not None else [])
    neurons = _neuron_subset(neurons, logs)
    T = control.T
    N = min(control.pop.N, toxin.pop.N)
    if control.pop.N != toxin.pop.N:
        _LOG.info(
            "control and toxin sizes differ: %d / %d",
            control.pop.N,
            toxin.pop.N,
        )
    if len(neurons) > 1:
        warnings.warn(
            f"averaging over {len(neurons)} neurons: the threshold is the "
            "single-neuron one.",
            category=HeuristicWarning,
        )
    if T / N > T_OVER_N_WARNING:
        warnings.warn(
            f"T/N = {T / N:.3g} exceeds {T_OVER_N_WARNING}: the normal "
            "approximation behind the threshold needs T/N small.",
            category=HeuristicWarning,
        )

    ell_control = _subset_estimate(control, neurons)
    ell_toxin = _subset_estimate(toxin, neurons)
    ell_wash = None if wash is None else _subset_estimate(wash, neurons)
    statistic = ell_control - ell_toxin
    threshold = rejection_threshold(ell_control, ell_toxin, T, level)
    reject = statistic >= threshold
    decision = Decision.REJECT_H0 if reject else Decision.ACCEPT_H0
    _LOG.debug(
        "inhibition test: R=%.6g, s_a=%.6g -> %s",
        statistic,
        threshold,
        decision.value,
    )
    return TestResult(
        ell_hat_control=ell_control,
        ell_hat_toxin=ell_toxin,
        statistic=statistic,
        threshold=threshold,
        level=float(level),
        decision=decision,
        T=T,
        N=N,
        neurons=neurons,
        ell_hat_wash=ell_wash,
    )


@dataclass(frozen=True)
class CltCondition:
    """
    The condition for the spike-count central limit theorem.

    ``max((1 + kappa1 mu_A / (1 - kappa1)) (kappa1 + kappa2),
    kappa3 + kappa4) < 1``.  Truthiness is ``holds``.
    """

    holds: bool
    value: Optional[float]
    reason: str

    def __bool__(self):  # noqa: D105
        return self.holds


def clt_condition(model: ModelSpec) -> CltCondition:
    """Evaluate the central limit condition on a model's parameters."""
    k1, k2, k3, k4 = model.kappas()
    if not k1 < 1:
        return CltCondition(False, None, f"kappa1={k1!r} >= 1")
    first = (1.0 + k1 * model.mu_A / (1.0 - k1)) * (k1 + k2)
    second = k3 + k4
    value = max(first, second)
    if value < 1:
        reason = f"max({first:.6g}, {second:.6g}) < 1"
    elif first >= 1:
        reason = (
            "(1 + kappa1 mu_A / (1 - kappa1)) (kappa1 + kappa2) = "
            f"{first:.6g} >= 1"
        )
    else:
        reason = f"kappa3 + kappa4 = {second:.6g} >= 1"
    return CltCondition(value < 1, value, reason)


@dataclass
class ChaosScalingResult:
    """
    Mean sup discrepancy between particles and limit processes, per N.

    ``slope`` and ``intercept`` fit ``log(mean) = slope * log(N) +
    intercept``; both are ``None`` when some mean is zero (``degenerate``).
    ``records`` lists (N, replica, discrepancy), with NaN for an excluded
    (exploded) replica.
    """

    sizes: Tuple[int, ...]
    mean: Tuple[float, ...]
    stderr: Tuple[float, ...]
    slope: Optional[float]
    intercept: Optional[float]
    degenerate: bool
    n_excluded: int
    T: float
    seed: int
    records: List[Tuple[int, int, float]] = field(default_factory=list)

    def to_dict(self) -> Dict[str, Any]:  # noqa: D102
        result = dict(self.__dict__)
        del result["records"]
        for name in ("sizes", "mean", "stderr"):
            result[name] = list(result[name])
        return result


def _chaos_replica(model, N, T, seed, trajectory, event_cap):
    pop = PopulationConfig.for_model(model, N)
    try:
        coupled = coupled_simulate(
            model, pop, T, seed, trajectory, event_cap=event_cap
        )
    except ExplosionError as error:
        _LOG.info("replica N=%d seed=%d exploded: %s", N, seed, error)
        return None
    return coupled.mean_discrepancy()


def chaos_experiment(
    model: ModelSpec,
    pop_sizes: Sequence[int],
    T: float,
    replicas: int,
    seed: int,
    dt: float = DEFAULT_DT_MAX,
    threads: int = 1,
    event_cap: int = DEFAULT_EVENT_CAP,
) -> ChaosScalingResult:
    """
    Measure how the particle / mean-field gap shrinks with N.

    For each size, ``replicas`` coupled runs give the average over neurons
    of ``sup_t |Z^i_t - Zbar^i_t|``.  The fitted log-log slope should be
    close to -1/2.

    Raises
    ------
    ModelDomainError
        for fewer than 3 sizes, sizes not strictly increasing, or fewer
        than 5 replicas.
    NumericalError
        when the mean-field trajectory diverges before T.
    """
    sizes = tuple(int(size) for size in pop_sizes)
    if len(sizes) < 3 or any(b <= a for a, b in zip(sizes[:-1], sizes[1:])):
        msg = f"need at least 3 strictly increasing sizes, got {sizes}."
        raise ModelDomainError(msg)
    if replicas < 5:
        msg = f"need at least 5 replicas per size, got {replicas}."
        raise ModelDomainError(msg)

    trajectory = solve(model, T, dt)
    seeds = spawn_seeds(seed, len(sizes) * replicas)
    tasks = []
    keys = []
    for i_size, N in enumerate(sizes):
        for replica in range(replicas):
            replica_seed = seeds[i_size * replicas + replica]
            tasks.append(
                dask.delayed(_chaos_replica)(
                    model, N, T, replica_seed, trajectory, event_cap
                )
            )
            keys.append((N, replica))
    _LOG.info(
        "chaos experiment: %d runs over sizes %s, T=%g",
        len(tasks),
        sizes,
        T,
    )
    values = dask.compute(*tasks, **_scheduler(threads))

    records = []
    means, stderrs = [], []
    n_excluded = 0
    for N in sizes:
        found = []
        for (key_N, replica), value in zip(keys, values):
            if key_N != N:
                continue
            if value is None:
                n_excluded += 1
                records.append((N, replica, math.nan))
            else:
                found.append(value)
                records.append((N, replica, value))
        if not found:
            means.append(math.nan)
            stderrs.append(math.nan)
            continue
        found = np.asarray(found)
        means.append(float(found.mean()))
        spread = found.std(ddof=1) if found.size > 1 else 0.0
        stderrs.append(float(spread / math.sqrt(found.size)))

    means_arr = np.asarray(means)
    degenerate = bool(np.any(~(means_arr > 0)))
    slope = intercept = None
    if not degenerate:
        slope, intercept = (
            float(value)
            for value in np.polyfit(np.log(sizes), np.log(means_arr), 1)
        )
    _LOG.info("chaos experiment slope: %s", slope)
    return ChaosScalingResult(
        sizes=sizes,
        mean=tuple(means),
        stderr=tuple(stderrs),
        slope=slope,
        intercept=intercept,
        degenerate=degenerate,
        n_excluded=n_excluded,
        T=float(T),
        seed=int(seed),
        records=records,
    )


@dataclass(frozen=True)
class MonteCarloResult:
    """Repeated inhibition tests on independent control / toxin pairs."""

    rate: float
    replicas: int
    n_excluded: int
    statistics: Tuple[float, ...]
    thresholds: Tuple[float, ...]
    level: float

    def to_dict(self) -> Dict[str, Any]:  # noqa: D102
        result = dict(self.__dict__)
        result["statistics"] = list(self.statistics)
        result["thresholds"] = list(self.thresholds)
        return result


def _test_replica(
    control_model, toxin_model, N, T, seeds, level, neurons, event_cap
):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", HeuristicWarning)
        try:
            control = simulate(
                control_model,
                PopulationConfig.for_model(control_model, N),
                T,
                seeds[0],
                event_cap=event_cap,
            )
            toxin = simulate(
                toxin_model,
                PopulationConfig.for_model(toxin_model, N),
                T,
                seeds[1],
                event_cap=event_cap,
            )
        except ExplosionError:
            return None
        return inhibition_test(control, toxin, level=level, neurons=neurons)


def monte_carlo_rejection_rate(
    control_model: ModelSpec,
    toxin_model: ModelSpec,
    N: int,
    T: float,
    replicas: int,
    level: float,
    seed: int,
    threads: int = 1,
    neurons: Union[int, Sequence[int]] = 1,
    event_cap: int = DEFAULT_EVENT_CAP,
) -> MonteCarloResult:
    """
    Fraction of independent replicas in which the test rejects H0.

    With identical models this estimates the level of the test, otherwise
    its power.
    """
    _check_level(level)
    if replicas < 1:
        msg = f"need at least one replica, got {replicas}."
        raise ModelDomainError(msg)
    if T / N > T_OVER_N_WARNING:
        warnings.warn(
            f"T/N = {T / N:.3g} exceeds {T_OVER_N_WARNING}.",
            category=HeuristicWarning,
        )
    seeds = spawn_seeds(seed, 2 * replicas)
    tasks = [
        dask.delayed(_test_replica)(
            control_model,
            toxin_model,
            N,
            T,
            seeds[2 * i : 2 * i + 2],
            level,
            neurons,
            event_cap,
        )
        for i in range(replicas)
    ]
    results = [
        result
        for result in dask.compute(*tasks, **_scheduler(threads))
        if result is not None
    ]
    n_excluded = replicas - len(results)
    rejected = sum(
        result.decision is Decision.REJECT_H0 for result in results
    )
    rate = rejected / len(results) if results else math.nan
    _LOG.info(
        "rejection rate %.4g over %d replicas (%d excluded)",
        rate,
        len(results),
        n_excluded,
    )
    return MonteCarloResult(
        rate=rate,
        replicas=replicas,
        n_excluded=n_excluded,
        statistics=tuple(result.statistic for result in results),
        thresholds=tuple(result.threshold for result in results),
        level=float(level),
    )
