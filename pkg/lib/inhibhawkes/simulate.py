"""
Exact simulation of the N-particle system, by thinning.

Neuron i spikes at the atoms (t, z) of its Poisson measure that fall below
its intensity, ``z <= lambda^i(t-)``.  The simulator visits the atoms in time
order, but only those under a dominating rate that is valid until the next
accepted spike, see :meth:`IntensityState.dominating`.

:func:`coupled_simulate` runs the mean-field limit processes on the very same
atoms, which gives the coupling behind propagation of chaos.

"""
import heapq
import logging
import math
import warnings
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Sequence, Tuple, Union

import numpy as np

from ._accumulators import IntensityState
from ._errors import (
    ExplosionError,
    ModelDomainError,
    NumericalError,
    OutsideTheoryWarning,
    UnsupportedModelError,
)
from ._poisson import (
    POPULATION_A,
    POPULATION_B,
    BandCursor,
    PoissonCells,
    band_height,
    check_seed,
)
from .kernels import KernelFamily, ModelSpec

__all__ = [
    "CoupledLog",
    "EventLog",
    "Population",
    "PopulationConfig",
    "coupled_simulate",
    "empirical_intensity",
    "simulate",
    "sliding_intensity",
]

_LOG = logging.getLogger(__name__)

#: default hard limit on the number of accepted events
DEFAULT_EVENT_CAP = 10**8

#: default finest grid step a mean-field trajectory may have for coupling
DEFAULT_DT_MAX = 0.01

# Erlang orders beyond this make the dominating-rate bound useless.
_MAX_ERLANG_ORDER = 64


class Population(str, Enum):
    """The two populations."""

    A = "A"
    B = "B"

    @property
    def index(self) -> int:
        """0 for A, 1 for B."""
        return POPULATION_A if self is Population.A else POPULATION_B


@dataclass(frozen=True)
class PopulationConfig:
    """
    Sizes of the two populations.

    ``N_A = round(alpha * N)``, with round-half-to-even, and ``N_B = N - N_A``.
    Both must be at least 1.

    Examples
    --------
    >>> PopulationConfig(4000, 0.8)
    PopulationConfig(N=4000, alpha=0.8)
    >>> PopulationConfig(4000, 0.8).N_A
    3200
    """

    N: int
    alpha: float

    def __post_init__(self):  # noqa: D105
        integral = isinstance(self.N, (int, np.integer))
        if isinstance(self.N, bool) or not integral:
            msg = f"population size N must be an integer, got {self.N!r}."
            raise TypeError(msg)
        object.__setattr__(self, "N", int(self.N))
        if not 0.0 < self.alpha < 1.0:
            msg = (
                "alpha must lie strictly between 0 and 1, "
                f"got {self.alpha!r}."
            )
            raise ModelDomainError(msg)
        if self.N_A < 1 or self.N_B < 1:
            msg = (
                f"N={self.N} with alpha={self.alpha} leaves a population "
                f"empty (N_A={self.N_A}, N_B={self.N_B})."
            )
            raise ModelDomainError(msg)

    @classmethod
    def for_model(cls, model: ModelSpec, N: int) -> "PopulationConfig":
        """The population split for a model's alpha."""
        return cls(N, model.alpha)

    @property
    def N_A(self) -> int:  # noqa: D102
        return int(round(self.alpha * self.N))

    @property
    def N_B(self) -> int:  # noqa: D102
        return self.N - self.N_A

    def size(self, population: Union[Population, str]) -> int:
        """Number of neurons in a population."""
        return self.N_A if Population(population) is Population.A else self.N_B

    def population_of(self, neuron_id: int) -> Population:
        """The population a neuron belongs to."""
        if not 0 <= neuron_id < self.N:
            msg = f"neuron id {neuron_id} is not in [0, {self.N})."
            raise ModelDomainError(msg)
        return Population.A if neuron_id < self.N_A else Population.B


def _readonly(array) -> np.ndarray:
    array = np.array(array)
    array.flags.writeable = False
    return array


class EventLog:
    """
    All the spikes of one simulation run, in time order.

    Neurons ``0 .. N_A-1`` form population A and ``N_A .. N-1`` population B.
    The arrays are read-only.

    Parameters
    ----------
    times : array of float
        strictly increasing spike times, within [0, T]
    neuron_ids : array of int
        spiking neuron of each event
    T : float
        time horizon
    seed : int
        seed of the run
    model : ModelSpec
        the simulated model
    pop : PopulationConfig
        population sizes
    """

    def __init__(
        self,
        times: Sequence[float],
        neuron_ids: Sequence[int],
        T: float,
        seed: int,
        model: ModelSpec,
        pop: PopulationConfig,
    ):  # noqa: D107
        times = np.asarray(times, dtype=np.float64)
        neuron_ids = np.asarray(neuron_ids, dtype=np.int64)
        if times.shape != neuron_ids.shape or times.ndim != 1:
            msg = (
                f"event times and neuron ids must be matching 1-d arrays, got "
                f"shapes {times.shape} and {neuron_ids.shape}."
            )
            raise ValueError(msg)
        if times.size:
            if np.any(np.diff(times) <= 0):
                n_bad = int(np.count_nonzero(np.diff(times) <= 0))
                msg = (
                    f"event times are not strictly increasing "
                    f"({n_bad} tied or reversed pairs)."
                )
                raise NumericalError(msg, {"n_ties": n_bad})
            if times[0] < 0 or times[-1] > T:
                msg = f"event times fall outside [0, T={T}]."
                raise ModelDomainError(msg)
            if neuron_ids.min() < 0 or neuron_ids.max() >= pop.N:
                msg = f"neuron ids fall outside [0, N={pop.N})."
                raise ModelDomainError(msg)
        #: spike times
        self.times: np.ndarray = _readonly(times)
        #: spiking neuron of each spike
        self.neuron_ids: np.ndarray = _readonly(neuron_ids)
        #: time horizon
        self.T: float = float(T)
        #: seed of the run
        self.seed: int = seed
        #: the simulated model
        self.model: ModelSpec = model
        #: the population split
        self.pop: PopulationConfig = pop

    def __len__(self):  # noqa: D105
        return self.times.size

    def __repr__(self):  # noqa: D105
        return (
            f"EventLog(n_events={len(self)}, N={self.pop.N}, T={self.T!r}, "
            f"seed={self.seed})"
        )

    @property
    def populations(self) -> np.ndarray:
        """Population label ("A" or "B") of each event."""
        return np.where(self.neuron_ids < self.pop.N_A, "A", "B")

    def population_mask(
        self, population: Union[Population, str]
    ) -> np.ndarray:
        """Boolean mask selecting the events of one population."""
        if Population(population) is Population.A:
            return self.neuron_ids < self.pop.N_A
        return self.neuron_ids >= self.pop.N_A

    def counts(self) -> np.ndarray:
        """Total number of spikes of each neuron, Z^i_T."""
        return np.bincount(self.neuron_ids, minlength=self.pop.N)

    def neuron_times(self, neuron_id: int) -> np.ndarray:
        """Spike times of one neuron."""
        self.pop.population_of(neuron_id)
        return self.times[self.neuron_ids == neuron_id]

    def count_until(self, neuron_id: int, t: float) -> int:
        """The counting process Z^i_t of one neuron."""
        times = self.neuron_times(neuron_id)
        return int(np.searchsorted(times, t, side="right"))


class CoupledLog:
    """
    A particle run and the mean-field limit processes on the same randomness.

    ``discrepancy[i]`` is sup over [0, T] of ``|Z^i_t - Zbar^i_t|``.
    """

    def __init__(
        self, particle: EventLog, limit: EventLog, discrepancy: np.ndarray
    ):  # noqa: D107
        if (
            particle.pop != limit.pop
            or particle.T != limit.T
            or particle.seed != limit.seed
        ):
            msg = (
                "coupled logs must share N, T and seed : "
                f"{particle!r} != {limit!r}."
            )
            raise ValueError(msg)
        self.particle = particle
        self.limit = limit
        self.discrepancy: np.ndarray = _readonly(discrepancy)

    def __repr__(self):  # noqa: D105
        return (
            f"CoupledLog(particle={self.particle!r}, limit={self.limit!r}, "
            f"mean_discrepancy={self.mean_discrepancy()!r})"
        )

    def mean_discrepancy(self) -> float:
        """Average of the per-neuron sup discrepancy."""
        return float(np.mean(self.discrepancy))


def _check_simulable(model: ModelSpec) -> None:
    for name, kernel in zip(("h1", "h2", "h3", "h4"), model.kernels):
        erlang = kernel.family is KernelFamily.ERLANG
        if erlang and kernel.n > _MAX_ERLANG_ORDER:
            msg = (
                f"cannot build a dominating rate for kernel {name}={kernel}: "
                f"erlang order above {_MAX_ERLANG_ORDER}."
            )
            raise UnsupportedModelError(msg)
    if model.outside_theory:
        warnings.warn(
            f"inhibition {model.phi_BA} is not Lipschitz: well-posedness of "
            "the particle system is not established.",
            category=OutsideTheoryWarning,
        )


def _thinning_run(
    model: ModelSpec,
    pop: PopulationConfig,
    T: float,
    seed: int,
    event_cap: int,
) -> Tuple[np.ndarray, np.ndarray]:
    state = IntensityState(model, pop.N)
    offsets = (0, pop.N_A)
    heights = (
        band_height(model, POPULATION_A),
        band_height(model, POPULATION_B),
    )
    cells = (
        PoissonCells(seed, POPULATION_A, pop.N_A, heights[0]),
        PoissonCells(seed, POPULATION_B, pop.N_B, heights[1]),
    )
    cursors = ({}, {})
    active = (set(), set())
    # All bands below frontier[p] are active.
    frontier = [0, 0]
    heap = []
    times, neurons = [], []
    t = 0.0
    n_candidates = 0

    while True:
        bounds = state.dominating(t)
        for p in (POPULATION_A, POPULATION_B):
            needed = math.ceil(bounds[p] / heights[p])
            while frontier[p] < needed:
                band = frontier[p]
                cursor = cursors[p].get(band)
                if cursor is None:
                    cursor = BandCursor(cells[p], band, T)
                    cursors[p][band] = cursor
                cursor.seek(t)
                active[p].add(band)
                next_time = cursor.peek()
                if next_time <= T:
                    heapq.heappush(heap, (next_time, p, band))
                while frontier[p] in active[p]:
                    frontier[p] += 1
        if not heap:
            break
        s, p, band = heapq.heappop(heap)
        if band * heights[p] >= bounds[p]:
            # Every atom of this band lies above the intensity until the
            # next spike: park the band, without consuming its atom.
            active[p].discard(band)
            frontier[p] = min(frontier[p], band)
            continue
        cursor = cursors[p][band]
        s, neuron, mark = cursor.pop()
        next_time = cursor.peek()
        if next_time <= T:
            heapq.heappush(heap, (next_time, p, band))
        n_candidates += 1
        t = s
        intensity = state.intensity(s, p)
        assert intensity <= bounds[p] * (1.0 + 1e-9) + 1e-12, (
            f"dominating rate {bounds[p]} below intensity {intensity} "
            f"at t={s}"
        )
        if mark <= intensity:
            if times and s <= times[-1]:
                msg = f"simultaneous events at t={s!r}."
                raise NumericalError(msg, {"time": s})
            times.append(s)
            neurons.append(offsets[p] + neuron)
            state.record(s, p)
            if len(times) > event_cap:
                msg = (
                    f"event cap of {event_cap} exceeded at t={s:.6g} "
                    f"(horizon T={T})."
                )
                raise ExplosionError(msg, time=s, n_events=len(times))

    _LOG.debug(
        "thinning: %d candidates, %d accepted (N=%d, T=%g)",
        n_candidates,
        len(times),
        pop.N,
        T,
    )
    return np.array(times, dtype=np.float64), np.array(neurons, dtype=np.int64)


def simulate(
    model: ModelSpec,
    pop: PopulationConfig,
    T: float,
    seed: int,
    event_cap: int = DEFAULT_EVENT_CAP,
) -> EventLog:
    """
    Simulate the N-particle system over [0, T].

    Parameters
    ----------
    model : ModelSpec
        the model
    pop : PopulationConfig
        population sizes
    T : float
        time horizon, > 0
    seed : int
        unsigned 64-bit seed.  The result is a deterministic function of
        (model, pop, T, seed).
    event_cap : int
        maximum number of accepted events

    Returns
    -------
    EventLog

    Raises
    ------
    ExplosionError
        when more than ``event_cap`` events occur.
    UnsupportedModelError
        when no dominating rate can be built for a kernel.
    """
    if not T > 0:
        msg = f"horizon T must be > 0, got {T!r}."
        raise ModelDomainError(msg)
    seed = check_seed(seed)
    _check_simulable(model)
    _LOG.info("simulating N=%d, T=%g, seed=%d", pop.N, T, seed)
    times, neurons = _thinning_run(model, pop, T, seed, event_cap)
    return EventLog(times, neurons, T=T, seed=seed, model=model, pop=pop)


def _limit_run(
    model: ModelSpec,
    pop: PopulationConfig,
    T: float,
    seed: int,
    grid: np.ndarray,
    intensities: Tuple[np.ndarray, np.ndarray],
) -> Tuple[np.ndarray, np.ndarray]:
    all_times, all_neurons = [], []
    offsets = (0, pop.N_A)
    sizes = (pop.N_A, pop.N_B)
    for p in (POPULATION_A, POPULATION_B):
        lam = intensities[p]
        height = band_height(model, p)
        n_bands = math.ceil(float(np.max(lam)) / height) if lam.size else 0
        cells = PoissonCells(seed, p, sizes[p], height)
        times, neurons, marks = cells.atoms_below(n_bands, T)
        keep = marks <= np.interp(times, grid, lam)
        all_times.append(times[keep])
        all_neurons.append(neurons[keep] + offsets[p])
    times = np.concatenate(all_times)
    neurons = np.concatenate(all_neurons)
    order = np.argsort(times, kind="stable")
    return times[order], neurons[order]


def _sup_discrepancy(particle: EventLog, limit: EventLog) -> np.ndarray:
    N = particle.pop.N
    ids = np.concatenate([particle.neuron_ids, limit.neuron_ids])
    times = np.concatenate([particle.times, limit.times])
    steps = np.concatenate(
        [
            np.ones(len(particle), dtype=np.int64),
            -np.ones(len(limit), dtype=np.int64),
        ]
    )
    result = np.zeros(N, dtype=np.int64)
    if ids.size == 0:
        return result
    order = np.lexsort((times, ids))
    ids, times, steps = ids[order], times[order], steps[order]
    running = np.cumsum(steps)
    # restart the running sum at each neuron
    starts = np.flatnonzero(np.r_[True, ids[1:] != ids[:-1]])
    before = np.r_[0, running][starts]
    running -= np.repeat(before, np.diff(np.r_[starts, ids.size]))
    # a spike shared by both processes must not count as a transient gap
    settled = np.r_[(ids[1:] != ids[:-1]) | (times[1:] != times[:-1]), True]
    np.maximum.at(result, ids[settled], np.abs(running[settled]))
    return result


def coupled_simulate(
    model: ModelSpec,
    pop: PopulationConfig,
    T: float,
    seed: int,
    meanfield: "MeanFieldTrajectory",  # noqa: F821
    dt_max: float = DEFAULT_DT_MAX,
    event_cap: int = DEFAULT_EVENT_CAP,
) -> CoupledLog:
    """
    Simulate the particle system together with its mean-field limit copies.

    Limit neuron i is an inhomogeneous Poisson process with the mean-field
    intensity of its population, thinned from the same Poisson measure as
    particle neuron i.

    Parameters
    ----------
    model, pop, T, seed, event_cap
        as for :func:`simulate`
    meanfield : MeanFieldTrajectory
        the limit intensities, covering [0, T], usually from
        :func:`inhibhawkes.meanfield.solve`
    dt_max : float
        coarsest grid step accepted for ``meanfield``

    Returns
    -------
    CoupledLog

    Raises
    ------
    NumericalError
        if the trajectory is too coarse, too short, or has diverged
        before T.
    """
    if meanfield.dt > dt_max:
        msg = (
            f"mean-field trajectory too coarse for coupling : "
            f"dt={meanfield.dt!r} > dt_max={dt_max!r}."
        )
        raise NumericalError(msg, {"dt": meanfield.dt, "dt_max": dt_max})
    if meanfield.grid[-1] < T * (1.0 - 1e-12):
        msg = (
            f"mean-field trajectory ends at t={meanfield.grid[-1]!r}, before "
            f"the horizon T={T!r}"
        )
        if meanfield.diverged:
            msg += f" (diverged at t={meanfield.blowup_time!r})"
        raise NumericalError(msg + ".", {"end": float(meanfield.grid[-1])})
    if meanfield.model != model:
        msg = "mean-field trajectory was solved for a different model."
        raise ValueError(msg)

    particle = simulate(model, pop, T, seed, event_cap=event_cap)
    times, neurons = _limit_run(
        model,
        pop,
        T,
        particle.seed,
        meanfield.grid,
        (meanfield.lambda_A, meanfield.lambda_B),
    )
    limit = EventLog(times, neurons, T=T, seed=seed, model=model, pop=pop)
    discrepancy = _sup_discrepancy(particle, limit)
    _LOG.info(
        "coupled run N=%d: %d particle / %d limit events, mean sup gap %.4g",
        pop.N,
        len(particle),
        len(limit),
        float(np.mean(discrepancy)),
    )
    return CoupledLog(particle, limit, discrepancy)


def _check_window(log: EventLog, t0: float, t1: float) -> None:
    if not t1 > t0:
        msg = f"empty window ({t0!r}, {t1!r})."
        raise ModelDomainError(msg)
    if t0 < 0 or t1 > log.T:
        msg = f"window ({t0!r}, {t1!r}) is not within [0, T={log.T!r}]."
        raise ModelDomainError(msg)


def empirical_intensity(
    log: EventLog,
    window: Tuple[float, float],
    population: Union[Population, str],
) -> float:
    """
    Mean per-neuron spike rate of a population over a time window.

    The count of population events in (t0, t1], divided by
    (t1 - t0) times the population size.
    """
    t0, t1 = window
    _check_window(log, t0, t1)
    times = log.times[log.population_mask(population)]
    count = np.searchsorted(times, t1, side="right") - np.searchsorted(
        times, t0, side="right"
    )
    return float(count) / ((t1 - t0) * log.pop.size(population))


def sliding_intensity(
    log: EventLog,
    population: Union[Population, str],
    width: float,
    times: Optional[Sequence[float]] = None,
) -> Tuple[np.ndarray, np.ndarray]:
    """
    Per-neuron spike rate of a population over a sliding window.

    Parameters
    ----------
    log : EventLog
        the spikes
    population : Population or str
        "A" or "B"
    width : float
        window width
    times : array of float, optional
        window right ends, each in [width, T].  Default: a 200-point grid.

    Returns
    -------
    times, rates : ndarray
    """
    if not 0 < width <= log.T:
        msg = f"window width must lie in (0, T={log.T!r}], got {width!r}."
        raise ModelDomainError(msg)
    if times is None:
        times = np.linspace(width, log.T, 200)
    times = np.asarray(times, dtype=float)
    if np.any(times < width) or np.any(times > log.T):
        msg = f"window ends must lie within [{width!r}, {log.T!r}]."
        raise ModelDomainError(msg)
    spikes = log.times[log.population_mask(population)]
    counts = np.searchsorted(spikes, times, side="right") - np.searchsorted(
        spikes, times - width, side="right"
    )
    return times, counts / (width * log.pop.size(population))
