"""
Deterministic mean-field limit of the particle system.

The limit intensities solve the coupled Volterra equations

    lambda_A(t) = (mu_A + alpha (h1 * lambda_A)(t))
                  * phi_BA((1 - alpha) (h2 * lambda_B)(t))
    lambda_B(t) = mu_B + (1 - alpha) (h3 * lambda_B)(t)
                  + phi_AB(alpha (h4 * lambda_A)(t))

with ``(h * f)(t)`` the convolution over [0, t].  The cumulative means
m_A, m_B are the integrals of lambda_A, lambda_B.

"""
import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Tuple

import numpy as np
from scipy.signal import find_peaks

from ._errors import ModelDomainError, NumericalError, UnsupportedModelError
from .kernels import KernelFamily, KernelSpec, ModelSpec

__all__ = [
    "MeanFieldTrajectory",
    "OdeState",
    "OscillationReport",
    "SolverMethod",
    "detect_oscillation",
    "solve",
    "solve_ode_reduction",
    "solve_volterra",
]

_LOG = logging.getLogger(__name__)

#: intensities above this are reported as a divergence
DEFAULT_DIVERGENCE_THRESHOLD = 1e8

#: default relative amplitude above which a trajectory counts as oscillating
DEFAULT_OSC_THRESHOLD = 0.05

_MAX_STEPS = 10**8


class SolverMethod(str, Enum):
    """How a trajectory was computed."""

    VOLTERRA = "volterra"
    ODE = "ode"


@dataclass(frozen=True)
class OdeState:
    """
    The exponentially weighted activities of the ODE reduction.

    X1 and X4 integrate lambda_A against h1 and h4 (scaled by alpha), X2 and
    X3 integrate lambda_B against h2 and h3 (scaled by 1 - alpha).
    """

    X1: float = 0.0
    X2: float = 0.0
    X3: float = 0.0
    X4: float = 0.0

    def as_array(self) -> np.ndarray:  # noqa: D102
        return np.array([self.X1, self.X2, self.X3, self.X4])


def _readonly(array) -> np.ndarray:
    array = np.array(array, dtype=np.float64)
    array.flags.writeable = False
    return array


class MeanFieldTrajectory:
    """
    Limit intensities and cumulative means on a uniform grid.

    When the solution diverged, the arrays stop at the last finite grid
    point before ``blowup_time``.
    """

    def __init__(
        self,
        model: ModelSpec,
        dt: float,
        lambda_A: np.ndarray,
        lambda_B: np.ndarray,
        m_A: np.ndarray,
        m_B: np.ndarray,
        method: SolverMethod,
        T: float,
        diverged: bool = False,
        blowup_time: Optional[float] = None,
        activities: Optional[np.ndarray] = None,
    ):  # noqa: D107
        #: the model solved
        self.model: ModelSpec = model
        #: grid step
        self.dt: float = float(dt)
        #: requested horizon
        self.T: float = float(T)
        #: per-neuron intensities
        self.lambda_A: np.ndarray = _readonly(lambda_A)
        self.lambda_B: np.ndarray = _readonly(lambda_B)
        #: cumulative means, integrals of the intensities
        self.m_A: np.ndarray = _readonly(m_A)
        self.m_B: np.ndarray = _readonly(m_B)
        #: solver used
        self.method: SolverMethod = SolverMethod(method)
        #: whether the intensities blew up before T
        self.diverged: bool = bool(diverged)
        #: first grid time at which the blow-up was detected
        self.blowup_time: Optional[float] = blowup_time
        # X1..X4 per grid point, for the ODE reduction only
        self._activities = (
            None if activities is None else _readonly(activities)
        )
        #: grid times
        self.grid: np.ndarray = _readonly(
            self.dt * np.arange(self.lambda_A.size)
        )

    def __len__(self):  # noqa: D105
        return self.grid.size

    def __repr__(self):  # noqa: D105
        state = (
            f", diverged at t={self.blowup_time!r}" if self.diverged else ""
        )
        return (
            f"MeanFieldTrajectory(method={self.method.value!r}, "
            f"dt={self.dt!r}, T={self.T!r}, points={len(self)}{state})"
        )

    def final(self) -> Tuple[float, float]:
        """(lambda_A, lambda_B) at the last grid point."""
        return float(self.lambda_A[-1]), float(self.lambda_B[-1])

    def at(self, t: float) -> Tuple[float, float]:
        """(lambda_A, lambda_B) at time t, linearly interpolated."""
        if not 0 <= t <= self.grid[-1]:
            msg = f"t={t!r} outside the trajectory [0, {self.grid[-1]!r}]."
            raise ModelDomainError(msg)
        return (
            float(np.interp(t, self.grid, self.lambda_A)),
            float(np.interp(t, self.grid, self.lambda_B)),
        )

    def ode_state(self, index: int = -1) -> OdeState:
        """The ODE activities at a grid index (ODE reduction only)."""
        if self._activities is None:
            msg = "activities are only stored by the ODE reduction."
            raise ValueError(msg)
        return OdeState(*(float(x) for x in self._activities[index]))


class _ZeroConvolution:
    weight = 0.0

    def history(self, k, lam, cum):
        return 0.0

    def commit(self, k, lam):
        pass


class _ExponentialConvolution:
    """Trapezoid rule, kept as one running sum."""

    def __init__(self, theta: float, dt: float):
        self.decay = math.exp(-dt / theta)
        self.half_dt = 0.5 * dt
        self.weight = self.half_dt
        self._value = 0.0

    def history(self, k, lam, cum):
        return self.decay * (self._value + self.half_dt * lam[k - 1])

    def commit(self, k, lam):
        self._value = self.history(k, lam, None) + self.half_dt * lam[k]


class _IndicatorConvolution:
    """
    Integral of lambda over the window [t - theta, t].

    Taken as a difference of the cumulative trapezoid integral.  The window
    start falls inside a grid cell, where lambda is interpolated linearly.
    """

    def __init__(self, theta: float, dt: float):
        if theta < dt:
            msg = (
                f"grid step dt={dt!r} is wider than the indicator kernel "
                f"width theta={theta!r}."
            )
            raise ModelDomainError(msg)
        self.width = theta / dt
        self.dt = dt
        self.weight = 0.5 * dt

    def history(self, k, lam, cum):
        upto = cum[k - 1] + self.weight * lam[k - 1]
        position = k - self.width
        if position <= 0:
            return upto
        j = int(math.floor(position))
        r = position - j
        if r < 1e-9:
            start = cum[j]
        elif r > 1.0 - 1e-9:
            start = cum[j + 1]
        else:
            partial = lam[j] + 0.5 * r * (lam[j + 1] - lam[j])
            start = cum[j] + r * self.dt * partial
        return upto - start

    def commit(self, k, lam):
        pass


class _SampledConvolution:
    """Full trapezoid sum against a sampled kernel."""

    def __init__(self, kernel: KernelSpec, dt: float, n: int):
        self.samples = kernel.evaluate(dt * np.arange(n + 1))
        self.dt = dt
        self.weight = 0.5 * dt * self.samples[0]

    def history(self, k, lam, cum):
        g = self.samples
        total = 0.5 * g[k] * lam[0]
        if k > 1:
            total += float(np.dot(g[1:k], lam[k - 1 : 0 : -1]))
        return self.dt * total

    def commit(self, k, lam):
        pass


def _convolution(kernel: KernelSpec, dt: float, n: int):
    family = kernel.family
    if family is KernelFamily.ZERO:
        return _ZeroConvolution()
    if family is KernelFamily.EXPONENTIAL:
        return _ExponentialConvolution(kernel.theta, dt)
    if family is KernelFamily.INDICATOR:
        return _IndicatorConvolution(kernel.theta, dt)
    return _SampledConvolution(kernel, dt, n)


def _grid_size(T: float, dt: float) -> int:
    if not (dt > 0 and T > 0):
        msg = f"T and dt must be > 0, got T={T!r}, dt={dt!r}."
        raise ModelDomainError(msg)
    n = math.ceil(T / dt - 1e-9)
    if n > _MAX_STEPS:
        msg = f"T/dt = {T / dt:.3g} exceeds the limit of {_MAX_STEPS} steps."
        raise ModelDomainError(msg)
    return n


def _blown_up(value: float, threshold: float) -> bool:
    return not math.isfinite(value) or value > threshold


def solve_volterra(
    model: ModelSpec,
    T: float,
    dt: float,
    divergence_threshold: float = DEFAULT_DIVERGENCE_THRESHOLD,
    corrections: int = 2,
) -> MeanFieldTrajectory:
    """
    Solve the mean-field equations by forward trapezoid quadrature.

    At step k the convolutions over past grid values are fixed, and the
    only unknowns are the endpoint values lambda(t_k).  These are predicted
    by linear extrapolation and then corrected ``corrections`` times by
    re-evaluating the equations.  The global error is O(dt**2).

    Parameters
    ----------
    model : ModelSpec
        the model
    T : float
        horizon; the grid runs to the first multiple of dt at or beyond T
    dt : float
        grid step
    divergence_threshold : float
        intensities above this level end the solve as a divergence
    corrections : int
        number of corrector passes per step

    Returns
    -------
    MeanFieldTrajectory
        with ``diverged`` set when the intensities blew up.
    """
    n = _grid_size(T, dt)
    alpha = model.alpha
    beta = 1.0 - alpha
    mu_A, mu_B = model.mu_A, model.mu_B
    phi_BA, phi_AB = model.phi_BA, model.phi_AB
    c1, c2, c3, c4 = (_convolution(h, dt, n) for h in model.kernels)
    w1, w2, w3, w4 = c1.weight, c2.weight, c3.weight, c4.weight

    lam_A = np.zeros(n + 1)
    lam_B = np.zeros(n + 1)
    m_A = np.zeros(n + 1)
    m_B = np.zeros(n + 1)
    lam_A[0] = model.lambda_A(0.0, 0.0)
    lam_B[0] = model.lambda_B(0.0, 0.0)
    half_dt = 0.5 * dt
    last = n
    blowup_time = None

    for k in range(1, n + 1):
        H1 = c1.history(k, lam_A, m_A)
        H2 = c2.history(k, lam_B, m_B)
        H3 = c3.history(k, lam_B, m_B)
        H4 = c4.history(k, lam_A, m_A)
        if k >= 2:
            guess_A = max(2.0 * lam_A[k - 1] - lam_A[k - 2], 0.0)
            guess_B = max(2.0 * lam_B[k - 1] - lam_B[k - 2], 0.0)
        else:
            guess_A, guess_B = lam_A[0], lam_B[0]
        for _ in range(corrections + 1):
            x1 = alpha * (H1 + w1 * guess_A)
            x2 = beta * (H2 + w2 * guess_B)
            x3 = beta * (H3 + w3 * guess_B)
            x4 = alpha * (H4 + w4 * guess_A)
            guess_A = (mu_A + x1) * phi_BA(x2)
            guess_B = mu_B + x3 + phi_AB(x4)
        if _blown_up(guess_A, divergence_threshold) or _blown_up(
            guess_B, divergence_threshold
        ):
            last = k - 1
            blowup_time = k * dt
            break
        lam_A[k] = guess_A
        lam_B[k] = guess_B
        m_A[k] = m_A[k - 1] + half_dt * (lam_A[k - 1] + guess_A)
        m_B[k] = m_B[k - 1] + half_dt * (lam_B[k - 1] + guess_B)
        for conv, lam in ((c1, lam_A), (c2, lam_B), (c3, lam_B), (c4, lam_A)):
            conv.commit(k, lam)

    if blowup_time is not None:
        _LOG.info("volterra solution diverged at t=%g", blowup_time)
    return MeanFieldTrajectory(
        model,
        dt,
        lam_A[: last + 1],
        lam_B[: last + 1],
        m_A[: last + 1],
        m_B[: last + 1],
        method=SolverMethod.VOLTERRA,
        T=T,
        diverged=blowup_time is not None,
        blowup_time=blowup_time,
    )


def _ode_rhs(model: ModelSpec, inverse_thetas: np.ndarray):
    alpha = model.alpha
    beta = 1.0 - alpha
    # zero kernels have zero input
    gains = np.array([alpha, beta, beta, alpha])
    gains[inverse_thetas == 0] = 0.0

    def rhs(state: np.ndarray) -> np.ndarray:
        x1, x2, x3, x4 = state[:4]
        lam_A = model.lambda_A(x1, x2)
        lam_B = model.lambda_B(x3, x4)
        lams = np.array([lam_A, lam_B, lam_B, lam_A])
        derivative = np.empty(6)
        derivative[:4] = gains * lams - inverse_thetas * state[:4]
        derivative[4] = lam_A
        derivative[5] = lam_B
        return derivative

    return rhs


def solve_ode_reduction(
    model: ModelSpec,
    T: float,
    dt: float,
    divergence_threshold: float = DEFAULT_DIVERGENCE_THRESHOLD,
) -> MeanFieldTrajectory:
    """
    Solve the mean-field equations through their ODE reduction.

    Valid when every kernel is exponential (or zero): the activities
    X1..X4 then satisfy ``dX/dt = -X/theta + weight * lambda``.  The system,
    extended by m_A and m_B, is integrated with the classical fourth-order
    Runge-Kutta method on the uniform grid.

    Raises
    ------
    UnsupportedModelError
        if a kernel is neither exponential nor zero.
    """
    if not model.ode_reducible:
        families = [kernel.family.value for kernel in model.kernels]
        msg = (
            "the ODE reduction needs exponential (or zero) kernels, got "
            f"{families}."
        )
        raise UnsupportedModelError(msg)
    n = _grid_size(T, dt)
    inverse_thetas = np.array(
        [
            0.0 if kernel.is_zero else 1.0 / kernel.theta
            for kernel in model.kernels
        ]
    )
    rhs = _ode_rhs(model, inverse_thetas)

    states = np.zeros((n + 1, 6))
    lam_A = np.zeros(n + 1)
    lam_B = np.zeros(n + 1)
    lam_A[0] = model.lambda_A(0.0, 0.0)
    lam_B[0] = model.lambda_B(0.0, 0.0)
    last = n
    blowup_time = None
    state = states[0].copy()
    for k in range(1, n + 1):
        k1 = rhs(state)
        k2 = rhs(state + 0.5 * dt * k1)
        k3 = rhs(state + 0.5 * dt * k2)
        k4 = rhs(state + dt * k3)
        state = state + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        x1, x2, x3, x4 = state[:4]
        value_A = model.lambda_A(x1, x2)
        value_B = model.lambda_B(x3, x4)
        if _blown_up(value_A, divergence_threshold) or _blown_up(
            value_B, divergence_threshold
        ):
            last = k - 1
            blowup_time = k * dt
            break
        states[k] = state
        lam_A[k] = value_A
        lam_B[k] = value_B

    if blowup_time is not None:
        _LOG.info("ODE solution diverged at t=%g", blowup_time)
    keep = slice(0, last + 1)
    return MeanFieldTrajectory(
        model,
        dt,
        lam_A[keep],
        lam_B[keep],
        states[keep, 4],
        states[keep, 5],
        method=SolverMethod.ODE,
        T=T,
        diverged=blowup_time is not None,
        blowup_time=blowup_time,
        activities=states[keep, :4],
    )


def solve(
    model: ModelSpec,
    T: float,
    dt: float,
    method: str = "auto",
    divergence_threshold: float = DEFAULT_DIVERGENCE_THRESHOLD,
) -> MeanFieldTrajectory:
    """
    Solve the mean-field equations with the most suitable method.

    ``method`` is "auto" (the ODE reduction when the kernels allow it, else
    Volterra), "volterra" or "ode".
    """
    if method == "auto":
        method = "ode" if model.ode_reducible else "volterra"
    method = SolverMethod(method)
    if method is SolverMethod.ODE:
        return solve_ode_reduction(model, T, dt, divergence_threshold)
    return solve_volterra(model, T, dt, divergence_threshold)


@dataclass(frozen=True)
class OscillationReport:
    """
    Long-time range of the intensities over the post burn-in window.

    ``lower_B`` / ``upper_B`` bound the size of a limit cycle in lambda_B;
    ``period_estimate`` is the mean spacing of lambda_B peaks, when there
    are at least two.
    """

    oscillating: bool
    lower_B: float
    upper_B: float
    lower_A: float
    upper_A: float
    period_estimate: Optional[float]
    n_peaks: int
    relative_amplitude: float

    def to_dict(self):  # noqa: D102
        return dict(self.__dict__)


def detect_oscillation(
    traj: MeanFieldTrajectory,
    burn_in: float,
    osc_threshold: float = DEFAULT_OSC_THRESHOLD,
    min_peaks: int = 3,
    eps: float = 1e-12,
) -> OscillationReport:
    """
    Decide whether a trajectory settles or keeps oscillating.

    On the window after the first ``burn_in`` fraction of the grid, the
    trajectory oscillates when the relative amplitude of lambda_B,
    ``(upper - lower) / max(upper, eps)``, exceeds ``osc_threshold``, and
    lambda_B shows at least ``min_peaks`` local maxima.

    Raises
    ------
    ModelDomainError
        for burn_in outside [0, 0.9], or a window under 10 grid points.
    NumericalError
        for a diverged trajectory.
    """
    if not 0.0 <= burn_in <= 0.9:
        msg = f"burn_in must lie in [0, 0.9], got {burn_in!r}."
        raise ModelDomainError(msg)
    if traj.diverged:
        msg = f"cannot analyse a diverged trajectory ({traj!r})."
        raise NumericalError(msg, {"blowup_time": traj.blowup_time})
    start = int(math.floor(burn_in * (len(traj) - 1)))
    lam_A = traj.lambda_A[start:]
    lam_B = traj.lambda_B[start:]
    if lam_B.size < 10:
        msg = (
            f"post burn-in window has {lam_B.size} grid points, "
            "at least 10 are needed."
        )
        raise ModelDomainError(msg)

    lower_B, upper_B = float(lam_B.min()), float(lam_B.max())
    amplitude = (upper_B - lower_B) / max(upper_B, eps)
    # ignore wiggles far below the amplitude of interest
    prominence = max(0.5 * osc_threshold * max(upper_B, eps), eps)
    peaks, _ = find_peaks(lam_B, prominence=prominence)
    period = None
    if peaks.size >= 2:
        period = float(np.mean(np.diff(peaks))) * traj.dt
    oscillating = bool(amplitude > osc_threshold and peaks.size >= min_peaks)
    return OscillationReport(
        oscillating=oscillating,
        lower_B=lower_B,
        upper_B=upper_B,
        lower_A=float(lam_A.min()),
        upper_A=float(lam_A.max()),
        period_estimate=period,
        n_peaks=int(peaks.size),
        relative_amplitude=float(amplitude),
    )
