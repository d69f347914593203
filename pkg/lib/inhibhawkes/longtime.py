"""
Long-time behaviour of the mean-field intensities, from the model alone.

The analysis rests on the interaction strengths kappa1..kappa4 and on the
maps

    Psi1(x) = mu_A p / (1 - kappa1 p),  p = phi_BA(kappa2 x)
    Psi2(x) = (mu_B + phi_AB(kappa4 x)) / (1 - kappa3)
    Phi = Psi2 o Psi1

Psi1 gives the A limit compatible with a B limit x, and Psi2 the B limit
compatible with an A limit.  A converging coupled system has its B limit at
the unique fixed point of Phi.  Psi1 is only finite on the interval where
``kappa1 * phi_BA(kappa2 x) < 1``.

"""
import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, Optional, Tuple

import numpy as np
from scipy.optimize import brentq

from ._errors import ModelDomainError, NumericalError, UnsupportedModelError
from .kernels import InhibitionFamily, ModelSpec
from .meanfield import OscillationReport

__all__ = [
    "AssumptionU",
    "BracketCheck",
    "DomainInterval",
    "LimitHierarchy",
    "LongTimeReport",
    "PhaseTransition",
    "Regime",
    "Subcondition",
    "big_phi",
    "bracket_check",
    "check_assumption_U",
    "classify_regime",
    "ell_linear_beta1",
    "fixed_point",
    "indicator_phase_transition",
    "interval_boundary",
    "limit_hierarchy",
    "psi1",
    "psi2",
]

_LOG = logging.getLogger(__name__)

#: absolute tolerance of the fixed-point root finder
FIXED_POINT_XTOL = 1e-12
#: number of interior points of the grid test on Phi o Phi
U_GRID_POINTS = 10_000
#: u < Phi(Phi(u)) must hold by at least this much on the grid
U_MARGIN = 1e-12
#: slope bound below which sampled Phi counts as a contraction
CONTRACTION_SLACK = 1e-3


class Regime(str, Enum):
    """Long-time regime of the mean-field intensities."""

    DECOUPLED_BOTH_SUB = "DecoupledBothSub"
    DECOUPLED_A_SUPER = "DecoupledASuper"
    DECOUPLED_B_SUPER = "DecoupledBSuper"
    DECOUPLED_BOTH_SUPER = "DecoupledBothSuper"
    INHIB_ONLY_SUB = "InhibOnlySub"
    INHIB_ONLY_A_SUPER = "InhibOnlyASuper"
    INHIB_ONLY_B_SUPER_A_KILLED = "InhibOnlyBSuperAKilled"
    FEEDBACK_ONLY_SUB = "FeedbackOnlySub"
    FEEDBACK_ONLY_B_SUPER = "FeedbackOnlyBSuper"
    FEEDBACK_ONLY_BOTH_SUPER = "FeedbackOnlyBothSuper"
    FULL_COUPLED_CONVERGENT = "FullCoupledConvergent"
    FULL_COUPLED_B_SUPER_A_KILLED = "FullCoupledBSuperAKilled"
    FULL_COUPLED_OSCILLATORY_CANDIDATE = "FullCoupledOscillatoryCandidate"
    OUTSIDE_THEORY = "OutsideTheory"


class AssumptionU(str, Enum):
    """Status of the "only (l, l) in the bracketing set" property of Phi."""

    PROVEN = "Proven"
    NUMERICALLY_HOLDS = "NumericallyHolds"
    NUMERICALLY_FAILS = "NumericallyFails"
    NOT_APPLICABLE = "NotApplicable"

    @property
    def holds(self) -> bool:  # noqa: D102
        return self in (AssumptionU.PROVEN, AssumptionU.NUMERICALLY_HOLDS)


class Subcondition(str, Enum):
    """Whether the liminf of lambda_B is known a priori to lie in I."""

    GUARANTEED = "Guaranteed"
    UNKNOWN = "Unknown"


class PhaseTransition(str, Enum):
    """Outcome of the threshold-inhibition fixed-point heuristic."""

    FIXED_POINT_EXISTS = "FixedPointExists"
    NO_FIXED_POINT = "NoFixedPoint_OscillationExpected"


@dataclass(frozen=True)
class DomainInterval:
    """
    The interval I = {x >= 0 : kappa1 phi_BA(kappa2 x) < 1}.

    Either all of [0, inf) (``whole``), the open half line (x_star, inf), or
    empty (``x_star`` infinite).
    """

    x_star: float
    whole: bool

    @property
    def empty(self) -> bool:  # noqa: D102
        return math.isinf(self.x_star)

    def contains(self, x: float) -> bool:  # noqa: D102
        if self.whole:
            return x >= 0
        return x > self.x_star

    def __str__(self):  # noqa: D105
        if self.whole:
            return "[0, inf)"
        if self.empty:
            return "{}"
        return f"({self.x_star!r}, inf)"


def _kappa_terms(model: ModelSpec):
    k1, k2, k3, k4 = model.kappas()
    return k1, k2, k3, k4, model.phi_AB.gain


def _ab(model: ModelSpec) -> Tuple[float, float]:
    # a = kappa2 mu_B / (1 - kappa3), b = kappa2 kappa4 g / (1 - kappa3)
    k1, k2, k3, k4, gain = _kappa_terms(model)
    return k2 * model.mu_B / (1.0 - k3), k2 * k4 * gain / (1.0 - k3)


def _b_floor(model: ModelSpec) -> float:
    """mu_B / (1 - kappa3), the least possible B limit."""
    k3 = model.kappas()[2]
    if model.mu_B == 0:
        return 0.0
    return model.mu_B / (1.0 - k3)


def _require_b_subcritical(model: ModelSpec, what: str) -> None:
    k3 = model.kappas()[2]
    if not k3 < 1:
        msg = f"{what} requires kappa3 < 1, got kappa3={k3!r}."
        raise ModelDomainError(msg)


def interval_boundary(model: ModelSpec) -> DomainInterval:
    """
    The domain I of Psi1 and Phi.

    I is all of [0, inf) when ``kappa1 * phi_BA(0) < 1``; otherwise it is
    (x_star, inf) with ``kappa1 * phi_BA(kappa2 x_star) = 1``, or empty when
    the inhibition never drops below ``1 / kappa1``.
    """
    k1, k2 = model.kappas()[:2]
    phi = model.phi_BA
    if k1 * phi(0.0) < 1:
        return DomainInterval(0.0, True)
    if k2 == 0 or phi.is_one:
        return DomainInterval(math.inf, False)
    family = phi.family
    if family in (
        InhibitionFamily.POLYNOMIAL,
        InhibitionFamily.SIGMOID_POLYNOMIAL,
    ):
        poly = phi.as_polynomial()
        y_star = ((k1 - 1.0) / poly.tau) ** (1.0 / poly.beta)
    elif family is InhibitionFamily.EXPONENTIAL:
        y_star = math.log(k1) / phi.tau
    elif family is InhibitionFamily.ARCTAN:
        y_star = phi.R + math.tan(math.pi * (0.5 - 1.0 / k1)) / phi.beta
    else:
        y_star = phi.R
    return DomainInterval(max(y_star, 0.0) / k2, False)


def _check_in_domain(model: ModelSpec, x: float) -> DomainInterval:
    domain = interval_boundary(model)
    if not domain.contains(x):
        msg = f"x={x!r} lies outside the domain {domain} of Psi1."
        raise ModelDomainError(msg, x_star=domain.x_star)
    return domain


def _psi1_values(model: ModelSpec, x: np.ndarray) -> np.ndarray:
    k1, k2 = model.kappas()[:2]
    p = model.phi_BA.evaluate(k2 * np.asarray(x, dtype=float))
    with np.errstate(divide="ignore"):
        return model.mu_A * p / (1.0 - k1 * p)


def _psi2_values(model: ModelSpec, x: np.ndarray) -> np.ndarray:
    k3, k4 = model.kappas()[2:]
    return (model.mu_B + model.phi_AB.evaluate(k4 * np.asarray(x))) / (
        1.0 - k3
    )


def _phi_values(model: ModelSpec, x: np.ndarray) -> np.ndarray:
    return _psi2_values(model, _psi1_values(model, x))


def psi1(x: float, model: ModelSpec) -> float:
    """
    The A limit compatible with a B limit x.

    Raises
    ------
    ModelDomainError
        when x is outside the interval I, carrying ``x_star``.
    """
    _check_in_domain(model, x)
    return float(_psi1_values(model, x))


def psi2(x: float, model: ModelSpec) -> float:
    """The B limit compatible with an A limit x (kappa3 < 1)."""
    _require_b_subcritical(model, "psi2")
    if x < 0:
        msg = f"psi2 evaluated at negative x={x!r}."
        raise ModelDomainError(msg)
    return float(_psi2_values(model, x))


def big_phi(x: float, model: ModelSpec) -> float:
    """The map Phi = psi2 o psi1, whose fixed point is the B limit."""
    _require_b_subcritical(model, "big_phi")
    _check_in_domain(model, x)
    return float(_phi_values(model, x))


def _bracket(model: ModelSpec) -> Tuple[float, float]:
    """
    An interval [lo, hi] containing the fixed point of Phi.

    lo is the larger of mu_B / (1 - kappa3) and a point just inside I.
    Since Phi is nonincreasing, Phi(lo) >= fixed point.
    """
    domain = interval_boundary(model)
    if domain.empty:
        msg = "the domain of Phi is empty: population A cannot settle."
        raise NumericalError(msg, {"x_star": domain.x_star})
    floor = _b_floor(model)
    if domain.whole or floor > domain.x_star:
        lo = floor
    else:
        x_star = domain.x_star
        step = 1e-9 * max(1.0, x_star)
        lo = x_star + step
        while not math.isfinite(float(_phi_values(model, lo))):
            step *= 10.0
            lo = x_star + step
    return lo, float(_phi_values(model, lo))


def fixed_point(model: ModelSpec) -> float:
    """
    The unique fixed point l of Phi in I.

    Found by bracketed root finding (Brent's method) on Phi(x) - x over
    [lo, Phi(lo)], with lo from the lower bound ``l >= mu_B / (1 - kappa3)``
    and the boundary of I.  Phi - identity is strictly decreasing, so the
    root is unique.

    Raises
    ------
    ModelDomainError
        if kappa3 >= 1.
    UnsupportedModelError
        for the discontinuous indicator inhibition.
    NumericalError
        when no sign change can be bracketed.
    """
    _require_b_subcritical(model, "fixed_point")
    if not model.phi_BA.lipschitz:
        msg = f"fixed_point needs a continuous inhibition, got {model.phi_BA}."
        raise UnsupportedModelError(msg)
    lo, hi = _bracket(model)

    def residual(x):
        return float(_phi_values(model, x)) - x

    g_lo = hi - lo
    if g_lo == 0:
        return lo
    if g_lo < 0 or not math.isfinite(hi):
        diagnostics = {"lo": lo, "phi_lo": hi}
        msg = f"cannot bracket the fixed point of Phi: {diagnostics}."
        raise NumericalError(msg, diagnostics)
    g_hi = residual(hi)
    if g_hi == 0:
        return hi
    if g_hi > 0:
        diagnostics = {"lo": lo, "hi": hi, "residual_hi": g_hi}
        msg = f"cannot bracket the fixed point of Phi: {diagnostics}."
        raise NumericalError(msg, diagnostics)
    return float(brentq(residual, lo, hi, xtol=FIXED_POINT_XTOL))


def ell_linear_beta1(model: ModelSpec) -> float:
    """
    Closed-form fixed point for polynomial inhibition with beta = 1.

    With y = kappa2 * l, the fixed-point equation reduces to the quadratic
    ``tau y**2 + (1 - kappa1 - tau a) y - (1 - kappa1) a - mu_A b = 0``,
    of which this is the larger root, divided by kappa2.

    Raises
    ------
    UnsupportedModelError
        for any other inhibition family, or beta != 1.
    """
    phi = model.phi_BA
    if phi.family not in (
        InhibitionFamily.POLYNOMIAL,
        InhibitionFamily.SIGMOID_POLYNOMIAL,
    ) or phi.beta != 1:
        msg = (
            "the closed form needs polynomial inhibition with beta=1, "
            f"got {phi}."
        )
        raise UnsupportedModelError(msg)
    _require_b_subcritical(model, "ell_linear_beta1")
    k1, k2 = model.kappas()[:2]
    if k2 == 0:
        return _b_floor(model)
    tau = phi.as_polynomial().tau
    a, b = _ab(model)
    linear = 1.0 - k1 - tau * a
    discriminant = linear**2 + 4.0 * tau * ((1.0 - k1) * a + model.mu_A * b)
    return (-linear + math.sqrt(discriminant)) / (2.0 * tau * k2)


@dataclass(frozen=True)
class _UCheck:
    status: AssumptionU
    reason: str
    concave: Optional[bool] = None


def _phi_is_constant(model: ModelSpec) -> bool:
    return not (model.has_inhibition and model.has_feedback) or (
        model.mu_A == 0
    )


def _u_check(model: ModelSpec) -> _UCheck:
    k1, k2, k3, _, _ = _kappa_terms(model)
    if not k3 < 1:
        return _UCheck(AssumptionU.NOT_APPLICABLE, "kappa3 >= 1")
    phi = model.phi_BA
    if not phi.lipschitz:
        return _UCheck(AssumptionU.NOT_APPLICABLE, "discontinuous inhibition")
    if _phi_is_constant(model):
        return _UCheck(AssumptionU.PROVEN, "Phi is constant")
    a, b = _ab(model)
    if (
        phi.family
        in (InhibitionFamily.POLYNOMIAL, InhibitionFamily.SIGMOID_POLYNOMIAL)
        and phi.beta <= 1
    ):
        poly = phi.as_polynomial()
        if k1 < 1.0 + poly.tau * a**poly.beta:
            return _UCheck(
                AssumptionU.PROVEN,
                "polynomial inhibition with beta <= 1: Phi o Phi is concave",
            )
    if phi.family is InhibitionFamily.EXPONENTIAL and k1 < 1:
        decay = math.exp(-phi.tau * a)
        slope = b * model.mu_A * phi.tau * decay / (1.0 - k1 * decay) ** 2
        if slope < 1:
            return _UCheck(
                AssumptionU.PROVEN,
                "exponential inhibition: Phi is a contraction "
                f"(slope {slope:.6g})",
            )

    lo, hi = _bracket(model)
    grid = np.linspace(lo, hi, U_GRID_POINTS + 1)
    values = _phi_values(model, grid)
    slopes = np.abs(np.diff(values)) / np.diff(grid)
    max_slope = float(np.max(slopes)) if slopes.size else 0.0
    if np.all(np.isfinite(slopes)) and max_slope < 1.0 - CONTRACTION_SLACK:
        return _UCheck(
            AssumptionU.PROVEN,
            f"sampled Phi is a contraction on [{lo:.6g}, {hi:.6g}] "
            f"(max slope {max_slope:.6g})",
        )

    ell = fixed_point(model)
    domain = interval_boundary(model)
    start = max(0.0 if domain.whole else domain.x_star, _b_floor(model))
    if not ell > start:
        return _UCheck(AssumptionU.NUMERICALLY_HOLDS, "empty test interval")
    u = np.linspace(start, ell, U_GRID_POINTS + 2)[1:-1]
    twice = _phi_values(model, _phi_values(model, u))
    second = np.diff(twice, 2)
    scale = np.maximum(1.0, np.abs(twice[1:-1]))
    concave = bool(np.all(second <= U_MARGIN * scale))
    if np.all(twice - u > U_MARGIN):
        status = AssumptionU.NUMERICALLY_HOLDS
        reason = f"u < Phi(Phi(u)) on a {U_GRID_POINTS}-point grid"
    else:
        worst = float(u[np.argmin(twice - u)])
        status = AssumptionU.NUMERICALLY_FAILS
        reason = f"Phi(Phi(u)) <= u at u={worst:.6g}"
    return _UCheck(status, reason, concave)


def check_assumption_U(model: ModelSpec) -> AssumptionU:
    """
    Check that the only bracketing pair of Phi is (l, l).

    Proven from a sufficient condition when one applies: Phi constant,
    polynomial inhibition with beta <= 1 and ``kappa1 < 1 + tau a**beta``,
    exponential inhibition with a maximal slope of Phi below 1, or a
    sampled slope of Phi below ``1 - 1e-3`` on the fixed-point bracket.
    Otherwise ``u < Phi(Phi(u))`` is tested on a grid between
    max(x_star, mu_B / (1 - kappa3)) and l.
    """
    return _u_check(model).status


@dataclass
class LongTimeReport:
    """
    Predicted long-time behaviour of a model.

    ``limits`` holds the predicted (l_A, l_B), with ``inf`` for a
    diverging population; for an oscillatory candidate they are the only
    possible limits, should the intensities converge.  ``rule`` is a stable
    tag for the result that fired, such as ``"full_coupling.convergence"``
    or ``"outside.discontinuous"``; ``reason`` says the same in words.
    """

    kappas: Tuple[float, float, float, float]
    regime: Regime
    rule: str
    reason: str = ""
    ab:Optional[Tuple[float, float]] = None
    ell: Optional[float] = None
    limits: Optional[Tuple[float, float]] = None
    subcondition: Optional[bool] = None
    assumption_U: AssumptionU = AssumptionU.NOT_APPLICABLE
    uB_in_I: Subcondition = Subcondition.UNKNOWN
    x_star: Optional[float] = None
    conjecture_convex: bool = False
    concave_phi2: Optional[bool] = None
    heuristic: Optional[PhaseTransition] = None
    notes: Tuple[str, ...] = ()
    tolerances: Dict[str, float] = field(
        default_factory=lambda: {
            "fixed_point_xtol": FIXED_POINT_XTOL,
            "u_grid_points": U_GRID_POINTS,
            "u_margin": U_MARGIN,
            "contraction_slack": CONTRACTION_SLACK,
        }
    )

    @property
    def ell_A(self) -> Optional[float]:  # noqa: D102
        return None if self.limits is None else self.limits[0]

    @property
    def ell_B(self) -> Optional[float]:  # noqa: D102
        return None if self.limits is None else self.limits[1]

    def to_dict(self) -> Dict[str, Any]:
        """Plain-data form, for JSON."""
        result = dict(self.__dict__)
        for name in ("regime", "assumption_U", "uB_in_I", "heuristic"):
            value = result[name]
            result[name] = None if value is None else value.value
        result["notes"] = list(self.notes)
        for name in ("kappas", "ab", "limits"):
            if result[name] is not None:
                result[name] = list(result[name])
        return result


class _Critical(Exception):
    """A population sits exactly at its critical point."""

    def __init__(self, population: str):
        self.rule = f"outside.{population.lower()}_critical"
        super().__init__(f"population {population} exactly critical")


def _fire(report: LongTimeReport, rule: str, reason: str) -> None:
    report.rule = rule
    report.reason = reason


def _a_limit(model: ModelSpec, b_limit: float) -> Tuple[bool, float]:
    """
    (subcritical, limit) of A, with B converging to b_limit.

    A is subcritical when ``kappa1 phi_BA(kappa2 b_limit) < 1``; with no
    spontaneous rate it stays at 0.
    """
    k1, k2 = model.kappas()[:2]
    p = model.phi_BA(k2 * b_limit)
    if model.mu_A == 0:
        return True, 0.0
    if k1 * p < 1:
        return True, model.mu_A * p / (1.0 - k1 * p)
    if k1 * p == 1:
        raise _Critical("A")
    return False, math.inf


def _classify_decoupled(model, report, inhibited, fed) -> LongTimeReport:
    k1, k2, k3, k4 = report.kappas
    b_sub = k3 < 1 or model.mu_B == 0
    b_limit = _b_floor(model) if b_sub else math.inf

    if not fed:
        if inhibited and not b_sub:
            report.regime = Regime.INHIB_ONLY_B_SUPER_A_KILLED
            _fire(
                report,
                "inhibition_only.b_supercritical",
                "inhibition only, population B supercritical",
            )
            report.limits = (0.0, math.inf)
            return report
        a_sub, a_limit = _a_limit(model, b_limit if inhibited else 0.0)
        report.limits = (a_limit, b_limit)
        if inhibited:
            _fire(
                report,
                "inhibition_only.b_subcritical",
                "inhibition only, population B subcritical",
            )
            report.regime = (
                Regime.INHIB_ONLY_SUB if a_sub else Regime.INHIB_ONLY_A_SUPER
            )
            report.subcondition = a_sub
            return report
        _fire(report, "decoupled", "decoupled populations")
        report.regime = {
            (True, True): Regime.DECOUPLED_BOTH_SUB,
            (False, True): Regime.DECOUPLED_A_SUPER,
            (True, False): Regime.DECOUPLED_B_SUPER,
            (False, False): Regime.DECOUPLED_BOTH_SUPER,
        }[(a_sub, b_sub)]
        return report

    # feedback only: A runs on its own and drives B
    a_sub, a_limit = _a_limit(model, 0.0)
    _fire(report, "feedback_only", "feedback only")
    if not a_sub:
        report.regime = Regime.FEEDBACK_ONLY_BOTH_SUPER
        report.limits = (math.inf, math.inf)
        return report
    drive = model.mu_B + model.phi_AB(k4 * a_limit)
    if drive == 0:
        report.regime = Regime.FEEDBACK_ONLY_SUB
        report.limits = (a_limit, 0.0)
    elif k3 < 1:
        report.regime = Regime.FEEDBACK_ONLY_SUB
        report.limits = (a_limit, drive / (1.0 - k3))
    elif k3 == 1:
        raise _Critical("B")
    else:
        report.regime = Regime.FEEDBACK_ONLY_B_SUPER
        report.limits = (a_limit, math.inf)
    return report


def _outside(report: LongTimeReport, rule: str, why: str) -> LongTimeReport:
    report.regime = Regime.OUTSIDE_THEORY
    _fire(report, rule, why)
    report.limits = None
    return report


def classify_regime(model: ModelSpec) -> LongTimeReport:
    """
    Predict the long-time regime of a model from its parameters.

    The decision goes by which couplings are present (inhibition of A by B,
    feedback of A onto B), then by the criticality of each population, and
    in the fully coupled case by the a priori subcondition
    ``kappa1 phi_BA(kappa2 mu_B / (1 - kappa3)) < 1`` together with
    :func:`check_assumption_U`.  Exactly critical parameters, and the
    discontinuous indicator inhibition, give
    :attr:`Regime.OUTSIDE_THEORY`.
    """
    kappas = model.kappas()
    k1, k2, k3, k4 = kappas
    report = LongTimeReport(
        kappas=kappas,
        regime=Regime.OUTSIDE_THEORY,
        rule="",
        conjecture_convex=model.phi_BA.convex,
    )
    if k3 < 1:
        report.ab = _ab(model)
        domain = interval_boundary(model)
        report.x_star = domain.x_star
        if (
            model.phi_BA.threshold is not None
            and k1 < 1
            and not model.phi_BA.is_one
        ):
            report.heuristic = indicator_phase_transition(model)

    inhibited = model.has_inhibition
    fed = model.has_feedback
    if k3 == 1 and model.mu_B > 0:
        return _outside(
            report, "outside.b_critical", "population B exactly critical"
        )
    if inhibited and not model.phi_BA.lipschitz:
        return _outside(
            report, "outside.discontinuous", "discontinuous inhibition"
        )

    if not (inhibited and fed):
        try:
            result = _classify_decoupled(model, report, inhibited, fed)
        except _Critical as critical:
            return _outside(report, critical.rule, str(critical))
        _LOG.debug("regime %s (%s)", result.regime.value, result.rule)
        return result

    if k3 > 1:
        if model.mu_B > 0:
            report.regime = Regime.FULL_COUPLED_B_SUPER_A_KILLED
            _fire(
                report,
                "full_coupling.b_supercritical",
                "full coupling, population B supercritical",
            )
            report.limits = (0.0, math.inf)
            return report
        if model.mu_A > 0:
            return _outside(
                report,
                "outside.b_supercritical_undriven",
                "population B supercritical, no own drive",
            )
    if model.mu_A == 0:
        report.regime = Regime.FULL_COUPLED_CONVERGENT
        _fire(
            report,
            "full_coupling.a_undriven",
            "full coupling, population A without drive",
        )
        report.assumption_U = AssumptionU.PROVEN
        report.uB_in_I = Subcondition.GUARANTEED
        report.subcondition = True
        report.limits = (0.0, _b_floor(model) if k3 < 1 else 0.0)
        report.ell = report.limits[1]
        return report
    if k3 == 1:
        return _outside(
            report, "outside.b_critical", "population B exactly critical"
        )

    subcondition = bool(k1 * model.phi_BA(report.ab[0]) < 1)
    report.subcondition = subcondition
    report.uB_in_I = (
        Subcondition.GUARANTEED if subcondition else Subcondition.UNKNOWN
    )
    check = _u_check(model)
    report.assumption_U = check.status
    report.concave_phi2 = check.concave
    report.notes = (check.reason,)
    ell = fixed_point(model)
    report.ell = ell
    report.limits = (float(_psi1_values(model, ell)), ell)
    if check.status.holds and subcondition:
        report.regime = Regime.FULL_COUPLED_CONVERGENT
        _fire(
            report,
            "full_coupling.convergence",
            "full coupling convergence: subcondition and assumption U hold",
        )
    else:
        report.regime = Regime.FULL_COUPLED_OSCILLATORY_CANDIDATE
        _fire(
            report,
            "full_coupling.no_guarantee",
            "full coupling, convergence not guaranteed",
        )
    _LOG.debug("regime %s (%s)", report.regime.value, report.rule)
    return report


@dataclass(frozen=True)
class LimitHierarchy:
    """
    Long-time limits of population A under three set-ups.

    ``ell_I``: no inhibition; ``ell_II``: inhibition without feedback;
    ``ell_III``: full coupling.  A slot is ``None`` when its set-up has no
    finite limit, with the reason in ``reasons``.
    """

    ell_I: Optional[float]
    ell_II: Optional[float]
    ell_III: Optional[float]
    collapsed: bool
    ordered: Optional[bool]
    reasons: Dict[str, str] = field(default_factory=dict)

    def as_tuple(self) -> Tuple[Optional[float], ...]:  # noqa: D102
        return (self.ell_I, self.ell_II, self.ell_III)

    def to_dict(self) -> Dict[str, Any]:  # noqa: D102
        return dict(self.__dict__)


def limit_hierarchy(model: ModelSpec) -> LimitHierarchy:
    """
    Compare the A limit without inhibition, without feedback, and coupled.

    When phi_BA is strictly decreasing and every coupling is active, the
    limits are strictly ordered ``ell_I > ell_II > ell_III``; a violation
    raises :class:`NumericalError`.
    """
    k1, k2, k3, k4 = model.kappas()
    reasons = {}
    ell_I = ell_II = ell_III = None
    if k1 < 1:
        ell_I = model.mu_A / (1.0 - k1)
    else:
        reasons["ell_I"] = "kappa1 >= 1"
    if k3 < 1:
        a = _ab(model)[0]
        p = model.phi_BA(a)
        if k1 * p < 1:
            ell_II = model.mu_A * p / (1.0 - k1 * p)
            check = _u_check(model)
            if check.status.holds:
                ell_III = float(_psi1_values(model, fixed_point(model)))
            else:
                reasons["ell_III"] = f"assumption U {check.status.value}"
        else:
            reasons["ell_II"] = reasons["ell_III"] = "subcondition fails"
    else:
        reasons["ell_II"] = reasons["ell_III"] = "kappa3 >= 1"

    collapsed = model.phi_BA.is_one
    values = (ell_I, ell_II, ell_III)
    ordered = None
    if None not in values:
        ordered = ell_I > ell_II > ell_III
        strict = (
            model.phi_BA.strictly_decreasing
            and model.has_inhibition
            and model.has_feedback
            and model.mu_A > 0
            and model.mu_B > 0
        )
        if strict and not ordered:
            diagnostics = dict(zip(("ell_I", "ell_II", "ell_III"), values))
            msg = f"limit hierarchy is not strictly ordered: {diagnostics}."
            raise NumericalError(msg, diagnostics)
    return LimitHierarchy(ell_I, ell_II, ell_III, collapsed, ordered, reasons)


def indicator_phase_transition(model: ModelSpec) -> PhaseTransition:
    """
    Fixed-point heuristic for threshold-like inhibition.

    Treating phi_BA as the indicator of [0, R], the coupled system has a
    fixed point iff ``(R - a) / b >= mu_A / (1 - kappa1)``; otherwise its
    intensities are expected to oscillate.  Applies to the indicator,
    sigmoid_polynomial and arctan families, whose threshold is R.

    Raises
    ------
    UnsupportedModelError
        for an inhibition without a threshold.
    ModelDomainError
        if kappa1 >= 1 or kappa3 >= 1.
    """
    R = model.phi_BA.threshold
    if R is None:
        msg = f"{model.phi_BA} has no threshold R."
        raise UnsupportedModelError(msg)
    k1 = model.kappas()[0]
    if not k1 < 1:
        msg = f"the threshold heuristic requires kappa1 < 1, got {k1!r}."
        raise ModelDomainError(msg)
    _require_b_subcritical(model, "indicator_phase_transition")
    a, b = _ab(model)
    if b == 0 or math.isinf(R):
        return PhaseTransition.FIXED_POINT_EXISTS
    if (R - a) / b >= model.mu_A / (1.0 - k1):
        return PhaseTransition.FIXED_POINT_EXISTS
    return PhaseTransition.NO_FIXED_POINT


@dataclass(frozen=True)
class BracketCheck:
    """
    A posteriori check of an observed limit cycle against Phi.

    ``lower_in_I`` says whether the observed liminf of lambda_B lies in I;
    ``holds`` whether ``Phi(upper) <= lower <= l <= upper <= Phi(lower)``
    within the relative tolerance.
    """

    lower_in_I: bool
    holds: Optional[bool]
    ell: Optional[float]
    phi_lower: Optional[float]
    phi_upper: Optional[float]


def bracket_check(
    model: ModelSpec, oscillation: OscillationReport, rtol: float = 1e-2
) -> BracketCheck:
    """Check the observed range of lambda_B against the bounds from Phi."""
    _require_b_subcritical(model, "bracket_check")
    lower, upper = oscillation.lower_B, oscillation.upper_B
    domain = interval_boundary(model)
    if not domain.contains(lower):
        return BracketCheck(False, None, None, None, None)
    ell = fixed_point(model) if model.phi_BA.lipschitz else None
    phi_lower = float(_phi_values(model, lower))
    phi_upper = float(_phi_values(model, upper))
    scale = rtol * max(abs(upper), 1.0)
    chain = [phi_upper, lower] + ([ell] if ell is not None else []) + [
        upper,
        phi_lower,
    ]
    holds = all(
        left <= right + scale for left, right in zip(chain[:-1], chain[1:])
    )
    return BracketCheck(True, holds, ell, phi_lower, phi_upper)
