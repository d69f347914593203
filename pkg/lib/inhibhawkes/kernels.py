"""
Memory kernels and rate functions of the two-population model.

A model couples an excitatory population A and an inhibitory population B.
With accumulated activities x1..x4 (see :class:`ModelSpec`), the
population intensities are

    lambda_A = (mu_A + x1) * phi_BA(x2)
    lambda_B = mu_B + x3 + phi_AB(x4)

All specification objects here are immutable values, safe to share between
threads and to pickle to worker processes.

"""
import math
from dataclasses import dataclass, replace
from enum import Enum
from typing import (
    Any,
    ClassVar,
    Dict,
    Iterable,
    Mapping,
    Optional,
    Sequence,
    Tuple,
    Union,
)

import numpy as np
from scipy.special import expit

from ._errors import ModelDomainError

__all__ = [
    "FeedbackFamily",
    "FeedbackSpec",
    "InhibitionFamily",
    "InhibitionSpec",
    "KernelFamily",
    "KernelSpec",
    "ModelSpec",
    "eval_inhibition",
    "eval_kernel",
    "kappas",
]

ArrayLike = Union[float, Sequence[float], np.ndarray]


class KernelFamily(str, Enum):
    """Families of memory kernel."""

    ZERO = "zero"
    INDICATOR = "indicator"
    EXPONENTIAL = "exponential"
    ERLANG = "erlang"


class InhibitionFamily(str, Enum):
    """Families of inhibition function phi_BA."""

    ONE = "one"
    POLYNOMIAL = "polynomial"
    EXPONENTIAL = "exponential"
    SIGMOID_POLYNOMIAL = "sigmoid_polynomial"
    ARCTAN = "arctan"
    INDICATOR = "indicator"


class FeedbackFamily(str, Enum):
    """Families of feedback function phi_AB."""

    ZERO = "zero"
    IDENTITY = "identity"
    LINEAR = "linear"


class _FamilyCallMixin:
    """
    Shared behaviour of the family-with-parameters specification classes.

    Each concrete class lists, per family, the names of its parameters in
    ``_PARAMS``.  The textual form is a call, e.g. ``indicator(theta=2.0)``,
    or just the family name when there are no parameters.
    """

    _FAMILY_ENUM: ClassVar[type]
    _PARAMS: ClassVar[Dict[str, Tuple[str, ...]]]
    _ALL_PARAMS: ClassVar[Tuple[str, ...]]

    @property
    def params(self) -> Dict[str, Any]:
        """The family parameters, by name, in their canonical order."""
        return {
            name: getattr(self, name)
            for name in self._PARAMS[self.family.value]
        }

    def _check_params(self) -> None:
        family = self._FAMILY_ENUM(self.family)
        object.__setattr__(self, "family", family)
        needed = self._PARAMS[family.value]
        for name in self._ALL_PARAMS:
            value = getattr(self, name)
            if name in needed and value is None:
                msg = (
                    f"{family.value} {self._WHAT} requires parameter {name!r}."
                )
                raise ModelDomainError(msg)
            if name not in needed and value is not None:
                msg = (
                    f"{family.value} {self._WHAT} takes no parameter "
                    f"{name!r}, got {value!r}."
                )
                raise ModelDomainError(msg)

    def _check_positive(self, name: str) -> None:
        value = getattr(self, name)
        try:
            value = float(value)
        except (TypeError, ValueError):
            msg = (
                f"{self._WHAT} parameter {name!r} is not a number : "
                f"{value!r}."
            )
            raise ModelDomainError(msg)
        if not (math.isfinite(value) and value > 0):
            msg = (
                f"{self._WHAT} parameter {name!r} must be finite and "
                f"strictly positive, got {value!r}."
            )
            raise ModelDomainError(msg)
        object.__setattr__(self, name, value)

    @classmethod
    def from_call(
        cls,
        name: str,
        args: Iterable[Any] = (),
        kwargs: Optional[Mapping[str, Any]] = None,
    ):
        """
        Construct from a family name plus positional and keyword parameters.

        This is the inverse of ``str(spec)``.

        Raises
        ------
        ValueError
            for an unknown family, or unknown, duplicated or missing
            parameters.
        """
        try:
            family = cls._FAMILY_ENUM(name)
        except ValueError:
            known = [member.value for member in cls._FAMILY_ENUM]
            msg = (
                f"unknown {cls._WHAT} family {name!r}, "
                f"expected one of {known}."
            )
            raise ValueError(msg)
        pnames = cls._PARAMS[family.value]
        args = list(args)
        if len(args) > len(pnames):
            msg = (
                f"{family.value} takes {len(pnames)} parameter(s) "
                f"{list(pnames)}, got {len(args)}."
            )
            raise ValueError(msg)
        values = dict(zip(pnames, args))
        for key, value in (kwargs or {}).items():
            if key not in pnames:
                msg = (
                    f"{family.value} has no parameter {key!r}, "
                    f"expected {list(pnames)}."
                )
                raise ValueError(msg)
            if key in values:
                msg = f"{family.value} parameter {key!r} given twice."
                raise ValueError(msg)
            values[key] = value
        missing = [key for key in pnames if key not in values]
        if missing:
            msg = f"{family.value} is missing parameter(s) {missing}."
            raise ValueError(msg)
        return cls(family, **values)

    def to_dict(self) -> Dict[str, Any]:
        """Plain-data form, for JSON."""
        result = {"family": self.family.value}
        result.update(self.params)
        return result

    @classmethod
    def from_dict(cls, content: Mapping[str, Any]):
        """Inverse of :meth:`to_dict`."""
        content = dict(content)
        family = content.pop("family")
        return cls.from_call(family, (), content)

    def __str__(self):  # noqa: D105
        params = self.params
        if not params:
            return self.family.value
        args = ", ".join(f"{key}={value!r}" for key, value in params.items())
        return f"{self.family.value}({args})"

    def __repr__(self):  # noqa: D105
        args = ", ".join(f"{value!r}" for value in self.params.values())
        return f"{self.__class__.__name__}.{self.family.value}({args})"


@dataclass(frozen=True, repr=False)
class KernelSpec(_FamilyCallMixin):
    """
    A memory kernel h(t) >= 0, for t >= 0.

    Families:

    * ``zero`` : h = 0
    * ``indicator(theta)`` : h(t) = 1 on [0, theta], 0 after
    * ``exponential(theta)`` : h(t) = exp(-t / theta)
    * ``erlang(theta, n)`` : h(t) = exp(-t / theta) * t**n / n!

    Examples
    --------
    >>> KernelSpec.indicator(2.0)(1.0)
    1.0
    >>> KernelSpec.exponential(1.25).l1_norm()
    1.25
    """

    family: KernelFamily
    theta: Optional[float] = None
    n: Optional[int] = None

    _WHAT: ClassVar[str] = "kernel"
    _FAMILY_ENUM: ClassVar[type] = KernelFamily
    _ALL_PARAMS: ClassVar[Tuple[str, ...]] = ("theta", "n")
    _PARAMS: ClassVar[Dict[str, Tuple[str, ...]]] = {
        "zero": (),
        "indicator": ("theta",),
        "exponential": ("theta",),
        "erlang": ("theta", "n"),
    }

    def __post_init__(self):  # noqa: D105
        self._check_params()
        if self.theta is not None:
            self._check_positive("theta")
        if self.n is not None:
            n = self.n
            if isinstance(n, float) and n.is_integer():
                n = int(n)
            if not isinstance(n, (int, np.integer)) or n < 0:
                msg = (
                    "erlang kernel order 'n' must be a nonnegative "
                    f"integer, got {self.n!r}."
                )
                raise ModelDomainError(msg)
            object.__setattr__(self, "n", int(n))

    @classmethod
    def zero(cls) -> "KernelSpec":
        """The zero kernel."""
        return cls(KernelFamily.ZERO)

    @classmethod
    def indicator(cls, theta: float) -> "KernelSpec":
        """Indicator of [0, theta]."""
        return cls(KernelFamily.INDICATOR, theta=theta)

    @classmethod
    def exponential(cls, theta: float) -> "KernelSpec":
        """Exponential decay with time-scale theta."""
        return cls(KernelFamily.EXPONENTIAL, theta=theta)

    @classmethod
    def erlang(cls, theta: float, n: int) -> "KernelSpec":
        """Erlang-shaped kernel of order n."""
        return cls(KernelFamily.ERLANG, theta=theta, n=n)

    @property
    def is_zero(self) -> bool:  # noqa: D102
        return self.family is KernelFamily.ZERO

    @property
    def monotone_decreasing(self) -> bool:
        """Whether h is non-increasing on [0, inf)."""
        return self.family is not KernelFamily.ERLANG or self.n == 0

    def l1_norm(self) -> float:
        """Exact integral of h over [0, inf)."""
        if self.family is KernelFamily.ZERO:
            return 0.0
        if self.family is KernelFamily.ERLANG:
            return self.theta ** (self.n + 1)
        return self.theta

    def peak_time(self) -> float:
        """Time at which h reaches its supremum."""
        if self.family is KernelFamily.ERLANG:
            return self.n * self.theta
        return 0.0

    def sup_norm(self) -> float:
        """Supremum of h over [0, inf)."""
        if self.family is KernelFamily.ZERO:
            return 0.0
        if self.family is KernelFamily.ERLANG:
            return self(self.peak_time())
        return 1.0

    def __call__(self, t: float) -> float:
        """Evaluate h at a single time t >= 0."""
        if t < 0:
            msg = f"kernel evaluated at negative time t={t!r}."
            raise ModelDomainError(msg)
        family = self.family
        if family is KernelFamily.ZERO:
            return 0.0
        if family is KernelFamily.INDICATOR:
            return 1.0 if t <= self.theta else 0.0
        if family is KernelFamily.EXPONENTIAL:
            return math.exp(-t / self.theta)
        # Erlang
        n = self.n
        if n == 0:
            return math.exp(-t / self.theta)
        if t == 0:
            return 0.0
        return math.exp(-t / self.theta + n * math.log(t) - math.lgamma(n + 1))

    def evaluate(self, t: ArrayLike) -> np.ndarray:
        """Evaluate h over an array of times, all >= 0."""
        t = np.asarray(t, dtype=float)
        if np.any(t < 0):
            msg = "kernel evaluated at negative time(s)."
            raise ModelDomainError(msg)
        family = self.family
        if family is KernelFamily.ZERO:
            return np.zeros_like(t)
        if family is KernelFamily.INDICATOR:
            return (t <= self.theta).astype(float)
        if family is KernelFamily.EXPONENTIAL or self.n == 0:
            return np.exp(-t / self.theta)
        with np.errstate(divide="ignore"):
            logs = (
                -t / self.theta
                + self.n * np.log(t)
                - math.lgamma(self.n + 1)
            )
        return np.where(t > 0, np.exp(logs), 0.0)


def _polynomial_scalar(x: float, log_tau: float, beta: float) -> float:
    # 1 / (1 + tau * x**beta), evaluated through logs so that huge beta
    # neither overflows nor underflows.
    if x == 0.0:
        return 1.0
    z = log_tau + beta * math.log(x)
    if z > 0:
        ez = math.exp(-z)
        return ez / (1.0 + ez)
    return 1.0 / (1.0 + math.exp(z))


@dataclass(frozen=True, repr=False)
class InhibitionSpec(_FamilyCallMixin):
    """
    The inhibition function phi_BA, mapping B activity to a factor in [0, 1].

    Families:

    * ``one`` : no inhibition
    * ``polynomial(tau, beta)`` : 1 / (1 + tau * x**beta)
    * ``exponential(tau)`` : exp(-tau * x)
    * ``sigmoid_polynomial(R, beta)`` : 1 / (1 + (x / R)**beta)
    * ``arctan(R, beta)`` : 1/2 - arctan(beta * (x - R)) / pi
    * ``indicator(R)`` : 1 on [0, R], 0 after.  Discontinuous.

    Notes
    -----
    ``sigmoid_polynomial(R, beta)`` is ``polynomial(R**-beta, beta)``; both
    tend to ``indicator(R)`` as beta grows.  ``arctan`` is the only family
    not equal to 1 at zero.
    """

    family: InhibitionFamily
    tau: Optional[float] = None
    beta: Optional[float] = None
    R: Optional[float] = None

    _WHAT: ClassVar[str] = "inhibition"
    _FAMILY_ENUM: ClassVar[type] = InhibitionFamily
    _ALL_PARAMS: ClassVar[Tuple[str, ...]] = ("tau", "beta", "R")
    _PARAMS: ClassVar[Dict[str, Tuple[str, ...]]] = {
        "one": (),
        "polynomial": ("tau", "beta"),
        "exponential": ("tau",),
        "sigmoid_polynomial": ("R", "beta"),
        "arctan": ("R", "beta"),
        "indicator": ("R",),
    }

    def __post_init__(self):  # noqa: D105
        self._check_params()
        for name in self._PARAMS[self.family.value]:
            self._check_positive(name)

    @classmethod
    def one(cls) -> "InhibitionSpec":  # noqa: D102
        return cls(InhibitionFamily.ONE)

    @classmethod
    def polynomial(  # noqa: D102
        cls, tau: float, beta: float
    ) -> "InhibitionSpec":
        return cls(InhibitionFamily.POLYNOMIAL, tau=tau, beta=beta)

    @classmethod
    def exponential(cls, tau: float) -> "InhibitionSpec":  # noqa: D102
        return cls(InhibitionFamily.EXPONENTIAL, tau=tau)

    @classmethod
    def sigmoid_polynomial(  # noqa: D102
        cls, R: float, beta: float
    ) -> "InhibitionSpec":
        return cls(InhibitionFamily.SIGMOID_POLYNOMIAL, R=R, beta=beta)

    @classmethod
    def arctan(cls, R: float, beta: float) -> "InhibitionSpec":  # noqa: D102
        return cls(InhibitionFamily.ARCTAN, R=R, beta=beta)

    @classmethod
    def indicator(cls, R: float) -> "InhibitionSpec":  # noqa: D102
        return cls(InhibitionFamily.INDICATOR, R=R)

    @property
    def lipschitz(self) -> bool:
        """False only for the discontinuous indicator family."""
        return self.family is not InhibitionFamily.INDICATOR

    @property
    def normalized_at_zero(self) -> bool:
        """Whether phi_BA(0) == 1."""
        return self.family is not InhibitionFamily.ARCTAN

    @property
    def is_one(self) -> bool:  # noqa: D102
        return self.family is InhibitionFamily.ONE

    @property
    def strictly_decreasing(self) -> bool:  # noqa: D102
        return self.family not in (
            InhibitionFamily.ONE,
            InhibitionFamily.INDICATOR,
        )

    @property
    def convex(self) -> bool:
        """Whether phi_BA is convex on [0, inf)."""
        family = self.family
        if family in (InhibitionFamily.ONE, InhibitionFamily.EXPONENTIAL):
            return True
        if family in (
            InhibitionFamily.POLYNOMIAL,
            InhibitionFamily.SIGMOID_POLYNOMIAL,
        ):
            return self.beta <= 1
        return False

    @property
    def threshold(self) -> Optional[float]:
        """The switching level R, for the sigmoid-like families."""
        return self.R

    def as_polynomial(self) -> "InhibitionSpec":
        """The equivalent polynomial form of a sigmoid_polynomial."""
        if self.family is InhibitionFamily.POLYNOMIAL:
            return self
        if self.family is not InhibitionFamily.SIGMOID_POLYNOMIAL:
            msg = f"{self} has no polynomial form."
            raise ValueError(msg)
        return InhibitionSpec.polynomial(
            tau=self.R ** (-self.beta), beta=self.beta
        )

    def __call__(self, x: float) -> float:
        """Evaluate at a single x >= 0."""
        if x < 0:
            msg = f"inhibition evaluated at negative argument x={x!r}."
            raise ModelDomainError(msg)
        family = self.family
        if family is InhibitionFamily.ONE:
            return 1.0
        if family is InhibitionFamily.POLYNOMIAL:
            return _polynomial_scalar(x, math.log(self.tau), self.beta)
        if family is InhibitionFamily.SIGMOID_POLYNOMIAL:
            return _polynomial_scalar(
                x, -self.beta * math.log(self.R), self.beta
            )
        if family is InhibitionFamily.EXPONENTIAL:
            return math.exp(-self.tau * x)
        if family is InhibitionFamily.ARCTAN:
            return 0.5 - math.atan(self.beta * (x - self.R)) / math.pi
        return 1.0 if x <= self.R else 0.0

    def evaluate(self, x: ArrayLike) -> np.ndarray:
        """Evaluate over an array of arguments, all >= 0."""
        x = np.asarray(x, dtype=float)
        if np.any(x < 0):
            msg = "inhibition evaluated at negative argument(s)."
            raise ModelDomainError(msg)
        family = self.family
        if family is InhibitionFamily.ONE:
            return np.ones_like(x)
        if family in (
            InhibitionFamily.POLYNOMIAL,
            InhibitionFamily.SIGMOID_POLYNOMIAL,
        ):
            if family is InhibitionFamily.POLYNOMIAL:
                log_tau = math.log(self.tau)
            else:
                log_tau = -self.beta * math.log(self.R)
            with np.errstate(divide="ignore"):
                z = log_tau + self.beta * np.log(x)
            return np.where(x > 0, expit(-z), 1.0)
        if family is InhibitionFamily.EXPONENTIAL:
            return np.exp(-self.tau * x)
        if family is InhibitionFamily.ARCTAN:
            return 0.5 - np.arctan(self.beta * (x - self.R)) / np.pi
        return (x <= self.R).astype(float)


@dataclass(frozen=True, repr=False)
class FeedbackSpec(_FamilyCallMixin):
    """
    The feedback function phi_AB: nondecreasing, zero at zero.

    Families ``zero``, ``identity`` and ``linear(slope)``.
    """

    family: FeedbackFamily
    slope: Optional[float] = None

    _WHAT: ClassVar[str] = "feedback"
    _FAMILY_ENUM: ClassVar[type] = FeedbackFamily
    _ALL_PARAMS: ClassVar[Tuple[str, ...]] = ("slope",)
    _PARAMS: ClassVar[Dict[str, Tuple[str, ...]]] = {
        "zero": (),
        "identity": (),
        "linear": ("slope",),
    }

    def __post_init__(self):  # noqa: D105
        self._check_params()
        if self.slope is not None:
            self._check_positive("slope")

    @classmethod
    def zero(cls) -> "FeedbackSpec":  # noqa: D102
        return cls(FeedbackFamily.ZERO)

    @classmethod
    def identity(cls) -> "FeedbackSpec":  # noqa: D102
        return cls(FeedbackFamily.IDENTITY)

    @classmethod
    def linear(cls, slope: float) -> "FeedbackSpec":  # noqa: D102
        return cls(FeedbackFamily.LINEAR, slope=slope)

    @property
    def is_zero(self) -> bool:  # noqa: D102
        return self.family is FeedbackFamily.ZERO

    @property
    def gain(self) -> float:
        """The constant slope of this (linear) function."""
        if self.family is FeedbackFamily.ZERO:
            return 0.0
        if self.family is FeedbackFamily.IDENTITY:
            return 1.0
        return self.slope

    def __call__(self, x: float) -> float:  # noqa: D102
        return self.gain * x

    def evaluate(self, x: ArrayLike) -> np.ndarray:  # noqa: D102
        return self.gain * np.asarray(x, dtype=float)


_DEFAULT_INHIBITION = InhibitionSpec.one()
_DEFAULT_FEEDBACK = FeedbackSpec.zero()


@dataclass(frozen=True)
class ModelSpec:
    """
    Full parameterisation of the two-population model.

    Parameters
    ----------
    alpha : float
        fraction of neurons in population A, in (0, 1)
    mu_A, mu_B : float
        spontaneous rates, >= 0
    h1, h2, h3, h4 : KernelSpec
        memory kernels: h1 for A->A excitation, h2 for the B activity seen by
        the inhibition, h3 for B->B excitation, h4 for the A activity seen by
        the feedback
    phi_BA : InhibitionSpec
        multiplicative inhibition of A by B
    phi_AB : FeedbackSpec
        additive feedback of A onto B

    Notes
    -----
    The interaction strengths are the kappa parameters

        kappa1 = alpha |h1|,  kappa2 = (1 - alpha) |h2|,
        kappa3 = (1 - alpha) |h3|,  kappa4 = alpha |h4|

    with |h| the L1 norm.  Construction checks the whole parameter set and
    reports every problem at once, see :func:`inhibhawkes.utils.model_errors`.
    """

    alpha: float
    mu_A: float
    mu_B: float
    h1: KernelSpec
    h2: KernelSpec
    h3: KernelSpec
    h4: KernelSpec
    phi_BA: InhibitionSpec = _DEFAULT_INHIBITION
    phi_AB: FeedbackSpec = _DEFAULT_FEEDBACK

    def __post_init__(self):  # noqa: D105
        from .utils._model_errors import model_errors

        errors = model_errors(self)
        if errors:
            msg = "invalid model parameters:\n  " + "\n  ".join(errors)
            raise ModelDomainError(msg)
        for name in ("alpha", "mu_A", "mu_B"):
            object.__setattr__(self, name, float(getattr(self, name)))

    @classmethod
    def from_kappas(
        cls,
        alpha: float,
        kappas: Sequence[float],
        mu_A: float,
        mu_B: float,
        phi_BA: InhibitionSpec = _DEFAULT_INHIBITION,
        phi_AB: FeedbackSpec = FeedbackSpec.identity(),
        family: str = "indicator",
    ) -> "ModelSpec":
        """
        Build a model whose kernels have the requested kappa parameters.

        Each kernel is an indicator (or exponential) with its time-scale
        chosen so that the population-weighted norm equals the given kappa.
        A zero kappa gives a zero kernel.

        Examples
        --------
        >>> model = ModelSpec.from_kappas(0.8, (1.5, 0.5, 0.5, 1.0), 10, 1)
        >>> model.h1
        KernelSpec.indicator(1.875)
        """
        family = KernelFamily(family)
        if family not in (KernelFamily.INDICATOR, KernelFamily.EXPONENTIAL):
            msg = (
                "kernels built from kappas must be indicator or exponential, "
                f"got {family.value!r}."
            )
            raise ValueError(msg)
        kappas = tuple(float(kappa) for kappa in kappas)
        if len(kappas) != 4:
            msg = f"expected 4 kappa values, got {len(kappas)}."
            raise ValueError(msg)
        weights = (alpha, 1.0 - alpha, 1.0 - alpha, alpha)
        kernels = []
        for kappa, weight in zip(kappas, weights):
            if kappa < 0:
                msg = f"kappa values must be >= 0, got {kappas}."
                raise ModelDomainError(msg)
            if kappa == 0:
                kernels.append(KernelSpec.zero())
            else:
                kernels.append(KernelSpec(family, theta=kappa / weight))
        h1, h2, h3, h4 = kernels
        return cls(
            alpha=alpha,
            mu_A=mu_A,
            mu_B=mu_B,
            h1=h1,
            h2=h2,
            h3=h3,
            h4=h4,
            phi_BA=phi_BA,
            phi_AB=phi_AB,
        )

    @property
    def kernels(self) -> Tuple[KernelSpec, KernelSpec, KernelSpec, KernelSpec]:
        """The kernels (h1, h2, h3, h4)."""
        return (self.h1, self.h2, self.h3, self.h4)

    @property
    def weights(self) -> Tuple[float, float, float, float]:
        """Population fraction that scales each kernel."""
        beta = 1.0 - self.alpha
        return (self.alpha, beta, beta, self.alpha)

    def kappas(self) -> Tuple[float, float, float, float]:
        """The interaction strengths (kappa1, kappa2, kappa3, kappa4)."""
        return tuple(
            weight * kernel.l1_norm()
            for weight, kernel in zip(self.weights, self.kernels)
        )

    @property
    def has_inhibition(self) -> bool:
        """Whether B actually acts on A."""
        return not (self.h2.is_zero or self.phi_BA.is_one)

    @property
    def has_feedback(self) -> bool:
        """Whether A actually acts on B."""
        return not (self.h4.is_zero or self.phi_AB.is_zero)

    @property
    def ode_reducible(self) -> bool:
        """Whether every kernel is exponential or zero."""
        return all(
            kernel.family in (KernelFamily.EXPONENTIAL, KernelFamily.ZERO)
            for kernel in self.kernels
        )

    @property
    def outside_theory(self) -> bool:
        """True when the inhibition is not Lipschitz."""
        return not self.phi_BA.lipschitz

    def lambda_A(self, x1: float, x2: float) -> float:
        """Intensity of an A neuron, given the accumulated activities."""
        return (self.mu_A + x1) * self.phi_BA(x2)

    def lambda_B(self, x3: float, x4: float) -> float:
        """Intensity of a B neuron, given the accumulated activities."""
        return self.mu_B + x3 + self.phi_AB(x4)

    def replace(self, **changes) -> "ModelSpec":
        """A copy with some fields changed."""
        return replace(self, **changes)

    def to_dict(self) -> Dict[str, Any]:
        """Plain-data form, for JSON."""
        result = {
            "alpha": self.alpha,
            "mu_A": self.mu_A,
            "mu_B": self.mu_B,
        }
        for name in ("h1", "h2", "h3", "h4", "phi_BA", "phi_AB"):
            result[name] = getattr(self, name).to_dict()
        return result

    @classmethod
    def from_dict(cls, content: Mapping[str, Any]) -> "ModelSpec":
        """Inverse of :meth:`to_dict`."""
        kwargs = {
            name: content[name] for name in ("alpha", "mu_A", "mu_B")
        }
        for name in ("h1", "h2", "h3", "h4"):
            kwargs[name] = KernelSpec.from_dict(content[name])
        kwargs["phi_BA"] = InhibitionSpec.from_dict(content["phi_BA"])
        kwargs["phi_AB"] = FeedbackSpec.from_dict(content["phi_AB"])
        return cls(**kwargs)


def eval_kernel(kernel: KernelSpec, t: float) -> float:
    """
    Evaluate a memory kernel at time t.

    Raises
    ------
    ModelDomainError
        if t < 0.
    """
    return kernel(t)


def eval_inhibition(inhibition: InhibitionSpec, x: float) -> float:
    """Evaluate an inhibition function at x >= 0."""
    return inhibition(x)


def kappas(model: ModelSpec) -> Tuple[float, float, float, float]:
    """Return (kappa1, kappa2, kappa3, kappa4) of a model."""
    return model.kappas()
