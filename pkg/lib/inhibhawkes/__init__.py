"""
Two-population Hawkes processes with multiplicative inhibition.

An excitatory population A is damped multiplicatively by an inhibitory
population B, which A in turn excites.  The package provides exact
simulation of the N-neuron system, the mean-field limit equations, the
long-time analysis of the limit, and statistical tests on spike data.

"""
# N.B. this file excluded from isort, as we want a specific order for the docs

from ._errors import (
    InhibHawkesError,
    ModelDomainError,
    UnsupportedModelError,
    ExplosionError,
    NumericalError,
    ConfigError,
    FileFormatError,
    OutsideTheoryWarning,
    HeuristicWarning,
)
from .kernels import (
    ModelSpec,
    KernelSpec,
    InhibitionSpec,
    FeedbackSpec,
    eval_kernel,
    eval_inhibition,
    kappas,
)

try:
    from ._version import __version__
except ImportError:  # running from a source tree without a build
    __version__ = "0.0.0+unknown"

__all__ = [
    "ModelSpec",
    "KernelSpec",
    "InhibitionSpec",
    "FeedbackSpec",
    "eval_kernel",
    "eval_inhibition",
    "kappas",
    "InhibHawkesError",
    "ModelDomainError",
    "UnsupportedModelError",
    "ExplosionError",
    "NumericalError",
    "ConfigError",
    "FileFormatError",
    "OutsideTheoryWarning",
    "HeuristicWarning",
    "__version__",
]
