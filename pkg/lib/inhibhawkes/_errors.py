"""
Exception and warning classes for :mod:`inhibhawkes`.

All are re-exported at the package top level.
"""
from typing import Any, Dict, Optional

__all__ = [
    "ConfigError",
    "ExplosionError",
    "FileFormatError",
    "HeuristicWarning",
    "InhibHawkesError",
    "ModelDomainError",
    "NumericalError",
    "OutsideTheoryWarning",
    "UnsupportedModelError",
]


class InhibHawkesError(Exception):
    """Base class of all errors raised by inhibhawkes."""


class ModelDomainError(InhibHawkesError, ValueError):
    """
    A value lies outside the domain of an operation.

    For the fixed-point maps, ``x_star`` holds the lower boundary of the
    admissible interval, when there is one.
    """

    def __init__(self, msg: str, x_star: Optional[float] = None):
        super().__init__(msg)
        #: lower boundary x* of the interval of definition, if relevant
        self.x_star = x_star


class UnsupportedModelError(InhibHawkesError, ValueError):
    """The model is outside the family an operation supports."""


class ExplosionError(InhibHawkesError, RuntimeError):
    """The simulator reached its event cap."""

    def __init__(self, msg: str, time: float, n_events: int):
        super().__init__(msg)
        #: simulation time reached when the cap was hit
        self.time = time
        #: number of accepted events at that time
        self.n_events = n_events


class NumericalError(InhibHawkesError, ArithmeticError):
    """A numerical procedure failed; ``diagnostics`` says where."""

    def __init__(self, msg: str, diagnostics: Dict[str, Any] = None):
        super().__init__(msg)
        self.diagnostics = dict(diagnostics or {})


class ConfigError(InhibHawkesError, ValueError):
    """
    A problem in a run-configuration text.

    ``line`` and ``column`` are 1-based, or None when the problem has no
    location (e.g. a missing key).
    """

    def __init__(
        self,
        msg: str,
        line: Optional[int] = None,
        column: Optional[int] = None,
        key: Optional[str] = None,
    ):
        self.line = line
        self.column = column
        self.key = key
        self.reason = msg
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            msg = f"{where}: {msg}"
        super().__init__(msg)


class OutsideTheoryWarning(UserWarning):
    """The requested computation is outside the rigorously covered cases."""


class HeuristicWarning(UserWarning):
    """A result relies on an uncalibrated heuristic."""


class FileFormatError(InhibHawkesError, ValueError):
    """A results file does not have the expected layout."""

    def __init__(self, msg: str, path=None):
        if path is not None:
            msg = f"{path}: {msg}"
        super().__init__(msg)
        self.path = path
