"""General user utility functions."""
from ._compare import eventlog_differences, trajectory_differences
from ._model_errors import model_errors

__all__ = [
    "eventlog_differences",
    "model_errors",
    "trajectory_differences",
]
