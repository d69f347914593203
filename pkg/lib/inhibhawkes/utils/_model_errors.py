"""Consistency scan of model parameters."""
import math
from typing import Any, List, Mapping, Union

from ..kernels import FeedbackSpec, InhibitionSpec, KernelSpec, ModelSpec

_KERNEL_NAMES = ("h1", "h2", "h3", "h4")


def _number_errors(
    name: str, value: Any, lower: float, upper: float = None
) -> List[str]:
    errors = []
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        try:
            value = float(value)
        except (TypeError, ValueError):
            return [f"{name!r} is not a number : {value!r}."]
    if not math.isfinite(value):
        errors.append(f"{name!r} is not finite : {value!r}.")
    elif upper is None:
        if value < lower:
            errors.append(f"{name!r} must be >= {lower}, got {value!r}.")
    elif not (lower < value < upper):
        errors.append(
            f"{name!r} must lie strictly between {lower} and {upper}, "
            f"got {value!r}."
        )
    return errors


def _type_errors(name: str, value: Any, expected: type) -> List[str]:
    if isinstance(value, expected):
        return []
    return [
        f"{name!r} must be a {expected.__name__}, got "
        f"{type(value).__name__} : {value!r}."
    ]


def model_errors(model: Union[ModelSpec, Mapping[str, Any]]) -> List[str]:
    """
    Scan model parameters for validity.

    The checks made are :

    * ``alpha`` is a number strictly between 0 and 1
    * ``mu_A`` and ``mu_B`` are finite numbers >= 0
    * ``h1`` .. ``h4`` are :class:`~inhibhawkes.KernelSpec`
    * ``phi_BA`` is an :class:`~inhibhawkes.InhibitionSpec` and ``phi_AB`` a
      :class:`~inhibhawkes.FeedbackSpec`

    Parameters
    ----------
    model
        a :class:`~inhibhawkes.ModelSpec`, or a mapping of its field names
        to values (so that problems can be listed before construction).
        Missing mapping entries are reported, except for ``phi_BA`` and
        ``phi_AB`` which have defaults.

    Returns
    -------
    errors
        A list of strings describing the problems found.
        If there are none, returns an empty list.
    """
    if isinstance(model, Mapping):
        params = dict(model)
    else:
        params = {name: getattr(model, name) for name in _all_names()}

    errors = []
    for name in ("alpha", "mu_A", "mu_B") + _KERNEL_NAMES:
        if name not in params:
            errors.append(f"{name!r} is missing.")
    if "alpha" in params:
        errors += _number_errors("alpha", params["alpha"], 0.0, 1.0)
    for name in ("mu_A", "mu_B"):
        if name in params:
            errors += _number_errors(name, params[name], 0.0)
    for name in _KERNEL_NAMES:
        if name in params:
            errors += _type_errors(name, params[name], KernelSpec)
    if "phi_BA" in params:
        errors += _type_errors("phi_BA", params["phi_BA"], InhibitionSpec)
    if "phi_AB" in params:
        errors += _type_errors("phi_AB", params["phi_AB"], FeedbackSpec)
    return errors


def _all_names():
    return ("alpha", "mu_A", "mu_B") + _KERNEL_NAMES + ("phi_BA", "phi_AB")
