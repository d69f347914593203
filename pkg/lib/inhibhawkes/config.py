"""
Run configuration files.

A configuration is UTF-8 text with one ``key.path = value`` per line::

    # comment
    model.alpha = 0.8
    model.mu_A = 10
    model.h1 = indicator(theta=1.875)
    model.phi_BA = polynomial(tau=1, beta=1)
    population.N = 4000
    run.T = 50

Values are numbers, bare words, quoted strings, comma-separated lists, or
family calls such as ``erlang(theta=0.5, n=2)``.  Only ``model.alpha`` is
required.  :func:`format_config` prints every key, defaults included, in a
form that :func:`parse_config` reads back to an equal :class:`RunConfig`.

"""
import ast
import dataclasses
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Tuple, Union

from ._errors import ConfigError, InhibHawkesError
from .kernels import (
    FeedbackSpec,
    InhibitionSpec,
    KernelFamily,
    KernelSpec,
    ModelSpec,
)
from .meanfield import DEFAULT_OSC_THRESHOLD, SolverMethod
from .simulate import DEFAULT_DT_MAX, DEFAULT_EVENT_CAP

__all__ = [
    "RunConfig",
    "check_meanfield_grid",
    "format_config",
    "load_config",
    "parse_config",
]

_KEY_PATTERN = re.compile(r"^[A-Za-z_]\w*(\.[A-Za-z_]\w*)+$")
_WORD_PATTERN = re.compile(r"^[A-Za-z_][\w./+-]*$")
_CALL_PATTERN = re.compile(r"^([A-Za-z_]\w*)\s*\((.*)\)$")
_ARG_KEY_PATTERN = re.compile(r"^([A-Za-z_]\w*)\s*=\s*(.*)$")

_SOLVERS = ("auto",) + tuple(method.value for method in SolverMethod)


@dataclass(frozen=True)
class RunConfig:
    """
    Everything one command-line run needs.

    ``neurons`` is the number of population-A neurons averaged by the
    inhibition test; ``window`` the sliding-window width used to compare
    particle intensities with the limit.
    """

    model: ModelSpec
    population_N: int = 1000
    T: float = 10.0
    dt: float = DEFAULT_DT_MAX
    dt_max: float = DEFAULT_DT_MAX
    seed: int = 0
    burn_in: float = 0.5
    out_dir: str = "out"
    event_cap: int = DEFAULT_EVENT_CAP
    osc_threshold: float = DEFAULT_OSC_THRESHOLD
    solver: str = "auto"
    chaos_sizes: Tuple[int, ...] = (250, 1000, 4000)
    chaos_replicas: int = 20
    threads: int = 1
    level: float = 0.05
    neurons: int = 1
    window: float = 1.0

    def replace(self, **changes) -> "RunConfig":
        """A copy with some fields changed."""
        return dataclasses.replace(self, **changes)


class _Value:
    """A raw value token, with its position for error reports."""

    def __init__(self, text: str, line: int, column: int, key: str):
        self.text = text
        self.line = line
        self.column = column
        self.key = key

    def error(self, msg: str) -> ConfigError:
        return ConfigError(msg, self.line, self.column, self.key)


def _scalar(text: str, value: _Value) -> Any:
    text = text.strip()
    if not text:
        raise value.error("empty value.")
    if text[0] in "'\"":
        try:
            result = ast.literal_eval(text)
        except (SyntaxError, ValueError):
            raise value.error(f"malformed string {text!r}.")
        if not isinstance(result, str):
            raise value.error(f"malformed string {text!r}.")
        return result
    try:
        return int(text)
    except ValueError:
        pass
    try:
        return float(text)
    except ValueError:
        pass
    if _WORD_PATTERN.match(text):
        return text
    raise value.error(f"cannot read value {text!r}.")


def _number(value: _Value) -> float:
    result = _scalar(value.text, value)
    if isinstance(result, str):
        raise value.error(f"expected a number, got {value.text!r}.")
    return float(result)


def _ranged(
    lower: float,
    upper: float = float("inf"),
    closed_lower: bool = True,
    closed_upper: bool = True,
) -> Callable[[_Value], float]:
    def convert(value: _Value) -> float:
        number = _number(value)
        low_ok = number >= lower if closed_lower else number > lower
        high_ok = number <= upper if closed_upper else number < upper
        if not (low_ok and high_ok):
            left = "[" if closed_lower else "("
            right = "]" if closed_upper else ")"
            raise value.error(
                f"value {number!r} outside {left}{lower}, {upper}{right}."
            )
        return number

    return convert


def _integer(lower: int, upper: Optional[int] = None):
    def convert(value: _Value) -> int:
        result = _scalar(value.text, value)
        if isinstance(result, float) and result.is_integer():
            result = int(result)
        if not isinstance(result, int):
            raise value.error(f"expected an integer, got {value.text!r}.")
        if result < lower or (upper is not None and result > upper):
            raise value.error(
                f"integer {result} outside [{lower}, {upper or 'inf'}]."
            )
        return result

    return convert


def _word(choices: Tuple[str, ...]):
    def convert(value: _Value) -> str:
        result = _scalar(value.text, value)
        if result not in choices:
            raise value.error(
                f"expected one of {list(choices)}, got {value.text!r}."
            )
        return result

    return convert


def _path(value: _Value) -> str:
    result = _scalar(value.text, value)
    return str(result)


def _split(text: str) -> List[str]:
    # commas inside parentheses do not separate items
    items, depth, start = [], 0, 0
    for i, char in enumerate(text):
        if char == "(":
            depth += 1
        elif char == ")":
            depth -= 1
        elif char == "," and depth == 0:
            items.append(text[start:i])
            start = i + 1
    items.append(text[start:])
    return items


def _size_list(value: _Value) -> Tuple[int, ...]:
    sizes = []
    for item in _split(value.text):
        item_value = _Value(item, value.line, value.column, value.key)
        sizes.append(_integer(1)(item_value))
    return tuple(sizes)


def _kappa_list(value: _Value) -> Tuple[float, ...]:
    items = _split(value.text)
    if len(items) != 4:
        raise value.error(f"expected 4 kappa values, got {len(items)}.")
    return tuple(
        _ranged(0.0)(_Value(item, value.line, value.column, value.key))
        for item in items
    )


def _family_call(spec_class):
    def convert(value: _Value):
        text = value.text.strip()
        match = _CALL_PATTERN.match(text)
        if match:
            name, inner = match.group(1), match.group(2)
            args, kwargs = [], {}
            if inner.strip():
                for item in _split(inner):
                    keyed = _ARG_KEY_PATTERN.match(item.strip())
                    if keyed:
                        arg_key = keyed.group(1)
                        if arg_key in kwargs:
                            raise value.error(
                                f"parameter {arg_key!r} given twice."
                            )
                        kwargs[arg_key] = _scalar(keyed.group(2), value)
                    else:
                        if kwargs:
                            raise value.error(
                                "positional parameter after a keyword one."
                            )
                        args.append(_scalar(item, value))
        elif _WORD_PATTERN.match(text):
            name, args, kwargs = text, [], {}
        else:
            raise value.error(f"expected a family call, got {text!r}.")
        try:
            return spec_class.from_call(name, args, kwargs)
        except (InhibHawkesError, ValueError, TypeError) as error:
            raise value.error(str(error))

    return convert


#: key -> (RunConfig field or model argument, converter)
_KEYS: Dict[str, Tuple[str, Callable[[_Value], Any]]] = {
    "model.alpha": ("alpha", _ranged(0.0, 1.0, False, False)),
    "model.mu_A": ("mu_A", _ranged(0.0)),
    "model.mu_B": ("mu_B", _ranged(0.0)),
    "model.h1": ("h1", _family_call(KernelSpec)),
    "model.h2": ("h2", _family_call(KernelSpec)),
    "model.h3": ("h3", _family_call(KernelSpec)),
    "model.h4": ("h4", _family_call(KernelSpec)),
    "model.phi_BA": ("phi_BA", _family_call(InhibitionSpec)),
    "model.phi_AB": ("phi_AB", _family_call(FeedbackSpec)),
    "model.kappas": ("kappas", _kappa_list),
    "model.kernel_family": (
        "kernel_family",
        _word((KernelFamily.INDICATOR.value, KernelFamily.EXPONENTIAL.value)),
    ),
    "population.N": ("population_N", _integer(1)),
    "run.T": ("T", _ranged(0.0, closed_lower=False)),
    "run.dt": ("dt", _ranged(0.0, closed_lower=False)),
    "run.dt_max": ("dt_max", _ranged(0.0, closed_lower=False)),
    "run.seed": ("seed", _integer(0, 2**64 - 1)),
    "run.burn_in": ("burn_in", _ranged(0.0, 0.9)),
    "run.out_dir": ("out_dir", _path),
    "run.event_cap": ("event_cap", _integer(1)),
    "run.solver": ("solver", _word(_SOLVERS)),
    "run.threads": ("threads", _integer(1)),
    "analysis.osc_threshold": (
        "osc_threshold",
        _ranged(0.0, closed_lower=False),
    ),
    "analysis.window": ("window", _ranged(0.0, closed_lower=False)),
    "chaos.sizes": ("chaos_sizes", _size_list),
    "chaos.replicas": ("chaos_replicas", _integer(1)),
    "test.level": ("level", _ranged(0.0, 1.0, False, False)),
    "test.neurons": ("neurons", _integer(1)),
}

_MODEL_KEYS = ("alpha", "mu_A", "mu_B", "h1", "h2", "h3", "h4")
_KERNEL_KEYS = ("h1", "h2", "h3", "h4")


def _tokenize(text: str):
    """Yield (key, _Value, key column) for each assignment line."""
    for line_no, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        key_column = len(line) - len(line.lstrip()) + 1
        if "=" not in line:
            msg = "expected 'key = value'."
            raise ConfigError(msg, line_no, key_column)
        key_text, value_text = line.split("=", 1)
        key = key_text.strip()
        if not _KEY_PATTERN.match(key):
            msg = f"malformed key {key!r}."
            raise ConfigError(msg, line_no, key_column)
        # trailing comments are allowed outside quoted values
        if "#" in value_text and not value_text.strip().startswith(("'", '"')):
            value_text = value_text.split("#", 1)[0]
        value_column = (
            len(key_text)
            + 2
            + len(value_text)
            - len(value_text.lstrip())
        )
        yield key, _Value(
            value_text.strip(), line_no, value_column, key
        ), key_column


def _build_model(values: Dict[str, Any], where: Dict[str, _Value]):
    explicit = [name for name in _KERNEL_KEYS if name in values]
    if "kappas" in values:
        if explicit:
            value = where[explicit[0]]
            raise value.error(
                "model.kappas cannot be combined with explicit kernels "
                f"({', '.join('model.' + name for name in explicit)})."
            )
        kernels = _kernels_from_kappas(
            values["alpha"],
            values.pop("kappas"),
            values.pop("kernel_family", KernelFamily.INDICATOR.value),
        )
        values.update(zip(_KERNEL_KEYS, kernels))
    elif "kernel_family" in values:
        raise where["kernel_family"].error(
            "model.kernel_family needs model.kappas."
        )
    kwargs = {
        "mu_A": 0.0,
        "mu_B": 0.0,
        "h1": KernelSpec.zero(),
        "h2": KernelSpec.zero(),
        "h3": KernelSpec.zero(),
        "h4": KernelSpec.zero(),
    }
    for name in _MODEL_KEYS + ("phi_BA", "phi_AB"):
        if name in values:
            kwargs[name] = values[name]
    try:
        return ModelSpec(**kwargs)
    except InhibHawkesError as error:
        raise ConfigError(str(error), key="model") from error


def _kernels_from_kappas(alpha, kappas, family) -> List[KernelSpec]:
    weights = (alpha, 1.0 - alpha, 1.0 - alpha, alpha)
    return [
        KernelSpec.zero()
        if kappa == 0
        else KernelSpec(KernelFamily(family), theta=kappa / weight)
        for kappa, weight in zip(kappas, weights)
    ]


def parse_config(text: str) -> RunConfig:
    """
    Read a configuration text.

    Raises
    ------
    ConfigError
        for unknown, duplicated or missing keys and malformed values, with
        the 1-based line and column of the offending token.
    """
    values: Dict[str, Any] = {}
    where: Dict[str, _Value] = {}
    for key, value, key_column in _tokenize(text):
        if key not in _KEYS:
            msg = f"unknown key {key!r}."
            raise ConfigError(msg, value.line, key_column, key)
        name, convert = _KEYS[key]
        if name in values:
            first = where[name].line
            msg = f"duplicate key {key!r}, first given on line {first}."
            raise ConfigError(msg, value.line, key_column, key)
        values[name] = convert(value)
        where[name] = value

    if "alpha" not in values:
        msg = "missing required key 'model.alpha'."
        raise ConfigError(msg, key="model.alpha")
    model = _build_model(
        {
            name: values.pop(name)
            for name in list(values)
            if name in _MODEL_KEYS + ("phi_BA", "phi_AB", "kappas")
            or name == "kernel_family"
        },
        where,
    )
    return RunConfig(model=model, **values)


def load_config(path: Union[str, Path]) -> RunConfig:
    """Read a configuration file."""
    return parse_config(Path(path).read_text(encoding="utf-8"))


def check_meanfield_grid(config: RunConfig) -> None:
    """
    Check that ``run.dt`` resolves every indicator kernel of the model.

    Raises
    ------
    ConfigError
        when the step is wider than an indicator kernel.
    """
    for name, kernel in zip(_KERNEL_KEYS, config.model.kernels):
        indicator = kernel.family is KernelFamily.INDICATOR
        if indicator and kernel.theta < config.dt:
            msg = (
                f"run.dt={config.dt!r} is wider than the indicator kernel "
                f"model.{name} = {kernel}."
            )
            raise ConfigError(msg, key="run.dt")


def _format_value(value: Any) -> str:
    if isinstance(value, (int, float)):
        return repr(value)
    if isinstance(value, tuple):
        return ", ".join(_format_value(item) for item in value)
    if isinstance(value, str):
        return value if _WORD_PATTERN.match(value) else repr(value)
    # kernel / rate function specs print as family calls
    return str(value)


def format_config(config: RunConfig) -> str:
    """Canonical text of a configuration, every key included."""
    lines = []
    section = None
    for key, (name, _) in _KEYS.items():
        if name in ("kappas", "kernel_family"):
            continue
        if key.startswith("model."):
            value = getattr(config.model, name)
        else:
            value = getattr(config, name)
        prefix = key.split(".", 1)[0]
        if prefix != section:
            if section is not None:
                lines.append("")
            section = prefix
        lines.append(f"{key} = {_format_value(value)}")
    return "\n".join(lines) + "\n"
