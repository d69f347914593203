"""
Plain-text result files.

* events : CSV ``time,neuron_id,population``, times with 9 fractional
  digits, plus a ``meta.json`` sidecar holding the model, seed, T and N
* trajectories : CSV ``t,lambda_A,lambda_B,m_A,m_B`` with 12 significant
  digits, plus a JSON sidecar with the model and solver settings
* reports : JSON, from the ``to_dict`` form of each result type
* chaos raw data : CSV ``N,replica,discrepancy``

All outputs are written as UTF-8 text.
"""
import json
import math
import warnings
from pathlib import Path
from typing import Any, Dict, Optional, Union

import numpy as np

from ._errors import FileFormatError
from .kernels import ModelSpec
from .meanfield import MeanFieldTrajectory, SolverMethod
from .simulate import EventLog, PopulationConfig
from .stats import ChaosScalingResult, TestResult

__all__ = [
    "EVENTS_HEADER",
    "TRAJECTORY_HEADER",
    "CHAOS_HEADER",
    "read_events",
    "read_json",
    "read_test_result",
    "read_trajectory",
    "write_chaos_records",
    "write_events",
    "write_json",
    "write_trajectory",
]

PathLike = Union[str, Path]

EVENTS_HEADER = "time,neuron_id,population"
TRAJECTORY_HEADER = "t,lambda_A,lambda_B,m_A,m_B"
CHAOS_HEADER = "N,replica,discrepancy"


def _events_meta_path(csv_path: Path, meta_path: Optional[PathLike]) -> Path:
    if meta_path is None:
        return csv_path.parent / "meta.json"
    return Path(meta_path)


def write_json(content: Any, path: PathLike) -> Path:
    """
    Write a result, or plain data, as indented JSON.

    Objects with a ``to_dict`` method are converted first.  Infinite limits
    are written as ``Infinity``.
    """
    if hasattr(content, "to_dict"):
        content = content.to_dict()
    path = Path(path)
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(content, fh, indent=2, sort_keys=False)
        fh.write("\n")
    return path


def read_json(path: PathLike) -> Dict[str, Any]:
    """Read a JSON file, wrapping decoding problems in FileFormatError."""
    path = Path(path)
    with open(path, encoding="utf-8") as fh:
        try:
            return json.load(fh)
        except json.JSONDecodeError as error:
            raise FileFormatError(str(error), path) from error


def write_events(
    log: EventLog, csv_path: PathLike, meta_path: Optional[PathLike] = None
) -> Path:
    """
    Write an event log as CSV, with its metadata sidecar.

    The sidecar defaults to ``meta.json`` beside the CSV.  Returns the CSV
    path.
    """
    csv_path = Path(csv_path)
    populations = log.populations
    with open(csv_path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(EVENTS_HEADER + "\n")
        for time, neuron, population in zip(
            log.times, log.neuron_ids, populations
        ):
            fh.write(f"{time:.9f},{neuron:d},{population}\n")
    meta = {
        "model": log.model.to_dict(),
        "seed": log.seed,
        "T": log.T,
        "N": log.pop.N,
        "N_A": log.pop.N_A,
        "n_events": len(log),
    }
    write_json(meta, _events_meta_path(csv_path, meta_path))
    return csv_path


def _read_csv_columns(path: Path, header: str, n_columns: int) -> np.ndarray:
    with open(path, encoding="utf-8") as fh:
        first = fh.readline().strip()
        if first != header:
            msg = f"expected header {header!r}, got {first!r}."
            raise FileFormatError(msg, path)
        with warnings.catch_warnings():
            # an empty body is a valid, empty table
            warnings.simplefilter("ignore", UserWarning)
            try:
                table = np.loadtxt(
                    fh,
                    delimiter=",",
                    dtype=str,
                    ndmin=2,
                    usecols=range(n_columns),
                )
            except ValueError as error:
                raise FileFormatError(str(error), path) from error
    return table.reshape(-1, n_columns)


def read_events(
    csv_path: PathLike, meta_path: Optional[PathLike] = None
) -> EventLog:
    """
    Read an event log written by :func:`write_events`.

    Raises
    ------
    FileFormatError
        for a wrong header, malformed rows, or population labels that do not
        match the neuron ids.
    """
    csv_path = Path(csv_path)
    meta_path = _events_meta_path(csv_path, meta_path)
    meta = read_json(meta_path)
    try:
        model = ModelSpec.from_dict(meta["model"])
        pop = PopulationConfig.for_model(model, int(meta["N"]))
        T = float(meta["T"])
        seed = int(meta["seed"])
    except KeyError as error:
        msg = f"metadata is missing key {error.args[0]!r}."
        raise FileFormatError(msg, meta_path) from error

    table = _read_csv_columns(csv_path, EVENTS_HEADER, 3)
    try:
        times = table[:, 0].astype(np.float64)
        neurons = table[:, 1].astype(np.int64)
    except ValueError as error:
        raise FileFormatError(str(error), csv_path) from error
    log = EventLog(times, neurons, T, seed, model, pop)
    if np.any(log.populations != table[:, 2]):
        msg = "population column does not match the neuron ids."
        raise FileFormatError(msg, csv_path)
    return log


def write_trajectory(
    traj: MeanFieldTrajectory,
    csv_path: PathLike,
    meta_path: Optional[PathLike] = None,
) -> Path:
    """
    Write a mean-field trajectory as CSV, plus a JSON sidecar.

    The sidecar defaults to the CSV path with a ``.json`` suffix.
    """
    csv_path = Path(csv_path)
    table = np.column_stack(
        [traj.grid, traj.lambda_A, traj.lambda_B, traj.m_A, traj.m_B]
    )
    np.savetxt(
        csv_path,
        table,
        fmt="%.12g",
        delimiter=",",
        header=TRAJECTORY_HEADER,
        comments="",
        encoding="utf-8",
    )
    meta = {
        "model": traj.model.to_dict(),
        "dt": traj.dt,
        "T": traj.T,
        "method": traj.method.value,
        "diverged": traj.diverged,
        "blowup_time": traj.blowup_time,
    }
    if meta_path is None:
        meta_path = csv_path.with_suffix(".json")
    write_json(meta, meta_path)
    return csv_path


def read_trajectory(
    csv_path: PathLike, meta_path: Optional[PathLike] = None
) -> MeanFieldTrajectory:
    """Read a trajectory written by :func:`write_trajectory`."""
    csv_path = Path(csv_path)
    if meta_path is None:
        meta_path = csv_path.with_suffix(".json")
    meta = read_json(meta_path)
    table = _read_csv_columns(csv_path, TRAJECTORY_HEADER, 5)
    try:
        table = table.astype(np.float64)
    except ValueError as error:
        raise FileFormatError(str(error), csv_path) from error
    if table.shape[0] == 0:
        raise FileFormatError("trajectory has no rows.", csv_path)
    return MeanFieldTrajectory(
        model=ModelSpec.from_dict(meta["model"]),
        dt=meta["dt"],
        lambda_A=table[:, 1],
        lambda_B=table[:, 2],
        m_A=table[:, 3],
        m_B=table[:, 4],
        method=SolverMethod(meta["method"]),
        T=meta["T"],
        diverged=meta.get("diverged", False),
        blowup_time=meta.get("blowup_time"),
    )


def write_chaos_records(result: ChaosScalingResult, path: PathLike) -> Path:
    """Write the per-replica discrepancies of a chaos experiment."""
    path = Path(path)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(CHAOS_HEADER + "\n")
        for N, replica, value in result.records:
            text = "nan" if math.isnan(value) else f"{value:.12g}"
            fh.write(f"{N:d},{replica:d},{text}\n")
    return path


def read_test_result(path: PathLike) -> TestResult:
    """Read a JSON file written from a :class:`TestResult`."""
    content = read_json(path)
    try:
        return TestResult.from_dict(content)
    except (KeyError, TypeError, ValueError) as error:
        raise FileFormatError(str(error), path) from error
