"""
Binary export of trajectories and event logs to netCDF files.

A trajectory file has one dimension ``t`` and variables ``t``, ``lambda_A``,
``lambda_B``, ``m_A`` and ``m_B``.  An event-log file has one unlimited
dimension ``event`` and variables ``time`` and ``neuron_id``.  The model is
stored as a JSON string in the global attribute ``model``.

Variables can be opened lazily, as dask arrays, with :func:`open_lazy`.
All netCDF library calls hold :data:`_GLOBAL_NETCDF4_LIBRARY_THREADLOCK`.

"""
import json
from pathlib import Path
from threading import Lock
from typing import Dict, Union

import dask.array as da
import netCDF4 as nc
import numpy as np

from ._errors import FileFormatError
from .kernels import ModelSpec
from .meanfield import MeanFieldTrajectory, SolverMethod
from .simulate import EventLog, PopulationConfig

__all__ = [
    "eventlog_from_nc4",
    "eventlog_to_nc4",
    "open_lazy",
    "trajectory_from_nc4",
    "trajectory_to_nc4",
]

PathLike = Union[str, Path]

_GLOBAL_NETCDF4_LIBRARY_THREADLOCK = Lock()

_TRAJECTORY_VARIABLES = ("lambda_A", "lambda_B", "m_A", "m_B")


class _NetCDFDataProxy:
    """A reference to the data of one file variable, read on indexing."""

    __slots__ = ("shape", "dtype", "path", "variable_name")

    def __init__(self, shape, dtype, filepath, variable_name):
        self.shape = shape
        self.dtype = dtype
        self.path = filepath
        self.variable_name = variable_name

    @property
    def ndim(self):
        return len(self.shape)

    def __getitem__(self, keys):
        with _GLOBAL_NETCDF4_LIBRARY_THREADLOCK:
            dataset = nc.Dataset(self.path)
            try:
                values = dataset.variables[self.variable_name][keys]
            finally:
                dataset.close()
        return np.asanyarray(values)

    def __repr__(self):
        return (
            f"<{self.__class__.__name__} shape={self.shape} "
            f"dtype={self.dtype!r} path={self.path!r} "
            f"variable_name={self.variable_name!r}>"
        )

    def __getstate__(self):
        return {attr: getattr(self, attr) for attr in self.__slots__}

    def __setstate__(self, state):
        for key, value in state.items():
            setattr(self, key, value)


def open_lazy(path: PathLike) -> Dict[str, da.Array]:
    """
    Map every variable of a file to a lazy dask array.

    Nothing is read until the arrays are computed.
    """
    path = str(path)
    with _GLOBAL_NETCDF4_LIBRARY_THREADLOCK:
        dataset = nc.Dataset(path)
        try:
            shapes = {
                name: (var.shape, var.dtype)
                for name, var in dataset.variables.items()
            }
        finally:
            dataset.close()
    arrays = {}
    for name, (shape, dtype) in shapes.items():
        if 0 in shape:
            arrays[name] = da.zeros(shape, dtype=dtype)
        else:
            arrays[name] = da.from_array(
                _NetCDFDataProxy(shape, dtype, path, name),
                chunks="auto",
                asarray=True,
                meta=np.ndarray,
            )
    return arrays


def _read_attributes(path: str) -> Dict[str, object]:
    with _GLOBAL_NETCDF4_LIBRARY_THREADLOCK:
        dataset = nc.Dataset(path)
        try:
            return {
                name: dataset.getncattr(name) for name in dataset.ncattrs()
            }
        finally:
            dataset.close()


def _model_attribute(attributes, path) -> ModelSpec:
    try:
        return ModelSpec.from_dict(json.loads(attributes["model"]))
    except KeyError as error:
        msg = f"missing global attribute {error.args[0]!r}."
        raise FileFormatError(msg, path) from error


def trajectory_to_nc4(traj: MeanFieldTrajectory, path: PathLike) -> None:
    """Save a mean-field trajectory to a netCDF file."""
    with _GLOBAL_NETCDF4_LIBRARY_THREADLOCK:
        dataset = nc.Dataset(str(path), "w")
        try:
            dataset.createDimension("t", len(traj))
            var = dataset.createVariable("t", np.float64, ("t",))
            var.units = "1"
            var[:] = traj.grid
            for name in _TRAJECTORY_VARIABLES:
                var = dataset.createVariable(name, np.float64, ("t",))
                var[:] = getattr(traj, name)
            dataset.setncattr("model", json.dumps(traj.model.to_dict()))
            dataset.setncattr("dt", traj.dt)
            dataset.setncattr("T", traj.T)
            dataset.setncattr("method", traj.method.value)
            dataset.setncattr("diverged", int(traj.diverged))
            if traj.blowup_time is not None:
                dataset.setncattr("blowup_time", traj.blowup_time)
        finally:
            dataset.close()


def trajectory_from_nc4(path: PathLike) -> MeanFieldTrajectory:
    """Load a trajectory saved by :func:`trajectory_to_nc4`."""
    path = str(path)
    attributes = _read_attributes(path)
    arrays = open_lazy(path)
    missing = [name for name in _TRAJECTORY_VARIABLES if name not in arrays]
    if missing:
        msg = f"missing trajectory variable(s) {missing}."
        raise FileFormatError(msg, path)
    (values,) = da.compute(
        {name: arrays[name] for name in _TRAJECTORY_VARIABLES},
        scheduler="synchronous",
    )
    blowup_time = attributes.get("blowup_time")
    return MeanFieldTrajectory(
        model=_model_attribute(attributes, path),
        dt=float(attributes["dt"]),
        method=SolverMethod(str(attributes["method"])),
        T=float(attributes["T"]),
        diverged=bool(attributes.get("diverged", 0)),
        blowup_time=None if blowup_time is None else float(blowup_time),
        **values,
    )


def eventlog_to_nc4(log: EventLog, path: PathLike) -> None:
    """Save an event log to a netCDF file."""
    with _GLOBAL_NETCDF4_LIBRARY_THREADLOCK:
        dataset = nc.Dataset(str(path), "w")
        try:
            dataset.createDimension("event", None)
            times = dataset.createVariable("time", np.float64, ("event",))
            neurons = dataset.createVariable("neuron_id", np.int64, ("event",))
            if len(log):
                times[:] = log.times
                neurons[:] = log.neuron_ids
            dataset.setncattr("model", json.dumps(log.model.to_dict()))
            dataset.setncattr("T", log.T)
            dataset.setncattr("N", log.pop.N)
            # as text: uint64 seeds do not fit every netCDF attribute type
            dataset.setncattr("seed", str(log.seed))
        finally:
            dataset.close()


def eventlog_from_nc4(path: PathLike) -> EventLog:
    """Load an event log saved by :func:`eventlog_to_nc4`."""
    path = str(path)
    attributes = _read_attributes(path)
    arrays = open_lazy(path)
    model = _model_attribute(attributes, path)
    times, neurons = da.compute(
        arrays["time"], arrays["neuron_id"], scheduler="synchronous"
    )
    return EventLog(
        times,
        neurons,
        float(attributes["T"]),
        int(attributes["seed"]),
        model,
        PopulationConfig.for_model(model, int(attributes["N"])),
    )
