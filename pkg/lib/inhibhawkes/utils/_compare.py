"""
Comparison of simulation results.

Each routine returns a list of difference strings, empty when the inputs
match.  Used to check determinism and to spot identical recordings.
"""
from typing import List

import numpy as np

from ..meanfield import MeanFieldTrajectory
from ..simulate import EventLog


def _array_differences(
    name: str,
    values1: np.ndarray,
    values2: np.ndarray,
    show_n_first_different: int,
    rtol: float = 0.0,
) -> List[str]:
    if values1.shape != values2.shape:
        return [
            f"{name} lengths differ: {values1.size} != {values2.size}"
        ]
    if rtol:
        same = np.isclose(values1, values2, rtol=rtol, atol=0.0)
    else:
        same = values1 == values2
    diff_inds = np.flatnonzero(~same)
    n_diffs = diff_inds.size
    if not n_diffs:
        return []
    ellps = ", ..." if n_diffs > show_n_first_different else ""
    shown = diff_inds[:show_n_first_different]
    lhs = ", ".join(repr(value) for value in values1[shown].tolist())
    rhs = ", ".join(repr(value) for value in values2[shown].tolist())
    inds = ", ".join(str(ind) for ind in shown)
    return [
        f"{name} differ, at {n_diffs} points: @INDICES[{inds}{ellps}] : "
        f"LHS=[{lhs}{ellps}], RHS=[{rhs}{ellps}]"
    ]


def _check_show_n(show_n_first_different: int) -> int:
    show_n_first_different = int(show_n_first_different)
    if show_n_first_different < 1:
        msg = (
            "'show_n_first_different' must be >=1 : "
            f"got {show_n_first_different!r}."
        )
        raise ValueError(msg)
    return show_n_first_different


def eventlog_differences(
    log1: EventLog,
    log2: EventLog,
    check_seed: bool = False,
    show_n_first_different: int = 2,
) -> List[str]:
    """
    Compare two event logs.

    Parameters
    ----------
    log1, log2 : EventLog
        logs to compare
    check_seed : bool, default False
        whether differing seeds count as a difference
    show_n_first_different : int, default 2
        number of differing events to display

    Returns
    -------
    errs : list of str
        descriptions of the differences, empty if none
    """
    show_n = _check_show_n(show_n_first_different)
    errs = []
    if log1.model != log2.model:
        errs.append(f"models differ: {log1.model!r} != {log2.model!r}")
    if log1.pop != log2.pop:
        errs.append(f"populations differ: {log1.pop!r} != {log2.pop!r}")
    if log1.T != log2.T:
        errs.append(f"horizons differ: {log1.T!r} != {log2.T!r}")
    if check_seed and log1.seed != log2.seed:
        errs.append(f"seeds differ: {log1.seed!r} != {log2.seed!r}")
    errs += _array_differences("event times", log1.times, log2.times, show_n)
    errs += _array_differences(
        "event neuron ids", log1.neuron_ids, log2.neuron_ids, show_n
    )
    return errs


def trajectory_differences(
    traj1: MeanFieldTrajectory,
    traj2: MeanFieldTrajectory,
    rtol: float = 0.0,
    show_n_first_different: int = 2,
) -> List[str]:
    """
    Compare two mean-field trajectories.

    Values are compared exactly by default, or to a relative tolerance.
    """
    show_n = _check_show_n(show_n_first_different)
    errs = []
    if traj1.model != traj2.model:
        errs.append(f"models differ: {traj1.model!r} != {traj2.model!r}")
    if traj1.dt != traj2.dt:
        errs.append(f"grid steps differ: {traj1.dt!r} != {traj2.dt!r}")
    if traj1.diverged != traj2.diverged:
        errs.append(
            f"divergence differs: {traj1.diverged!r} != {traj2.diverged!r}"
        )
    for name in ("lambda_A", "lambda_B", "m_A", "m_B"):
        errs += _array_differences(
            name,
            getattr(traj1, name),
            getattr(traj2, name),
            show_n,
            rtol=rtol,
        )
    return errs
