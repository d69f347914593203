"""
Command-line front end.

Usage::

    inhibhawkes simulate --config run.cfg [--seed S] [--out DIR] [--netcdf]
    inhibhawkes meanfield --config run.cfg [--netcdf]
    inhibhawkes analyze --config run.cfg
    inhibhawkes chaos --config run.cfg [--threads K]
    inhibhawkes test-inhibition CONTROL.csv TOXIN.csv [--wash WASH.csv]
    inhibhawkes print-config --config run.cfg

Exit codes: 0 success, 1 configuration error, 2 numerical failure
(explosion, divergence, failed root finding), 3 file input / output error.

"""
import argparse
import dataclasses
import logging
import sys
from pathlib import Path
from typing import List, Optional

import numpy as np

from . import netcdf4, textio
from ._errors import (
    ConfigError,
    ExplosionError,
    FileFormatError,
    InhibHawkesError,
    ModelDomainError,
    UnsupportedModelError,
)
from .config import (
    RunConfig,
    check_meanfield_grid,
    format_config,
    load_config,
)
from .longtime import (
    bracket_check,
    classify_regime,
    limit_hierarchy,
)
from .meanfield import detect_oscillation, solve
from .simulate import (
    Population,
    PopulationConfig,
    empirical_intensity,
    simulate,
    sliding_intensity,
)
from .stats import chaos_experiment, clt_condition, inhibition_test
from .utils import eventlog_differences

__all__ = ["main"]

_LOG = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_NUMERICAL = 2
EXIT_IO = 3


def _configure_logging(verbose: int, quiet: bool) -> None:
    if quiet:
        level = logging.ERROR
    elif verbose >= 2:
        level = logging.DEBUG
    elif verbose == 1:
        level = logging.INFO
    else:
        level = logging.WARNING
    logging.basicConfig(
        level=level, format="%(asctime)s %(name)s %(levelname)s: %(message)s"
    )


def _resolve_config(args: argparse.Namespace) -> RunConfig:
    if args.config is None:
        msg = f"'{args.command}' needs --config PATH."
        raise ConfigError(msg, key="--config")
    config = load_config(args.config)
    overrides = {}
    for name in ("seed", "threads", "level"):
        value = getattr(args, name)
        if value is not None:
            overrides[name] = value
    if args.out is not None:
        overrides["out_dir"] = str(args.out)
    if overrides:
        config = config.replace(**overrides)
    return config


def _out_dir(config: RunConfig) -> Path:
    path = Path(config.out_dir)
    path.mkdir(parents=True, exist_ok=True)
    return path


def cmd_simulate(config: RunConfig, netcdf: bool = False) -> int:
    """Simulate the particle system, writing events.csv and meta.json."""
    model = config.model
    pop = PopulationConfig.for_model(model, config.population_N)
    log = simulate(model, pop, config.T, config.seed, config.event_cap)
    out = _out_dir(config)
    textio.write_events(log, out / "events.csv")
    if netcdf:
        netcdf4.eventlog_to_nc4(log, out / "events.nc")
    if config.window <= config.T:
        times, rates_A = sliding_intensity(log, Population.A, config.window)
        _, rates_B = sliding_intensity(log, Population.B, config.window, times)
        np.savetxt(
            out / "intensity.csv",
            np.column_stack([times, rates_A, rates_B]),
            fmt="%.12g",
            delimiter=",",
            header="t,rate_A,rate_B",
            comments="",
            encoding="utf-8",
        )
    window = (config.burn_in * config.T, config.T)
    if window[1] > window[0]:
        for population in Population:
            if pop.size(population):
                rate = empirical_intensity(log, window, population)
                print(
                    f"late-window rate {population.value}: {rate:.6g}"
                )
    print(f"{len(log)} events written to {out / 'events.csv'}")
    return EXIT_OK


def cmd_meanfield(config: RunConfig, netcdf: bool = False) -> int:
    """
    Solve the mean-field equations and look for a limit cycle.

    Writes trajectory.csv (+ trajectory.json) and oscillation.json.
    """
    check_meanfield_grid(config)
    traj = solve(config.model, config.T, config.dt, method=config.solver)
    out = _out_dir(config)
    textio.write_trajectory(traj, out / "trajectory.csv")
    if netcdf:
        netcdf4.trajectory_to_nc4(traj, out / "trajectory.nc")
    if traj.diverged:
        print(
            f"mean-field solution diverged at t={traj.blowup_time!r}",
            file=sys.stderr,
        )
        return EXIT_NUMERICAL
    report = detect_oscillation(traj, config.burn_in, config.osc_threshold)
    content = report.to_dict()
    if report.oscillating:
        try:
            check = bracket_check(config.model, report)
        except (ModelDomainError, UnsupportedModelError) as error:
            _LOG.info("no bracket check: %s", error)
        else:
            content["bracket"] = dataclasses.asdict(check)
    textio.write_json(content, out / "oscillation.json")
    print(f"oscillating: {str(report.oscillating).lower()}")
    print(f"lambda_B range: [{report.lower_B:.6g}, {report.upper_B:.6g}]")
    return EXIT_OK


def cmd_analyze(config: RunConfig) -> int:
    """Classify the long-time regime, writing report.json."""
    model = config.model
    report = classify_regime(model)
    out = _out_dir(config)
    textio.write_json(report, out / "report.json")
    try:
        hierarchy = limit_hierarchy(model)
    except (ModelDomainError, UnsupportedModelError) as error:
        _LOG.info("no limit hierarchy: %s", error)
    else:
        textio.write_json(hierarchy, out / "hierarchy.json")
    print(f"regime: {report.regime.value}")
    print(f"rule: {report.rule}")
    print(f"reason: {report.reason}")
    if report.limits is not None:
        print(f"ell_A: {report.ell_A!r}")
        print(f"ell_B: {report.ell_B!r}")
    print(f"assumption U: {report.assumption_U.value}")
    print(f"CLT condition: {clt_condition(model).reason}")
    return EXIT_OK


def cmd_chaos(config: RunConfig) -> int:
    """Run the propagation-of-chaos scaling experiment."""
    result = chaos_experiment(
        config.model,
        config.chaos_sizes,
        config.T,
        config.chaos_replicas,
        config.seed,
        dt=config.dt,
        threads=config.threads,
        event_cap=config.event_cap,
    )
    out = _out_dir(config)
    textio.write_json(result, out / "chaos.json")
    textio.write_chaos_records(result, out / "chaos.csv")
    if result.degenerate:
        print("slope: undefined (zero discrepancy)")
    else:
        print(f"slope: {result.slope:.4f}")
    if result.n_excluded:
        print(f"excluded runs: {result.n_excluded}")
    return EXIT_OK


def cmd_test(
    control_path: Path,
    toxin_path: Path,
    level: float,
    neurons: int = 1,
    wash_path: Optional[Path] = None,
    out_dir: Optional[Path] = None,
) -> int:
    """Test for inhibition between two recorded event logs."""
    control = textio.read_events(control_path)
    toxin = textio.read_events(toxin_path)
    wash = None if wash_path is None else textio.read_events(wash_path)
    if not eventlog_differences(control, toxin):
        _LOG.warning("control and toxin recordings are identical")
    result = inhibition_test(control, toxin, level, neurons=neurons, wash=wash)
    if out_dir is not None:
        out_dir = Path(out_dir)
        out_dir.mkdir(parents=True, exist_ok=True)
        textio.write_json(result, out_dir / "test.json")
    print(f"decision: {result.decision.value}")
    print(f"statistic: {result.statistic:.6g}")
    print(f"threshold: {result.threshold:.6g}")
    return EXIT_OK


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", type=Path, help="run configuration file")
    common.add_argument("--seed", type=int, help="override run.seed")
    common.add_argument("--out", type=Path, help="override run.out_dir")
    common.add_argument("--threads", type=int, help="worker processes")
    common.add_argument("--level", type=float, help="test level")
    common.add_argument(
        "-v",
        "--verbose",
        action="count",
        default=0,
        help="log progress (repeat for debug output)",
    )
    common.add_argument(
        "-q", "--quiet", action="store_true", help="log errors only"
    )

    parser = argparse.ArgumentParser(
        prog="inhibhawkes",
        description="Hawkes processes with multiplicative inhibition.",
    )
    commands = parser.add_subparsers(dest="command", required=True)
    for name, help_text in (
        ("simulate", "simulate the N-neuron system"),
        ("meanfield", "solve the mean-field equations"),
    ):
        sub = commands.add_parser(name, parents=[common], help=help_text)
        sub.add_argument(
            "--netcdf", action="store_true", help="also write netCDF output"
        )
    commands.add_parser(
        "analyze", parents=[common], help="classify the long-time regime"
    )
    commands.add_parser(
        "chaos", parents=[common], help="propagation-of-chaos experiment"
    )
    commands.add_parser(
        "print-config",
        parents=[common],
        help="print the configuration with all defaults",
    )
    test = commands.add_parser(
        "test-inhibition",
        parents=[common],
        help="test for an inhibitive effect between two recordings",
    )
    test.add_argument("control", type=Path, help="control events.csv")
    test.add_argument("toxin", type=Path, help="toxin events.csv")
    test.add_argument("--wash", type=Path, help="wash-out events.csv")
    test.add_argument(
        "--neurons", type=int, help="number of A neurons to average"
    )
    return parser


def _run(args: argparse.Namespace) -> int:
    if args.command == "test-inhibition":
        level, neurons, out_dir = 0.05, 1, args.out
        if args.config is not None:
            config = _resolve_config(args)
            level, neurons = config.level, config.neurons
            out_dir = Path(config.out_dir)
        if args.level is not None:
            level = args.level
        if args.neurons is not None:
            neurons = args.neurons
        return cmd_test(
            args.control, args.toxin, level, neurons, args.wash, out_dir
        )

    config = _resolve_config(args)
    if args.command == "print-config":
        sys.stdout.write(format_config(config))
        return EXIT_OK
    if args.command == "simulate":
        return cmd_simulate(config, netcdf=args.netcdf)
    if args.command == "meanfield":
        return cmd_meanfield(config, netcdf=args.netcdf)
    if args.command == "analyze":
        return cmd_analyze(config)
    return cmd_chaos(config)


def main(argv: Optional[List[str]] = None) -> int:
    """Run the command line; returns the exit code."""
    args = _build_parser().parse_args(argv)
    _configure_logging(args.verbose, args.quiet)
    try:
        return _run(args)
    except ConfigError as error:
        print(f"configuration error: {error}", file=sys.stderr)
        return EXIT_CONFIG
    except ExplosionError as error:
        print(
            f"explosion guard: {error} (t={error.time!r}, "
            f"events={error.n_events})",
            file=sys.stderr,
        )
        return EXIT_NUMERICAL
    except (FileFormatError, OSError) as error:
        print(f"file error: {error}", file=sys.stderr)
        return EXIT_IO
    except InhibHawkesError as error:
        print(f"error: {error}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
