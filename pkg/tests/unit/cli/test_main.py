"""Tests for :func:`inhibhawkes.cli.main`."""
import json

import pytest

from inhibhawkes.cli import EXIT_CONFIG, EXIT_IO, EXIT_NUMERICAL, EXIT_OK, main
from inhibhawkes.config import format_config, parse_config
from inhibhawkes.textio import EVENTS_HEADER

_MODEL = """\
model.alpha = 0.8
model.mu_A = 10
model.mu_B = 1
model.kappas = 1.5, 0.5, 0.5, 1.0
model.phi_BA = polynomial(tau=1, beta=1)
model.phi_AB = identity
"""


@pytest.fixture
def write_config(tmp_path):
    def write(text, name="run.cfg"):
        path = tmp_path / name
        path.write_text(text, encoding="utf-8")
        return path

    return write


@pytest.fixture
def run_config(write_config, tmp_path):
    out = tmp_path / "out"
    return write_config(
        _MODEL
        + "population.N = 20\nrun.T = 2\nrun.seed = 5\n"
        + f"run.out_dir = '{out}'\n"
    )


class Test_print_config:
    def test_output(self, run_config, capsys):
        assert main(["print-config", "--config", str(run_config)]) == EXIT_OK
        text = capsys.readouterr().out
        assert "model.h1 = indicator(theta=1.875)" in text
        assert parse_config(text) == parse_config(run_config.read_text())

    def test_override(self, run_config, capsys):
        args = ["print-config", "--config", str(run_config), "--seed", "9"]
        assert main(args) == EXIT_OK
        assert parse_config(capsys.readouterr().out).seed == 9


class Test_simulate:
    def test_outputs(self, run_config, tmp_path, capsys):
        assert main(["simulate", "--config", str(run_config)]) == EXIT_OK
        out = tmp_path / "out"
        assert (out / "events.csv").exists()
        assert (out / "meta.json").exists()
        assert (out / "intensity.csv").read_text().startswith(
            "t,rate_A,rate_B\n"
        )
        text = capsys.readouterr().out
        assert "late-window rate A:" in text
        assert "events written to" in text

    def test_out_and_netcdf(self, run_config, tmp_path):
        other = tmp_path / "other"
        args = ["simulate", "--config", str(run_config), "--out", str(other)]
        assert main(args + ["--netcdf"]) == EXIT_OK
        assert (other / "events.nc").exists()
        assert not (tmp_path / "out").exists()

    def test_zero_rate(self, write_config, tmp_path):
        path = write_config(
            "model.alpha = 0.8\nmodel.mu_A = 0\nmodel.mu_B = 0\n"
            f"population.N = 10\nrun.T = 5\nrun.out_dir = '{tmp_path}'\n"
        )
        assert main(["simulate", "--config", str(path)]) == EXIT_OK
        text = (tmp_path / "events.csv").read_text(encoding="utf-8")
        assert text.splitlines() == [EVENTS_HEADER]

    def test_explosion(self, run_config, write_config, capsys):
        text = run_config.read_text() + "run.event_cap = 10\n"
        path = write_config(text, "capped.cfg")
        assert main(["simulate", "--config", str(path)]) == EXIT_NUMERICAL
        assert "explosion guard" in capsys.readouterr().err


class Test_meanfield:
    def test_outputs(self, run_config, write_config, tmp_path, capsys):
        # long enough for the damped transient to settle
        path = write_config(
            run_config.read_text().replace("run.T = 2", "run.T = 50"),
            "long.cfg",
        )
        assert main(["meanfield", "--config", str(path)]) == EXIT_OK
        out = tmp_path / "out"
        assert (out / "trajectory.csv").exists()
        assert (out / "trajectory.json").exists()
        report = json.loads((out / "oscillation.json").read_text())
        assert report["oscillating"] is False
        assert "oscillating: false" in capsys.readouterr().out

    def test_diverged(self, write_config, tmp_path, capsys):
        path = write_config(
            "model.alpha = 0.8\nmodel.mu_A = 10\n"
            "model.kappas = 1.5, 0, 0.5, 0\n"
            "model.kernel_family = exponential\n"
            f"run.T = 100\nrun.out_dir = '{tmp_path / 'out'}'\n"
        )
        assert main(["meanfield", "--config", str(path)]) == EXIT_NUMERICAL
        assert "diverged" in capsys.readouterr().err

    def test_coarse_step(self, write_config, tmp_path, capsys):
        path = write_config(
            "model.alpha = 0.8\nmodel.mu_A = 1\n"
            "model.h1 = indicator(theta=0.005)\n"
            f"run.T = 1\nrun.dt = 0.01\nrun.out_dir = '{tmp_path / 'out'}'\n"
        )
        assert main(["meanfield", "--config", str(path)]) == EXIT_CONFIG
        err = capsys.readouterr().err
        assert "configuration error" in err
        assert "indicator" in err
        assert not (tmp_path / "out").exists()


class Test_analyze:
    def test_outputs(self, run_config, tmp_path, capsys):
        assert main(["analyze", "--config", str(run_config)]) == EXIT_OK
        out = tmp_path / "out"
        report = json.loads((out / "report.json").read_text())
        assert report["regime"] == "FullCoupledConvergent"
        assert (out / "hierarchy.json").exists()
        text = capsys.readouterr().out
        assert "regime: FullCoupledConvergent" in text
        assert "rule: full_coupling.convergence" in text
        assert "reason: full coupling convergence" in text
        assert "CLT condition: kappa1=1.5 >= 1" in text


class Test_chaos:
    def test_outputs(self, write_config, tmp_path, capsys):
        path = write_config(
            "model.alpha = 0.8\nmodel.mu_A = 2\nmodel.mu_B = 1\n"
            "model.kappas = 0.5, 0, 0.5, 0\n"
            "model.kernel_family = exponential\n"
            "run.T = 1\nchaos.sizes = 10, 20, 40\nchaos.replicas = 5\n"
            f"run.out_dir = '{tmp_path / 'out'}'\n"
        )
        assert main(["chaos", "--config", str(path)]) == EXIT_OK
        assert (tmp_path / "out" / "chaos.json").exists()
        lines = (tmp_path / "out" / "chaos.csv").read_text().splitlines()
        assert len(lines) == 16
        assert "slope:" in capsys.readouterr().out


class Test_test_inhibition:
    def _record(self, write_config, tmp_path, name, phi, seed):
        text = (
            "model.alpha = 0.8\nmodel.mu_A = 10\nmodel.mu_B = 1\n"
            "model.kappas = 0.5, 0.5, 0.5, 0\n"
            f"model.phi_BA = {phi}\n"
            f"population.N = 200\nrun.T = 10\nrun.seed = {seed}\n"
            f"run.out_dir = '{tmp_path / name}'\n"
        )
        path = write_config(text, f"{name}.cfg")
        assert main(["simulate", "--config", str(path)]) == EXIT_OK
        return tmp_path / name / "events.csv"

    def test_decision(self, write_config, tmp_path, capsys):
        control = self._record(write_config, tmp_path, "control", "one", 1)
        toxin = self._record(
            write_config, tmp_path, "toxin", "polynomial(tau=1, beta=1)", 2
        )
        capsys.readouterr()
        args = ["test-inhibition", str(control), str(toxin)]
        args += ["--out", str(tmp_path / "test")]
        assert main(args) == EXIT_OK
        assert "decision: RejectH0" in capsys.readouterr().out
        result = json.loads((tmp_path / "test" / "test.json").read_text())
        assert result["decision"] == "RejectH0"

    def test_identical(self, run_config, tmp_path, capsys):
        assert main(["simulate", "--config", str(run_config)]) == EXIT_OK
        path = str(tmp_path / "out" / "events.csv")
        capsys.readouterr()
        assert main(["test-inhibition", path, path]) == EXIT_OK
        assert "decision: AcceptH0" in capsys.readouterr().out

    def test_missing_file(self, tmp_path, capsys):
        args = ["test-inhibition", str(tmp_path / "a.csv"), str(tmp_path)]
        assert main(args) == EXIT_IO
        assert "file error" in capsys.readouterr().err

    def test_bad_file(self, tmp_path, capsys):
        (tmp_path / "events.csv").write_text("t,id\n")
        (tmp_path / "meta.json").write_text("{}")
        path = str(tmp_path / "events.csv")
        assert main(["test-inhibition", path, path]) == EXIT_IO


class Test_errors:
    def test_bad_config(self, write_config, capsys):
        path = write_config("model.alpha = 2\n")
        assert main(["analyze", "--config", str(path)]) == EXIT_CONFIG
        err = capsys.readouterr().err
        assert "configuration error: line 1, column 15" in err

    def test_missing_alpha(self, write_config, capsys):
        path = write_config("model.mu_A = 1\n")
        assert main(["analyze", "--config", str(path)]) == EXIT_CONFIG
        assert "model.alpha" in capsys.readouterr().err

    def test_no_config(self, capsys):
        assert main(["analyze"]) == EXIT_CONFIG
        assert "needs --config" in capsys.readouterr().err

    def test_missing_config_file(self, tmp_path):
        args = ["analyze", "--config", str(tmp_path / "none.cfg")]
        assert main(args) == EXIT_IO

    def test_unknown_command(self):
        with pytest.raises(SystemExit):
            main(["fly"])

    def test_format_is_valid_config(self, run_config, write_config):
        config = parse_config(run_config.read_text())
        path = write_config(format_config(config), "full.cfg")
        assert main(["print-config", "--config", str(path), "-q"]) == EXIT_OK
