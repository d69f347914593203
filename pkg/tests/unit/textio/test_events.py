"""
Tests for :func:`inhibhawkes.textio.write_events` and
:func:`inhibhawkes.textio.read_events`.
"""
import json

import numpy as np
import pytest

from inhibhawkes import FileFormatError
from inhibhawkes.simulate import EventLog, PopulationConfig, simulate
from inhibhawkes.textio import EVENTS_HEADER, read_events, write_events
from inhibhawkes.utils import eventlog_differences
from tests import poisson_model, polynomial_model


@pytest.fixture
def log():
    return simulate(polynomial_model(), PopulationConfig(20, 0.8), 1.0, 3)


class Test_write_events:
    def test_layout(self, log, tmp_path):
        path = write_events(log, tmp_path / "events.csv")
        lines = path.read_text(encoding="utf-8").splitlines()
        assert lines[0] == EVENTS_HEADER
        assert len(lines) == len(log) + 1
        time, neuron, population = lines[1].split(",")
        # nine fractional digits
        assert len(time.split(".")[1]) == 9
        assert int(neuron) == log.neuron_ids[0]
        assert population == log.populations[0]

    def test_meta(self, log, tmp_path):
        write_events(log, tmp_path / "events.csv")
        meta = json.loads((tmp_path / "meta.json").read_text())
        assert meta["seed"] == 3
        assert meta["T"] == 1.0
        assert (meta["N"], meta["N_A"]) == (20, 16)
        assert meta["n_events"] == len(log)
        assert meta["model"] == polynomial_model().to_dict()


class Test_read_events:
    def test_reads_back(self, log, tmp_path):
        path = write_events(log, tmp_path / "events.csv")
        result = read_events(path)
        assert len(result) == len(log)
        np.testing.assert_allclose(result.times, log.times, rtol=0, atol=1e-9)
        np.testing.assert_array_equal(result.neuron_ids, log.neuron_ids)
        assert result.model == log.model
        assert (result.pop, result.T, result.seed) == (log.pop, 1.0, 3)

    def test_exact_times(self, tmp_path):
        # times with few decimals survive the text form unchanged
        pop = PopulationConfig(5, 0.8)
        log = EventLog([0.5, 1.25], [0, 4], 2.0, 7, poisson_model(), pop)
        result = read_events(write_events(log, tmp_path / "events.csv"))
        assert eventlog_differences(result, log, check_seed=True) == []

    def test_explicit_meta(self, log, tmp_path):
        csv_path = tmp_path / "events.csv"
        meta_path = tmp_path / "other.json"
        write_events(log, csv_path, meta_path)
        assert not (tmp_path / "meta.json").exists()
        assert read_events(csv_path, meta_path).seed == 3

    def test_empty(self, tmp_path):
        log = EventLog(
            [], [], 2.0, 0, poisson_model(), PopulationConfig(5, 0.8)
        )
        path = write_events(log, tmp_path / "events.csv")
        result = read_events(path)
        assert len(result) == 0
        assert result.T == 2.0


class Test_read_events__errors:
    def _write(self, log, tmp_path, edit):
        path = write_events(log, tmp_path / "events.csv")
        text = path.read_text(encoding="utf-8")
        path.write_text(edit(text), encoding="utf-8")
        return path

    def test_header(self, log, tmp_path):
        path = self._write(
            log, tmp_path, lambda text: text.replace("neuron_id", "id")
        )
        with pytest.raises(FileFormatError, match="expected header"):
            read_events(path)

    def test_bad_row(self, log, tmp_path):
        path = self._write(log, tmp_path, lambda text: text + "x,y,A\n")
        with pytest.raises(FileFormatError, match="events.csv"):
            read_events(path)

    def test_wrong_population(self, tmp_path):
        pop = PopulationConfig(5, 0.8)
        log = EventLog([1.0], [4], 2.0, 0, poisson_model(), pop)
        path = self._write(
            log, tmp_path, lambda text: text.replace(",4,B", ",4,A")
        )
        with pytest.raises(FileFormatError, match="population column"):
            read_events(path)

    def test_missing_meta_key(self, log, tmp_path):
        path = write_events(log, tmp_path / "events.csv")
        meta_path = tmp_path / "meta.json"
        meta = json.loads(meta_path.read_text())
        del meta["seed"]
        meta_path.write_text(json.dumps(meta))
        with pytest.raises(FileFormatError, match="missing key 'seed'"):
            read_events(path)

    def test_bad_json(self, log, tmp_path):
        path = write_events(log, tmp_path / "events.csv")
        (tmp_path / "meta.json").write_text("{not json")
        with pytest.raises(FileFormatError, match="meta.json"):
            read_events(path)

    def test_no_file(self, tmp_path):
        with pytest.raises(OSError):
            read_events(tmp_path / "events.csv")
