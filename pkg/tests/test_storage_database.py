import threading
import time

import pandas as pd
import pytest

from database import RunDatabase
from scenarios import get_preset, load_config
from scheduler import RunResult, ScenarioScheduler
from storage import read_csv, write_csv, write_metadata


def test_csv_has_comment_block_then_table(tmp_path):
    frame = pd.DataFrame({"time_per_nu1": [0.0, 0.5], "n_opt1": [1.0, 0.123456789012345]})
    path = write_csv(frame, str(tmp_path / "a" / "trajectory.csv"),
                     {"scenario": "deneme", "code_version": "1.0.0"})
    lines = (tmp_path / "a" / "trajectory.csv").read_text(encoding="utf-8").splitlines()
    assert lines[0] == "# scenario: deneme"
    assert lines[2] == "time_per_nu1,n_opt1"
    assert lines[4] == "0.5,0.123456789012"
    assert read_csv(path)["n_opt1"].iloc[0] == 1.0
    assert not (tmp_path / "a" / "trajectory.csv.tmp").exists()


def test_metadata_is_reloadable_config(tmp_path):
    config = get_preset("fig6-oms")
    path = write_metadata(config.to_sections(), {"config_hash": config.config_hash()},
                          str(tmp_path / "metadata.ini"))
    text = (tmp_path / "metadata.ini").read_text(encoding="utf-8")
    assert "[run]" in text
    assert load_config(path=path).config_hash() == config.config_hash()


def test_run_registry(tmp_path):
    db = RunDatabase(str(tmp_path / "runs.db"))
    first = db.record_run("fig3-nbs", "success", 0, regime="NBS", config_hash="abc",
                          output_dir="results/fig3-nbs", wall_time_s=1.5,
                          metadata={"norm_drift": 1e-10})
    db.record_run("fig4-omc", "failed", 3, regime="OMC", message="Δ1 = ν1")
    runs = db.get_runs()
    assert list(runs["scenario"]) == ["fig4-omc", "fig3-nbs"]
    assert list(db.get_runs(scenario="fig3-nbs")["exit_code"]) == [0]
    record = db.get_run(first)
    assert record["metadata"] == {"norm_drift": 1e-10}
    assert db.get_run(9999) is None


def test_registry_failure_does_not_raise(tmp_path):
    db = RunDatabase(str(tmp_path / "runs.db"))
    (tmp_path / "runs.db").unlink()
    (tmp_path / "runs.db").mkdir()
    assert db.record_run("x", "success", 0) is None


def test_scheduler_keeps_input_order():
    active = []
    lock = threading.Lock()

    def run_one(job):
        with lock:
            active.append(job)
        time.sleep(0.05 * (3 - job))
        return RunResult(f"s{job}", exit_code=0 if job != 1 else 4)

    results = ScenarioScheduler(run_one, threads=3).run_batch([0, 1, 2])
    assert [r.scenario for r in results] == ["s0", "s1", "s2"]
    assert sorted(active) == [0, 1, 2]
    assert ScenarioScheduler.batch_exit_code(results) == 4
    assert results[1].status == "failed"


def test_empty_batch():
    assert ScenarioScheduler(lambda job: RunResult("x")).run_batch([]) == []
    assert ScenarioScheduler.batch_exit_code([RunResult("a"), RunResult("b")]) == 0


@pytest.mark.parametrize("threads", [0, -2])
def test_thread_count_is_at_least_one(threads):
    assert ScenarioScheduler(lambda job: RunResult("x"), threads).threads == 1
