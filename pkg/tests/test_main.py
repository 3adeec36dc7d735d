import numpy as np
import pytest

import dynamics
import main as main_module
from analysis import PeriodEstimate, period_mec, period_optical_bs
from fock_space import Frame, StateKind
from main import ScenarioRunner, build_parser, main, run_scenario
from scenarios import load_config
from settings import Settings
from storage import read_csv

SHORT_NBS = ["--preset", "fig3-nbs", "--override", "time.t1_per_nu1=8", "--override", "time.n_samples=161"]


@pytest.fixture(autouse=True)
def clean_environment(monkeypatch):
    for name in ("LOG_FILE", "OUTPUT_DIR", "DATABASE_PATH", "MAX_HILBERT_DIM", "WORKER_THREADS"):
        monkeypatch.delenv(name, raising=False)


def settings_for(tmp_path, **changes):
    values = dict(log_level="INFO", log_file=None, max_hilbert_dim=200_000,
                  output_dir=str(tmp_path), database_path=str(tmp_path / "runs.db"), worker_threads=1)
    values.update(changes)
    return Settings(**values)


def test_parser_requires_subcommand():
    with pytest.raises(SystemExit):
        build_parser().parse_args([])


def test_presets_listing(capsys):
    assert main(["presets"]) == 0
    output = capsys.readouterr().out
    assert "paper-device" in output
    assert output.index("fig3-nbs") < output.index("rwa-validation")


def test_run_without_target_is_config_error(tmp_path):
    assert main(["run", "--out", str(tmp_path)]) == 2


def test_bad_config_writes_nothing(tmp_path):
    path = tmp_path / "bozuk.ini"
    path.write_text("[params]\ngamma = 1\n", encoding="utf-8")
    out = tmp_path / "out"
    assert main(["run", "--config", str(path), "--preset", "fig3-nbs", "--out", str(out)]) == 2
    assert not out.exists()


def test_regime_violation_exit_code(tmp_path):
    code = main(["run", *SHORT_NBS, "--override", "params.omega_d1_rad_per_sec=49.5",
                 "--out", str(tmp_path)])
    assert code == 3
    assert not (tmp_path / "fig3-nbs" / "trajectory.csv").exists()


def test_capacity_exit_code(tmp_path):
    code = main(["run", *SHORT_NBS, "--override", "space.cutoffs=30,30,30,30", "--out", str(tmp_path)])
    assert code == 4


def test_integrator_failure_exit_code(tmp_path, monkeypatch):
    class Failed:
        status, success, message, nfev = -1, False, "adım boyutu sıfıra indi", 0
        t = np.array([0.0, 1.5])

    monkeypatch.setattr(dynamics, "solve_ivp", lambda *args, **kwargs: Failed())
    code = main(["run", "--preset", "fig4-omc", "--out", str(tmp_path)])
    assert code == 5


def test_successful_run_writes_outputs_and_registry(tmp_path, capsys):
    assert main(["run", *SHORT_NBS, "--out", str(tmp_path)]) == 0
    scenario_dir = tmp_path / "fig3-nbs"
    trajectory = read_csv(str(scenario_dir / "trajectory.csv"))
    assert list(trajectory.columns[:5]) == ["time_per_nu1", "n_opt1", "n_opt2", "n_mec1", "n_mec2"]
    assert len(trajectory) == 161
    header = (scenario_dir / "trajectory.csv").read_text(encoding="utf-8")
    assert "# regime: NBS" in header
    assert "# time_unit: 1/nu1" in header

    reloaded = load_config(path=str(scenario_dir / "metadata.ini"))
    assert reloaded.config_hash() == load_config(preset="fig3-nbs", overrides=SHORT_NBS[3::2]).config_hash()

    periods = read_csv(str(scenario_dir / "periods.csv"))
    decay = periods[periods["kind"] == "optical-decay"].iloc[0]
    assert decay["measured"] == pytest.approx(0.09, rel=0.05)

    capsys.readouterr()
    assert main(["history", "--out", str(tmp_path)]) == 0
    assert "fig3-nbs" in capsys.readouterr().out


def test_batch_exit_code_is_first_failure(tmp_path):
    bad = tmp_path / "rejim.ini"
    bad.write_text("[scenario]\npreset = fig4-omc\nname = bozuk-omc\n\n[params]\nomega_d1_rad_per_sec = 50\n",
                   encoding="utf-8")
    code = main(["run", "--config", str(bad), *SHORT_NBS, "--threads", "2", "--out", str(tmp_path)])
    assert code == 3
    assert (tmp_path / "fig3-nbs" / "trajectory.csv").exists()


def test_scan_command(tmp_path, capsys):
    code = main(["scan", "--preset", "fig3-nbs", "--override", "scenario.losses=false",
                 "--override", "time.t1_per_nu1=2", "--override", "time.n_samples=21",
                 "--cutoff-ladder", "1,1,1,1|2,2,1,1|3,3,1,1", "--tolerance", "1e-7",
                 "--out", str(tmp_path)])
    assert code == 0
    table = read_csv(str(tmp_path / "fig3-nbs" / "convergence.csv"))
    assert list(table["cutoffs"]) == ["1,1,1,1", "2,2,1,1", "3,3,1,1"]
    assert list(table["converged"]) == [False, True, False]


def test_scan_rejects_decreasing_ladder(tmp_path):
    code = main(["scan", "--preset", "fig3-nbs", "--cutoff-ladder", "2,2,2,2|1,1,1,1",
                 "--out", str(tmp_path)])
    assert code == 2


def test_runner_reports_rwa_deviation(tmp_path):
    runner = ScenarioRunner(settings_for(tmp_path))
    config = load_config(preset="rwa-validation", overrides=["time.t1_per_nu1=2", "time.n_samples=101"])
    report = runner.rwa_report(config, runner.simulate(config))
    assert report["within_bound"].all()
    assert report["bound"].iloc[0] == pytest.approx(0.05 / 40.0)


def test_runner_hierarchy_report(tmp_path):
    runner = ScenarioRunner(settings_for(tmp_path))
    config = load_config(preset="paper-device", overrides=["time.t1_per_nu1=2", "time.n_samples=21"])
    result = runner.execute(config, str(tmp_path))
    assert result.exit_code == 0
    hierarchy = read_csv(str(tmp_path / "paper-device" / "hierarchy.csv"))
    assert hierarchy["in_band"].all()


def test_run_scenario_api(tmp_path):
    settings = settings_for(tmp_path)
    result = run_scenario(preset="fig3-nbs", overrides=SHORT_NBS[3::2], settings=settings)
    assert result.exit_code == 0
    assert result.summary["trace_drift"] <= 1e-7
    assert (tmp_path / "fig3-nbs" / "metadata.ini").exists()

    failed = run_scenario(config_path=str(tmp_path / "yok.ini"), settings=settings)
    assert failed.exit_code == 2
    assert failed.status == "failed"


def test_period_predictions_share_mechanical_occupations(tmp_path, monkeypatch):
    runner = ScenarioRunner(settings_for(tmp_path))
    assert runner.period_occupations(load_config(preset="fig3-nbs-mec1")) == (0, 1)
    assert runner.period_occupations(load_config(preset="fig5-omc")) == (0, 0)

    config = load_config(preset="fig5-omc", overrides=["outputs.periods=optical,mec",
                                                       "outputs.period_occupations=1,0"])
    monkeypatch.setattr(main_module, "extract_period",
                        lambda *args, **kwargs: PeriodEstimate(1.0, 0.0, np.array([0.0, 1.0])))
    times = np.linspace(0.0, 1.0, 11)
    trajectory = dynamics.Trajectory(times, {"n_opt1": np.zeros(11), "n_mec1": np.zeros(11)},
                                     Frame.POLARON_ROTATING, StateKind.PURE)
    report = runner.period_report(config, trajectory).set_index("kind")
    params = runner.scaled_params(config)
    assert report.loc["optical-exchange", "predicted"] == pytest.approx(
        period_optical_bs(params, 1, 0).observed_period)
    assert report.loc["mechanical-exchange", "predicted"] == pytest.approx(
        period_mec(params, 1, 0).observed_period)
