"""
Optomekanik Simülasyon Ana Sistemi

Bu modül, senaryo konfigürasyonlarını okuyup tam simülasyon pipeline'ını çalıştırır:
- run: senaryo(lar)ı çalıştırır, trajectory CSV + metadata + raporları yazar
- presets: yerleşik ön ayarları listeler
- scan: cutoff / seri mertebesi yakınsama taraması
- history: çalıştırma kayıtlarını gösterir

Çıkış kodları: 0 başarı, 2 konfigürasyon, 3 rejim ihlali, 4 kapasite, 5 integratör.
"""

import argparse
import logging
import math
import os
import sys
import time
from dataclasses import replace
from datetime import datetime
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd

from analysis import (
    check_mechanical_growth,
    convergence_scan,
    coupling_hierarchy,
    extract_period,
    fit_decay_rate,
    period_mec,
    period_om,
    period_optical_bs,
    squeezing_window,
)
from database import RunDatabase
from dynamics import (
    Trajectory,
    build_initial_state,
    propagate_lindblad,
    propagate_schrodinger,
)
from exceptions import (
    ConfigError,
    DegenerateCouplingError,
    InsufficientOscillationError,
    OptomechError,
    UndefinedPeriodError,
)
from fock_space import build_space
from hamiltonians import build_hamiltonian, drive_collapse_ops
from parameters import ModelParams, Regime
from scenarios import ScenarioConfig, list_presets, load_config
from scheduler import RunResult, ScenarioScheduler
from settings import CODE_VERSION, Settings, get_settings
from storage import write_csv, write_metadata

logger = logging.getLogger(__name__)

# Bu kategoriler ölçüm raporunu düşürür, çalıştırmayı değil
MEASUREMENT_ERRORS = (InsufficientOscillationError, UndefinedPeriodError, DegenerateCouplingError)


def setup_logging(settings: Settings) -> None:
    """Logging ayarları"""
    handlers = [logging.StreamHandler()]
    if settings.log_file:
        handlers.append(logging.FileHandler(settings.log_file, encoding="utf-8"))
    logging.basicConfig(
        level=getattr(logging, settings.log_level, logging.INFO),
        format="%(asctime)s - %(levelname)s - %(message)s",
        handlers=handlers,
    )


class ScenarioRunner:
    """Senaryo simülasyon pipeline'ı"""

    def __init__(self, settings: Optional[Settings] = None, database: Optional[RunDatabase] = None):
        """
        Args:
            settings: Çalışma zamanı ayarları (varsayılan: environment)
            database: Çalıştırma kaydı; None ise kayıt tutulmaz
        """
        self.settings = settings or get_settings()
        self.database = database

    @staticmethod
    def scaled_params(config: ScenarioConfig) -> ModelParams:
        """ν₁ birimine ölçeklenmiş, kayıp anahtarı uygulanmış parametreler"""
        return config.effective_params().scaled(config.params.nu[0])

    def simulate(self, config: ScenarioConfig, cutoffs=None,
                 series_order: Optional[int] = None) -> Trajectory:
        """
        Senaryonun zaman evrimini hesaplar

        Args:
            config: Senaryo
            cutoffs: Verilirse senaryo cutoff'ları yerine kullanılır
            series_order: Verilirse polaron serisi mertebesi

        Returns:
            Trajectory: ν₁ birimli zamanlarda gözlenebilirler
        """
        config = config.with_series_order(series_order)
        params = self.scaled_params(config)
        space = build_space(cutoffs or config.cutoffs, self.settings.max_hilbert_dim)
        hamiltonian = build_hamiltonian(config.regime, params, space)
        state = build_initial_state(space, config.state, config.frame)

        if config.uses_density_matrix:
            if space.dim > 400:
                logger.warning(f"⚠️ Yoğunluk matrisi için dim={space.dim} büyük (≈400 önerilir)")
            return propagate_lindblad(hamiltonian, drive_collapse_ops(params, space), state, config.grid)
        return propagate_schrodinger(hamiltonian, state, config.grid)

    # Raporlar
    @staticmethod
    def period_occupations(config: ScenarioConfig) -> Tuple[int, int]:
        """Periyot tahminlerindeki mekanik doluluklar: açıkça verilen ya da baskın terimdeki"""
        return tuple(config.outputs.period_occupations or config.state.leading_occupations[2:])

    def period_report(self, config: ScenarioConfig, trajectory: Trajectory) -> pd.DataFrame:
        """Ölçülen periyotları kapalı form tahminlerle karşılaştırır"""
        params = self.scaled_params(config)
        occupations = self.period_occupations(config)
        rows = []

        for kind in config.outputs.periods:
            try:
                if kind == "optical":
                    prediction = period_optical_bs(params, *occupations)
                    observable = "n_opt1"
                    estimate = extract_period(trajectory, observable)
                elif kind in ("om1", "om2"):
                    j = int(kind[-1])
                    prediction = period_om(params, j)
                    observable = f"n_opt{j}"
                    estimate = extract_period(trajectory, observable)
                else:
                    prediction = period_mec(params, *occupations)
                    observable = "n_opt1+n_mec1"
                    window = period_om(params, 1).observed_period
                    estimate = extract_period(trajectory["n_opt1"] + trajectory["n_mec1"],
                                              times=trajectory.times, smooth_window=window)
            except MEASUREMENT_ERRORS as e:
                logger.warning(f"⚠️ {kind} periyodu ölçülemedi: {e}")
                rows.append({"kind": kind, "observable": "", "closed_form": math.nan,
                             "predicted": math.nan, "measured": math.nan, "uncertainty": math.nan,
                             "relative_error": math.nan, "note": str(e)})
                continue

            predicted = prediction.observed_period
            rows.append({
                "kind": prediction.label,
                "observable": observable,
                "closed_form": prediction.value,
                "predicted": predicted,
                "measured": estimate.period,
                "uncertainty": estimate.uncertainty,
                "relative_error": abs(estimate.period - predicted) / predicted,
                "note": f"{estimate.n_peaks} tepe",
            })

        if config.outputs.decay_fit:
            total = trajectory["n_opt1"] + trajectory["n_opt2"]
            rate = fit_decay_rate(total, times=trajectory.times)
            expected = params.kappa_opt[0]
            rows.append({
                "kind": "optical-decay",
                "observable": "n_opt1+n_opt2",
                "closed_form": expected,
                "predicted": expected,
                "measured": rate,
                "uncertainty": math.nan,
                "relative_error": abs(rate - expected) / expected if expected else math.nan,
                "note": "sönüm oranı [ν₁]",
            })
        return pd.DataFrame(rows)

    def rwa_report(self, config: ScenarioConfig, trajectory: Trajectory) -> pd.DataFrame:
        """Laboratuvar ve dönen çerçeve doluluklarının farkı, Ω/(ω+ω_d) sınırına göre"""
        rotating = replace(config, regime=replace(config.regime, regime=Regime.ROTATING))
        reference = self.simulate(rotating)
        params = self.scaled_params(config)
        bound = max(params.drive[j] / (params.omega[j] + params.omega_d[j])
                    for j in (0, 1) if params.omega[j] + params.omega_d[j] > 0)

        rows = []
        for name in ("n_opt1", "n_opt2", "n_mec1", "n_mec2"):
            deviation = float(np.abs(trajectory[name] - reference[name]).max())
            rows.append({"observable": name, "max_deviation": deviation, "bound": bound,
                         "within_bound": bool(deviation <= bound)})
        return pd.DataFrame(rows)

    def growth_report(self, config: ScenarioConfig, trajectory: Trajectory) -> pd.DataFrame:
        params = self.scaled_params(config)
        t_max = squeezing_window(params, [occupations[2:] for _, occupations in config.state.terms])
        report = check_mechanical_growth(trajectory, t_max=t_max)
        return pd.DataFrame([{
            "window_end": report.window_end,
            "leak_time": report.leak_time if report.leak_time is not None else math.nan,
            "non_decreasing": report.non_decreasing,
        }])

    def scan(self, config: ScenarioConfig, cutoff_ladder=None, series_ladder=None,
             tolerance: Optional[float] = None):
        """Senaryo için yakınsama taraması (analysis.convergence_scan)"""
        cutoff_ladder = cutoff_ladder or config.outputs.cutoff_ladder or (
            config.cutoffs, tuple(c + 1 for c in config.cutoffs))
        series_ladder = series_ladder or config.outputs.series_ladder or None
        tolerance = tolerance if tolerance is not None else config.outputs.scan_tolerance
        return convergence_scan(lambda cutoffs, order: self.simulate(config, cutoffs, order),
                                cutoff_ladder, series_ladder, tolerance=tolerance)

    # Pipeline
    def _provenance(self, config: ScenarioConfig) -> Dict[str, object]:
        return {
            "scenario": config.name,
            "regime": config.regime.regime.value,
            "frame": config.frame.value,
            "time_unit": "1/nu1",
            "nu1_rad_per_sec": repr(config.params.nu[0]),
            "config_hash": config.config_hash(),
            "code_version": CODE_VERSION,
            "provenance": config.provenance or "kullanıcı konfigürasyonu",
        }

    def execute(self, config: ScenarioConfig, out_dir: str) -> RunResult:
        """
        Tam pipeline: doğrulama, simülasyon, raporlar, çıktı yazımı. Hata fırlatır.

        Returns:
            RunResult: Yazılan dosyalar ve özet
        """
        started = time.perf_counter()
        logger.info(f"🚀 Senaryo başlatılıyor: {config.name}")

        # 1. Rejim koşulları
        config.validate()

        # 2. Zaman evrimi
        trajectory = self.simulate(config)
        logger.info(f"✅ Zaman evrimi tamamlandı ({len(trajectory.times)} örnek)")

        # 3. Raporlar (tümü yazımdan önce hesaplanır)
        reports: Dict[str, pd.DataFrame] = {}
        if config.outputs.periods or config.outputs.decay_fit:
            reports["periods"] = self.period_report(config, trajectory)
        if config.outputs.hierarchy:
            reports["hierarchy"] = coupling_hierarchy(config.params).to_frame()
        if config.outputs.rwa_check:
            reports["rwa"] = self.rwa_report(config, trajectory)
        if config.outputs.growth_check:
            reports["growth"] = self.growth_report(config, trajectory)
        if config.outputs.convergence_scan:
            reports["convergence"] = self.scan(config).table

        # 4. Çıktılar
        scenario_dir = os.path.join(out_dir, config.name)
        provenance = self._provenance(config)
        files = [write_csv(trajectory.to_frame(), os.path.join(scenario_dir, "trajectory.csv"), provenance)]
        for name, frame in reports.items():
            files.append(write_csv(frame, os.path.join(scenario_dir, f"{name}.csv"), provenance))

        wall_time = time.perf_counter() - started
        run_info = {
            "code_version": CODE_VERSION,
            "frame": trajectory.frame.value,
            "state_kind": trajectory.kind.value,
            "config_hash": config.config_hash(),
            "time_scale_rad_per_sec": repr(config.params.nu[0]),
            "omega_over_nu1": repr(config.params.omega[0] / config.params.nu[0]),
            "finished_at": datetime.now().isoformat(timespec="seconds"),
            "wall_time_s": f"{wall_time:.3f}",
        }
        for key, value in trajectory.metadata.items():
            run_info[key] = " | ".join(value) if isinstance(value, list) else value
        files.append(write_metadata(config.to_sections(), run_info, os.path.join(scenario_dir, "metadata.ini")))

        summary = {key: trajectory.metadata[key] for key in ("norm_drift", "trace_drift")
                   if key in trajectory.metadata}
        if "periods" in reports and not reports["periods"].empty:
            summary["max_period_error"] = float(reports["periods"]["relative_error"].max())
        logger.info(f"✅ {config.name} tamamlandı! Süre: {wall_time:.2f} saniye")
        return RunResult(config.name, 0, scenario_dir, files, "", wall_time, summary)

    def run(self, config: ScenarioConfig, out_dir: Optional[str] = None) -> RunResult:
        """execute() sarmalayıcısı: hataları çıkış koduna çevirir ve kaydı tutar"""
        out_dir = out_dir or self.settings.output_dir
        started = time.perf_counter()
        try:
            result = self.execute(config, out_dir)
        except OptomechError as e:
            # girdiden kaynaklanan diğer kütüphane hataları konfigürasyon hatası sayılır
            code = e.exit_code if e.exit_code > 1 else ConfigError.exit_code
            logger.error(f"❌ {config.name}: {e}")
            result = RunResult(config.name, code, "", [], str(e), time.perf_counter() - started)
        except Exception as e:
            logger.exception(f"❌ {config.name}: beklenmeyen hata: {e}")
            result = RunResult(config.name, 1, "", [], str(e), time.perf_counter() - started)

        if self.database is not None:
            self.database.record_run(
                scenario=config.name, status=result.status, exit_code=result.exit_code,
                regime=config.regime.regime.value, config_hash=config.config_hash(),
                output_dir=result.output_dir, wall_time_s=round(result.wall_time_s, 3),
                message=result.message, metadata=result.summary,
            )
        return result


def run_scenario(config_path: Optional[str] = None, overrides: Sequence[str] = (),
                 preset: Optional[str] = None, settings: Optional[Settings] = None) -> RunResult:
    """
    Tek senaryoyu dosya ve/veya ön ayardan yükleyip çalıştırır

    Args:
        config_path: INI senaryo dosyası
        overrides: 'section.key=value' listesi
        preset: Ön ayar adı
        settings: Çalışma zamanı ayarları (varsayılan: environment)

    Returns:
        RunResult: exit_code 0 başarı, 2/3/4/5 hata kategorisi
    """
    settings = settings or get_settings()
    try:
        config = load_config(path=config_path, preset=preset, overrides=overrides)
    except ConfigError as e:
        logger.error(f"❌ Konfigürasyon hatası: {e}")
        return RunResult(preset or config_path or "custom", e.exit_code, message=str(e))

    database = RunDatabase(_ensure_parent(settings.database_path))
    return ScenarioRunner(settings, database).run(config, settings.output_dir)


# Komutlar

def _load_targets(args) -> List[ScenarioConfig]:
    configs = [load_config(path=path, overrides=args.override or []) for path in (args.config or [])]
    configs += [load_config(preset=name, overrides=args.override or []) for name in (args.preset or [])]
    if not configs:
        raise ConfigError("en az bir --config veya --preset gerekli")
    return configs


def _parse_ladder(text: Optional[str]):
    if not text:
        return None
    try:
        return [tuple(int(c) for c in rung.split(",")) for rung in text.split("|") if rung.strip()]
    except ValueError:
        raise ConfigError(f"cutoff basamakları 'a,b,c,d|a,b,c,d' biçiminde olmalı: {text!r}") from None


def cmd_run(args, settings: Settings) -> int:
    configs = _load_targets(args)
    runner = ScenarioRunner(settings, RunDatabase(_ensure_parent(settings.database_path)))
    scheduler = ScenarioScheduler(lambda config: runner.run(config, settings.output_dir),
                                  args.threads or settings.worker_threads)
    results = scheduler.run_batch(configs)

    print("=" * 60)
    for result in results:
        status = "✅" if result.exit_code == 0 else "❌"
        print(f"{status} {result.scenario}: çıkış kodu {result.exit_code}"
              + (f" -> {result.output_dir}" if result.output_dir else f" ({result.message})"))
    print("=" * 60)
    return ScenarioScheduler.batch_exit_code(results)


def cmd_presets(args, settings: Settings) -> int:
    table = list_presets()
    print(table[["name", "regime", "cutoffs", "description"]].to_string(index=False))
    print("\nKaynak notları:")
    for row in table.itertuples():
        print(f"  {row.name}: {row.provenance}")
    return 0


def cmd_scan(args, settings: Settings) -> int:
    configs = _load_targets(args)
    runner = ScenarioRunner(settings)
    series = [int(v) for v in args.series_ladder.split(",")] if args.series_ladder else None
    code = 0
    for config in configs:
        try:
            config.validate()
            report = runner.scan(config, _parse_ladder(args.cutoff_ladder), series, args.tolerance)
        except OptomechError as e:
            logger.error(f"❌ {config.name}: {e}")
            code = code or (e.exit_code if e.exit_code > 1 else ConfigError.exit_code)
            continue
        path = os.path.join(settings.output_dir, config.name, "convergence.csv")
        write_csv(report.table, path, {"scenario": config.name, "code_version": CODE_VERSION})
        print(report.table.to_string(index=False))
        converged = list(report.converged_cutoffs) if report.converged_cutoffs else "yok"
        print(f"\n📊 {config.name}: yakınsama cutoff'u {converged}, sızıntı {'VAR' if report.leak_flag else 'yok'}")
    return code


def cmd_history(args, settings: Settings) -> int:
    if not os.path.exists(settings.database_path):
        print("Henüz kayıtlı çalıştırma yok")
        return 0
    runs = RunDatabase(settings.database_path).get_runs(limit=args.limit, scenario=args.scenario)
    print(runs.to_string(index=False) if not runs.empty else "Henüz kayıtlı çalıştırma yok")
    return 0


def _ensure_parent(path: str) -> str:
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    return path


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="optomech",
        description="İki nanobeam optomekanik model simülatörü",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    def add_targets(sub):
        sub.add_argument("--config", action="append", metavar="PATH", help="INI senaryo dosyası (tekrarlanabilir)")
        sub.add_argument("--preset", action="append", metavar="NAME", help="yerleşik ön ayar (tekrarlanabilir)")
        sub.add_argument("--override", action="append", metavar="KEY=VALUE",
                         help="section.key=value (tekrarlanabilir)")
        sub.add_argument("--out", metavar="DIR", help="çıktı dizini (varsayılan OUTPUT_DIR)")

    run = subparsers.add_parser("run", help="senaryoları çalıştır")
    add_targets(run)
    run.add_argument("--threads", type=int, metavar="N", help="paralel senaryo sayısı")

    subparsers.add_parser("presets", help="ön ayarları listele")

    scan = subparsers.add_parser("scan", help="cutoff / seri mertebesi yakınsama taraması")
    add_targets(scan)
    scan.add_argument("--cutoff-ladder", metavar="A,B,C,D|...", help="cutoff basamakları")
    scan.add_argument("--series-ladder", metavar="K,K,...", help="seri mertebeleri")
    scan.add_argument("--tolerance", type=float, help="ardışık basamak farkı eşiği")

    history = subparsers.add_parser("history", help="çalıştırma kayıtlarını göster")
    history.add_argument("--limit", type=int, default=20)
    history.add_argument("--scenario", help="yalnız bu senaryo")
    history.add_argument("--out", metavar="DIR", help="kayıt veri tabanının bulunduğu çıktı dizini")
    return parser


COMMANDS = {"run": cmd_run, "presets": cmd_presets, "scan": cmd_scan, "history": cmd_history}


def main(argv: Optional[Sequence[str]] = None) -> int:
    """CLI giriş noktası; süreç çıkış kodunu döndürür"""
    args = build_parser().parse_args(argv)
    settings = get_settings()
    if getattr(args, "out", None):
        settings = settings.with_output_dir(args.out)
    setup_logging(settings)

    try:
        return COMMANDS[args.command](args, settings)
    except OptomechError as e:
        logger.error(f"❌ {e}")
        return e.exit_code if e.exit_code > 1 else ConfigError.exit_code


if __name__ == "__main__":
    sys.exit(main())
