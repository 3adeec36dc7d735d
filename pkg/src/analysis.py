"""
Analiz Modülü - Periyot Tahminleri ve Zaman Serisi Ölçümleri

Bu modül simülasyon sonuçlarını kapalı form tahminlerle karşılaştırır:
- Optik ışın bölücü periyodu τ, optomekanik periyot τ_om,j, mekanik periyot τ_mec
- Zaman serisinden periyot çıkarımı (tepe noktaları + kuadratik interpolasyon)
- Zarf yumuşatma (rolling mean) ve üstel sönüm oranı fiti
- Kuplaj hiyerarşisi raporu (Ω_eff > Γ_eff > g²/ν)
- Cutoff / seri mertebesi yakınsama taraması ve kesme sızıntısı izleme
"""

import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Dict, Optional, Sequence, Tuple

import numpy as np
import pandas as pd
from scipy.signal import find_peaks

from dynamics import TIME_COLUMN, Trajectory
from exceptions import (
    DegenerateCouplingError,
    InsufficientOscillationError,
    ParameterError,
    UndefinedPeriodError,
)
from hamiltonians import confluent_1F1_neg_int
from parameters import TWO_PI, ModelParams

logger = logging.getLogger(__name__)

DEGENERATE_FACTOR_TOL = 1e-14
DEFAULT_PROMINENCE = 0.05
LEAK_THRESHOLD = 1e-6


class PeriodKind(Enum):
    OPTICAL_EXCHANGE = "optical-exchange"
    OPTOMECH_EXCHANGE = "optomech-exchange"
    MECHANICAL_EXCHANGE = "mechanical-exchange"


@dataclass(frozen=True)
class PeriodPrediction:
    """
    Kapalı form periyot. value, yayımlanan 2π/|kuplaj| değeridir;
    observed_period ise doluluk serisinin gerçekte tekrar ettiği süredir.
    """

    kind: PeriodKind
    value: float
    inputs: Dict[str, object] = field(default_factory=dict)
    beam: Optional[int] = None

    def __post_init__(self):
        if not (math.isfinite(self.value) and self.value > 0):
            raise UndefinedPeriodError(f"periyot pozitif ve sonlu olmalı: {self.value}")

    @property
    def label(self) -> str:
        if self.beam is None:
            return self.kind.value
        return f"{self.kind.value}-{self.beam}"

    @property
    def observed_period(self) -> float:
        # doluluklar genlik periyodunun yarısında tekrar eder;
        # güçlü sürücüde giydirilmiş mekanik çift kuplajı Γ/2 olur
        if self.kind is PeriodKind.MECHANICAL_EXCHANGE:
            return self.value
        return self.value / 2.0


def _hyp_factor(n: int, b: int, x: float) -> float:
    value = confluent_1F1_neg_int(n, b, x)
    if abs(value) < DEGENERATE_FACTOR_TOL:
        raise DegenerateCouplingError(f"₁F₁(−{n}; {b}; {x:.6g}) = {value:.3e}: kuplaj sıfırlanıyor")
    return value


def period_optical_bs(params: ModelParams, n1: int = 0, n2: int = 0) -> PeriodPrediction:
    """
    τ = 2π / |γ e^{−α₁²/2} e^{−α₂²/2} ₁F₁[−n₁;1;α₁²] ₁F₁[−n₂;1;α₂²]|

    Args:
        params: Fiziksel parametreler (zaman birimi 1/parametre birimi)
        n1, n2: Mekanik doluluklar

    Returns:
        PeriodPrediction: optical-exchange periyodu
    """
    if params.gamma == 0:
        raise UndefinedPeriodError("γ = 0: optik değişim periyodu tanımsız")
    x1, x2 = params.ratio(1) ** 2, params.ratio(2) ** 2
    coupling = (params.gamma * math.exp(-(x1 + x2) / 2.0)
                * _hyp_factor(n1, 1, x1) * _hyp_factor(n2, 1, x2))
    return PeriodPrediction(PeriodKind.OPTICAL_EXCHANGE, TWO_PI / abs(coupling),
                            {"n1": n1, "n2": n2, "params": params.to_dict()})


def period_om(params: ModelParams, j: int, n: int = 0) -> PeriodPrediction:
    """τ_om,j = 2π / |(Ωⱼ/2)(gⱼ/νⱼ) e^{−αⱼ²/2} ₁F₁[−n;2;αⱼ²]|"""
    if j not in (1, 2):
        raise ParameterError(f"nanobeam indeksi 1 veya 2 olmalı: {j}")
    if params.drive[j - 1] == 0 or params.g[j - 1] == 0:
        raise UndefinedPeriodError(f"Ω{j}·g{j} = 0: optomekanik periyot tanımsız")
    ratio = params.ratio(j)
    x = ratio * ratio
    coupling = (params.drive[j - 1] / 2.0) * ratio * math.exp(-x / 2.0) * _hyp_factor(n, 2, x)
    return PeriodPrediction(PeriodKind.OPTOMECH_EXCHANGE, TWO_PI / abs(coupling),
                            {"n": n, "params": params.to_dict()}, beam=j)


def period_mec(params: ModelParams, n1: int = 0, n2: int = 0) -> PeriodPrediction:
    """τ_mec = 2π / |γ(g₁g₂/ν₁ν₂) e^{−α₁²/2} e^{−α₂²/2} ₁F₁[−n₁;2;α₁²] ₁F₁[−n₂;2;α₂²]|"""
    if params.gamma == 0 or params.g[0] == 0 or params.g[1] == 0:
        raise UndefinedPeriodError("γ·g₁·g₂ = 0: mekanik değişim periyodu tanımsız")
    x1, x2 = params.ratio(1) ** 2, params.ratio(2) ** 2
    coupling = (params.gamma_eff * math.exp(-(x1 + x2) / 2.0)
                * _hyp_factor(n1, 2, x1) * _hyp_factor(n2, 2, x2))
    return PeriodPrediction(PeriodKind.MECHANICAL_EXCHANGE, TWO_PI / abs(coupling),
                            {"n1": n1, "n2": n2, "params": params.to_dict()})


# Zaman serisi ölçümleri

@dataclass(frozen=True)
class PeriodEstimate:
    """Ölçülen periyot ve belirsizliği (ardışık tepe aralıklarının std sapması)"""

    period: float
    uncertainty: float
    peak_times: np.ndarray

    @property
    def n_peaks(self) -> int:
        return len(self.peak_times)


def rolling_envelope(values: Sequence[float], window: int) -> np.ndarray:
    """Merkezlenmiş hareketli ortalama; hızlı salınımı bastırır"""
    if window < 1:
        raise ParameterError(f"pencere en az 1 örnek olmalı: {window}")
    series = pd.Series(np.asarray(values, dtype=float))
    return series.rolling(window=int(window), center=True, min_periods=1).mean().to_numpy()


def _series_of(source, observable: Optional[str], times: Optional[Sequence[float]]):
    if isinstance(source, Trajectory):
        if observable is None:
            raise ParameterError("Trajectory için gözlenebilir adı gerekli")
        return np.asarray(source.times, dtype=float), np.asarray(source[observable], dtype=float)
    if isinstance(source, pd.DataFrame):
        return source[TIME_COLUMN].to_numpy(dtype=float), source[observable].to_numpy(dtype=float)
    if times is None:
        raise ParameterError("dizi girdisi için zaman ızgarası gerekli")
    return np.asarray(times, dtype=float), np.asarray(source, dtype=float)


def _interpolated_peaks(times: np.ndarray, values: np.ndarray, prominence: float) -> np.ndarray:
    span = float(values.max() - values.min())
    if span <= 0:
        return np.array([])
    indices, _ = find_peaks(values, prominence=prominence * span)
    dt = times[1] - times[0]
    peaks = []
    for i in indices:
        y0, y1, y2 = values[i - 1], values[i], values[i + 1]
        curvature = y0 - 2.0 * y1 + y2
        offset = 0.5 * (y0 - y2) / curvature if curvature != 0 else 0.0
        peaks.append(times[i] + offset * dt)
    return np.asarray(peaks)


def extract_period(source, observable: Optional[str] = None,
                   times: Optional[Sequence[float]] = None,
                   smooth_window: Optional[float] = None,
                   prominence: float = DEFAULT_PROMINENCE) -> PeriodEstimate:
    """
    Zaman serisinden salınım periyodunu ölçer

    Args:
        source: Trajectory, DataFrame veya değer dizisi
        observable: Gözlenebilir adı (Trajectory / DataFrame için)
        times: Dizi girdisi için düzgün zaman ızgarası
        smooth_window: Verilirse bu süre uzunluğunda rolling mean uygulanır
        prominence: Tepe belirginliği eşiği (seri genişliğinin oranı)

    Returns:
        PeriodEstimate: Ortalama tepe aralığı ve std sapması
    """
    times, values = _series_of(source, observable, times)
    if smooth_window:
        window = max(1, int(round(smooth_window / (times[1] - times[0]))))
        values = rolling_envelope(values, window)

    peaks = _interpolated_peaks(times, values, prominence)
    if len(peaks) < 2:
        raise InsufficientOscillationError(
            f"periyot için en az 2 tepe gerekli, {len(peaks)} bulundu"
        )
    spacings = np.diff(peaks)
    uncertainty = float(spacings.std()) if len(spacings) > 1 else 0.0
    return PeriodEstimate(float(spacings.mean()), uncertainty, peaks)


def fit_decay_rate(source, observable: Optional[str] = None,
                   times: Optional[Sequence[float]] = None,
                   use_peaks: bool = False) -> float:
    """
    log(değer) = log(A) − κt doğrusal fitiyle sönüm oranı κ

    use_peaks=True ise yalnızca tepe noktaları (salınımlı seri zarfı) kullanılır.
    """
    times, values = _series_of(source, observable, times)
    if use_peaks:
        indices, _ = find_peaks(values)
        times, values = times[indices], values[indices]
    positive = values > 0
    if positive.sum() < 2:
        raise InsufficientOscillationError("sönüm fiti için en az 2 pozitif nokta gerekli")
    slope, _ = np.polyfit(times[positive], np.log(values[positive]), 1)
    return float(-slope)


# Kuplaj hiyerarşisi

HIERARCHY_BANDS_HZ = {
    "omega_eff": (1e7, 1e8),
    "gamma_eff": (1e4, 1e7),
    "kerr": (1e2, 1e4),
}


@dataclass(frozen=True)
class CouplingHierarchy:
    """Ω_eff,ⱼ, Γ_eff ve gⱼ²/νⱼ (rad/s)"""

    omega_eff: Tuple[float, float]
    gamma_eff: float
    kerr: Tuple[float, float]

    @staticmethod
    def to_hz(value: float) -> float:
        return value / TWO_PI

    @property
    def is_ordered(self) -> bool:
        return min(self.omega_eff) > self.gamma_eff > max(self.kerr)

    def to_frame(self) -> pd.DataFrame:
        rows = []
        entries = [
            ("omega_eff_1", "omega_eff", self.omega_eff[0]),
            ("omega_eff_2", "omega_eff", self.omega_eff[1]),
            ("gamma_eff", "gamma_eff", self.gamma_eff),
            ("kerr_1", "kerr", self.kerr[0]),
            ("kerr_2", "kerr", self.kerr[1]),
        ]
        for name, band, value in entries:
            low, high = HIERARCHY_BANDS_HZ[band]
            hz = self.to_hz(value)
            rows.append({
                "coupling": name,
                "rad_per_sec": value,
                "hz": hz,
                "band_low_hz": low,
                "band_high_hz": high,
                "in_band": bool(low <= hz < high),
            })
        return pd.DataFrame(rows)

    @property
    def within_bands(self) -> bool:
        return bool(self.to_frame()["in_band"].all())


def coupling_hierarchy(params: ModelParams) -> CouplingHierarchy:
    """
    Etkin kuplajları hesaplar

    Args:
        params: rad/s biriminde parametreler

    Returns:
        CouplingHierarchy: Hz dönüşümü ve bant kontrolleriyle
    """
    hierarchy = CouplingHierarchy(
        omega_eff=(params.omega_eff(1), params.omega_eff(2)),
        gamma_eff=params.gamma_eff,
        kerr=(params.kerr(1), params.kerr(2)),
    )
    if not hierarchy.is_ordered:
        logger.warning("⚠️ Ω_eff > Γ_eff > g²/ν hiyerarşisi sağlanmıyor")
    return hierarchy


# Mekanik büyüme izleme

@dataclass(frozen=True)
class GrowthReport:
    window_end: float
    leak_time: Optional[float]
    non_decreasing: bool


def squeezing_window(params: ModelParams, occupations: Sequence[Tuple[int, int]]) -> Optional[float]:
    """
    İlk çift üretim maksimumuna kadar geçen süre, π / (2Γ_eff√((m₁+1)(m₂+1)))

    Args:
        params: Fiziksel parametreler
        occupations: Başlangıç durumundaki (m₁, m₂) mekanik doluluk çiftleri

    Returns:
        Optional[float]: En hızlı bileşenin penceresi; Γ_eff = 0 ise None
    """
    if params.gamma_eff == 0 or not occupations:
        return None
    fastest = max(math.sqrt((m1 + 1) * (m2 + 1)) for m1, m2 in occupations)
    return math.pi / (2.0 * abs(params.gamma_eff) * fastest)


def check_mechanical_growth(trajectory: Trajectory, t_max: Optional[float] = None,
                            leak_threshold: float = LEAK_THRESHOLD,
                            tolerance: float = 1e-9) -> GrowthReport:
    """
    ⟨n̂_mec,1⟩+⟨n̂_mec,2⟩'nin sızıntı eşiği aşılana kadar azalmadığını kontrol eder

    Pencere, t_max ile ve üst Fock popülasyonunun eşiği ilk aştığı anla kapanır.
    """
    times = trajectory.times
    total = trajectory["n_mec1"] + trajectory["n_mec2"]
    leaking = np.nonzero(trajectory["top_fock_population"] > leak_threshold)[0]
    leak_time = float(times[leaking[0]]) if len(leaking) else None

    end = len(times)
    if len(leaking):
        end = int(leaking[0])
    if t_max is not None:
        end = min(end, int(np.searchsorted(times, t_max, side="right")))
    if end < 2:
        return GrowthReport(float(times[0]), leak_time, True)

    non_decreasing = bool(np.all(np.diff(total[:end]) >= -tolerance))
    return GrowthReport(float(times[end - 1]), leak_time, non_decreasing)


# Yakınsama taraması

@dataclass(frozen=True)
class ConvergenceReport:
    """
    table: her basamak için son andaki gözlenebilirler ve sızıntı
    converged_at: sonraki basamakla uyuşan ve sızıntısı eşik altında olan ilk basamak
                  (tek basamaklı taramada sızıntısı eşik altındaysa o basamak)
    """

    table: pd.DataFrame
    converged_cutoffs: Optional[Tuple[int, int, int, int]]
    converged_order: Optional[int]
    leak_flag: bool

    @property
    def converged(self) -> bool:
        return self.converged_cutoffs is not None and not self.leak_flag


def _strictly_increasing(ladder: Sequence[Tuple[int, ...]]) -> bool:
    for lower, upper in zip(ladder, ladder[1:]):
        if not (all(u >= l for u, l in zip(upper, lower)) and tuple(upper) != tuple(lower)):
            return False
    return True


def _sweep(rows: list, axis: str, rungs: list, run: Callable,
           observables: Sequence[str], tolerance: float,
           leak_threshold: float) -> Tuple[Optional[int], float]:
    """Basamakları çalıştırır ve tabloya ekler; yakınsayan ilk indeks ve son sızıntıyı döndürür"""
    finals, leaks = [], []
    for cutoffs, order in rungs:
        trajectory = run(cutoffs, order)
        finals.append(np.array([float(np.real(trajectory[name][-1])) for name in observables]))
        leaks.append(float(trajectory["top_fock_population"].max()))

    converged_index = None
    for k, (cutoffs, order) in enumerate(rungs):
        if k + 1 < len(rungs):
            diff = float(np.abs(finals[k] - finals[k + 1]).max())
            converged = bool(leaks[k] <= leak_threshold and diff < tolerance)
        else:
            # Tek basamakta karşılaştırılacak komşu yok; karar yalnız sızıntıya göre
            diff = math.nan
            converged = bool(len(rungs) == 1 and leaks[k] <= leak_threshold)
        if converged and converged_index is None:
            converged_index = k
        row = {"axis": axis, "cutoffs": ",".join(str(c) for c in cutoffs), "series_order": order}
        row.update(dict(zip(observables, finals[k])))
        row.update({"top_fock_population": leaks[k], "diff_to_next": diff, "converged": converged})
        rows.append(row)
    return converged_index, leaks[-1]


def convergence_scan(run: Callable[[Tuple[int, int, int, int], Optional[int]], Trajectory],
                     cutoff_ladder: Sequence[Sequence[int]],
                     series_ladder: Optional[Sequence[int]] = None,
                     observables: Sequence[str] = ("n_opt1", "n_opt2", "n_mec1", "n_mec2"),
                     tolerance: float = 1e-6,
                     leak_threshold: float = LEAK_THRESHOLD) -> ConvergenceReport:
    """
    Cutoff ve seri mertebesi basamaklarında son andaki gözlenebilirleri karşılaştırır

    Args:
        run: (cutoffs, series_order) -> Trajectory; capacity hatası yukarı iletilir
        cutoff_ladder: Artan cutoff dörtlüleri
        series_ladder: Artan seri mertebeleri (yalnız polaron serisi için anlamlı)
        observables: Karşılaştırılacak seriler
        tolerance: Ardışık basamak farkı eşiği
        leak_threshold: Üst Fock popülasyonu eşiği

    Returns:
        ConvergenceReport: Tablo, yakınsama basamakları ve sızıntı bayrağı
    """
    cutoff_ladder = [tuple(int(c) for c in cutoffs) for cutoffs in cutoff_ladder]
    if not cutoff_ladder:
        raise ParameterError("cutoff basamağı boş")
    if not _strictly_increasing(cutoff_ladder):
        raise ParameterError(f"cutoff basamakları kesin artan olmalı: {cutoff_ladder}")
    orders = [int(o) for o in series_ladder] if series_ladder else []
    if any(b <= a for a, b in zip(orders, orders[1:])):
        raise ParameterError(f"seri mertebeleri kesin artan olmalı: {orders}")

    logger.info(f"🔍 Yakınsama taraması: {len(cutoff_ladder)} cutoff, {len(orders)} mertebe basamağı")
    rows = []
    base_order = orders[0] if orders else None
    cutoff_index, final_leak = _sweep(rows, "cutoff", [(c, base_order) for c in cutoff_ladder],
                                      run, observables, tolerance, leak_threshold)
    leak_flag = final_leak > leak_threshold

    converged_order = None
    if len(orders) > 1:
        order_index, order_leak = _sweep(rows, "series_order", [(cutoff_ladder[-1], o) for o in orders],
                                         run, observables, tolerance, leak_threshold)
        converged_order = orders[order_index] if order_index is not None else None
        leak_flag = leak_flag or order_leak > leak_threshold

    converged_cutoffs = cutoff_ladder[cutoff_index] if cutoff_index is not None else None
    if leak_flag:
        logger.warning(f"⚠️ Kesme sızıntısı {final_leak:.3e} > {leak_threshold:.0e}: cutoff yetersiz")
    elif converged_cutoffs is not None:
        logger.info(f"✅ Yakınsadı: cutoffs={list(converged_cutoffs)}")
    return ConvergenceReport(pd.DataFrame(rows), converged_cutoffs, converged_order, leak_flag)
