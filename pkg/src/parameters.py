"""
Parametre Modülü - Fiziksel Sabitler, Rejim Seçimi ve Boşluk-Kuplaj Fitleri

Bu modül, iki nanobeam modelinin tüm fiziksel sabitlerini tutar:
- ModelParams: ωⱼ, νⱼ, gⱼ, Ωⱼ, ω_dⱼ, γ ve kayıp oranları (rad/s, ħ = 1)
- RegimeSpec: hangi Hamiltonyenin kurulacağı ve F fonksiyonu modu
- GapCouplingFit: nanobeam aralığına göre optik kuplaj γ(s) fit formları
- Nanobeam cihaz ön ayarı ve kuplaj hiyerarşisi yardımcıları
"""

import logging
import math
from dataclasses import dataclass, replace
from enum import Enum
from typing import Tuple, Union

import numpy as np

from exceptions import ParameterError, RegimeViolationError

logger = logging.getLogger(__name__)

TWO_PI = 2.0 * math.pi
SERIES_WARNING_RATIO = 0.3
REGIME_REL_TOL = 1e-9

Pair = Tuple[float, float]


def _pair(name: str, value) -> Pair:
    values = tuple(float(v) for v in np.atleast_1d(value))
    if len(values) == 1:
        values = (values[0], values[0])
    if len(values) != 2:
        raise ParameterError(f"{name} için 2 değer bekleniyordu, {len(values)} verildi")
    if not all(math.isfinite(v) for v in values):
        raise ParameterError(f"{name} sonlu olmalı: {values}")
    return values


@dataclass(frozen=True)
class ModelParams:
    """
    Tam Hamiltonyenin fiziksel sabitleri (rad/s).

    drive = Ωⱼ (sürücü şiddeti), omega_d = ω_dⱼ (sürücü frekansı).
    Türetilmiş: Δⱼ = ωⱼ − ω_dⱼ, δ = ω₁ − ω₂, αⱼ = −gⱼ/νⱼ.
    """

    omega: Pair = (0.0, 0.0)
    nu: Pair = (1.0, 1.0)
    g: Pair = (0.0, 0.0)
    drive: Pair = (0.0, 0.0)
    omega_d: Pair = (0.0, 0.0)
    gamma: float = 0.0
    kappa_opt: Pair = (0.0, 0.0)
    kappa_mec: Pair = (0.0, 0.0)

    def __post_init__(self):
        for name in ("omega", "nu", "g", "drive", "omega_d", "kappa_opt", "kappa_mec"):
            object.__setattr__(self, name, _pair(name, getattr(self, name)))
        object.__setattr__(self, "gamma", float(self.gamma))

        for name in ("nu", "g", "drive", "kappa_opt", "kappa_mec"):
            if any(v < 0 for v in getattr(self, name)):
                raise ParameterError(f"{name} negatif olamaz: {getattr(self, name)}")
        if self.gamma < 0:
            raise ParameterError(f"gamma negatif olamaz: {self.gamma}")

    # Türetilmiş büyüklükler
    @property
    def detuning(self) -> Pair:
        """Δⱼ = ωⱼ − ω_dⱼ"""
        return (self.omega[0] - self.omega_d[0], self.omega[1] - self.omega_d[1])

    @property
    def delta(self) -> float:
        """δ = ω₁ − ω₂"""
        return self.omega[0] - self.omega[1]

    def require_positive_nu(self) -> None:
        if any(v <= 0 for v in self.nu):
            raise ParameterError(f"nu pozitif olmalı: {self.nu}")

    def ratio(self, j: int) -> float:
        """gⱼ/νⱼ"""
        self.require_positive_nu()
        return self.g[j - 1] / self.nu[j - 1]

    def alpha(self, j: int) -> float:
        """αⱼ = −gⱼ/νⱼ"""
        return -self.ratio(j)

    def kerr(self, j: int) -> float:
        """gⱼ²/νⱼ"""
        self.require_positive_nu()
        return self.g[j - 1] ** 2 / self.nu[j - 1]

    def omega_eff(self, j: int) -> float:
        """Ω_eff,ⱼ = Ωⱼgⱼ/(2νⱼ)"""
        return self.drive[j - 1] * self.ratio(j) / 2.0

    @property
    def gamma_eff(self) -> float:
        """Γ_eff = γg₁g₂/(ν₁ν₂)"""
        return self.gamma * self.ratio(1) * self.ratio(2)

    def series_warnings(self) -> list:
        """|αⱼ| > 0.3 için uyarı metinleri (seri geçerliliği)"""
        warnings = []
        if any(v <= 0 for v in self.nu):
            return warnings
        for j in (1, 2):
            if abs(self.alpha(j)) > SERIES_WARNING_RATIO:
                warnings.append(
                    f"|α{j}| = {abs(self.alpha(j)):.3g} > {SERIES_WARNING_RATIO}: polaron serisi yavaş yakınsar"
                )
        return warnings

    # Dönüşümler
    def scaled(self, unit: float) -> "ModelParams":
        """Tüm frekansları `unit` ile böler (ör. ν₁ birimine geçiş)"""
        if unit <= 0:
            raise ParameterError(f"ölçek birimi pozitif olmalı: {unit}")

        def div(pair):
            return tuple(v / unit for v in pair)

        return ModelParams(
            omega=div(self.omega), nu=div(self.nu), g=div(self.g), drive=div(self.drive),
            omega_d=div(self.omega_d), gamma=self.gamma / unit,
            kappa_opt=div(self.kappa_opt), kappa_mec=div(self.kappa_mec),
        )

    def swapped(self) -> "ModelParams":
        """Nanobeam etiketleri 1↔2 değiştirilmiş kopya"""

        def swap(pair):
            return (pair[1], pair[0])

        return ModelParams(
            omega=swap(self.omega), nu=swap(self.nu), g=swap(self.g), drive=swap(self.drive),
            omega_d=swap(self.omega_d), gamma=self.gamma,
            kappa_opt=swap(self.kappa_opt), kappa_mec=swap(self.kappa_mec),
        )

    def with_changes(self, **changes) -> "ModelParams":
        return replace(self, **changes)

    def to_dict(self) -> dict:
        return {
            "omega": list(self.omega), "nu": list(self.nu), "g": list(self.g),
            "drive": list(self.drive), "omega_d": list(self.omega_d), "gamma": self.gamma,
            "kappa_opt": list(self.kappa_opt), "kappa_mec": list(self.kappa_mec),
        }


class Regime(Enum):
    FULL_LAB = "full-lab"
    ROTATING = "rotating"
    POLARON_SERIES = "polaron-series"
    NBS = "NBS"
    OMC = "OMC"
    OMS = "OMS"
    NBS_RABI = "NBS-rabi"
    OMC_EFFECTIVE = "OMC-effective"
    OMS_EFFECTIVE = "OMS-effective"

    @property
    def base(self) -> "Regime":
        """Detuning koşulları açısından ait olduğu ana rejim"""
        return {
            Regime.NBS_RABI: Regime.NBS,
            Regime.OMC_EFFECTIVE: Regime.OMC,
            Regime.OMS_EFFECTIVE: Regime.OMS,
        }.get(self, self)


class FMode(Enum):
    EXACT = "exact-hypergeometric"
    LEADING = "leading-order"


@dataclass(frozen=True)
class RegimeSpec:
    """Kurulacak Hamiltonyen ve F fonksiyonu modu"""

    regime: Regime = Regime.NBS
    series_order: int = 4
    f_mode: FMode = FMode.EXACT
    include_kerr: bool = True

    def __post_init__(self):
        if isinstance(self.regime, str):
            object.__setattr__(self, "regime", Regime(self.regime))
        if isinstance(self.f_mode, str):
            object.__setattr__(self, "f_mode", FMode(self.f_mode))
        if int(self.series_order) < 0:
            raise ParameterError(f"series_order negatif olamaz: {self.series_order}")
        object.__setattr__(self, "series_order", int(self.series_order))


def _close(actual: float, expected: float, scale: float) -> bool:
    return abs(actual - expected) <= REGIME_REL_TOL * max(abs(scale), abs(expected), 1e-300)


def check_regime_conditions(regime: Regime, params: ModelParams) -> None:
    """
    NBS / OMC / OMS detuning koşullarını doğrular

    Args:
        regime: Rejim (diğer rejimler için kontrol yapılmaz)
        params: Fiziksel parametreler

    Raises:
        RegimeViolationError: İhlal edilen koşul adıyla
    """
    base = regime.base
    if base not in (Regime.NBS, Regime.OMC, Regime.OMS):
        return

    nu1, nu2 = params.nu
    scale = max(nu1, nu2)
    det1, det2 = params.detuning

    if base is Regime.NBS:
        expected_det = (0.0, 0.0)
        expected_delta = 0.0
        labels = ("Δ1 = 0", "Δ2 = 0", "δ = 0")
    elif base is Regime.OMC:
        expected_det = (nu1, nu2)
        expected_delta = -nu1 + nu2
        labels = ("Δ1 = ν1", "Δ2 = ν2", "δ = −ν1 + ν2")
    else:
        expected_det = (nu1, nu2)
        expected_delta = -nu1 - nu2
        labels = ("Δ1 = ν1", "Δ2 = ν2", "δ = −ν1 − ν2")

    checks = (
        (det1, expected_det[0], labels[0], "Δ1"),
        (det2, expected_det[1], labels[1], "Δ2"),
        (params.delta, expected_delta, labels[2], "δ"),
    )
    for actual, expected, condition, symbol in checks:
        if not _close(actual, expected, scale):
            raise RegimeViolationError(base.value, condition, f"{symbol} = {actual:.6g}")


# Boşluk - kuplaj fitleri

class GapConfiguration(Enum):
    ON_TOP = "on-top"
    SIDE_BY_SIDE = "side-by-side"


@dataclass(frozen=True)
class GapCouplingFit:
    """
    Optik kuplajın nanobeam aralığına bağlılığı.

    on-top: γ(s) = A·exp(−s/ℓ)
    side-by-side: γ(s) = A·exp(−P₄(s)), P₄(s) = c₁s + c₂s² + c₃s³ + c₄s⁴
    s nanometre, γ rad/s.
    """

    configuration: GapConfiguration
    amplitude: float
    decay_length_nm: float = 0.0
    coefficients: Tuple[float, float, float, float] = (0.0, 0.0, 0.0, 0.0)
    fitted_range_nm: Tuple[float, float] = (20.0, 300.0)
    synthetic: bool = True

    def __post_init__(self):
        if isinstance(self.configuration, str):
            object.__setattr__(self, "configuration", GapConfiguration(self.configuration))
        if self.amplitude <= 0:
            raise ParameterError(f"fit genliği pozitif olmalı: {self.amplitude}")
        low, high = self.fitted_range_nm
        if not 0 <= low < high:
            raise ParameterError(f"geçersiz fit aralığı: {self.fitted_range_nm}")

        if self.configuration is GapConfiguration.ON_TOP:
            if self.decay_length_nm <= 0:
                raise ParameterError(f"bozunma uzunluğu pozitif olmalı: {self.decay_length_nm}")
        else:
            object.__setattr__(self, "coefficients", tuple(float(c) for c in self.coefficients))
            if len(self.coefficients) != 4:
                raise ParameterError("side-by-side fit 4 polinom katsayısı gerektirir")
            # P₄ fit aralığında kesin artan olmalı
            grid = np.linspace(low, high, 256)
            c1, c2, c3, c4 = self.coefficients
            slope = c1 + 2 * c2 * grid + 3 * c3 * grid ** 2 + 4 * c4 * grid ** 3
            if np.any(slope <= 0):
                raise ParameterError("P₄ fit aralığında artan değil: γ(s) monoton azalmıyor")

    def exponent(self, s):
        s = np.asarray(s, dtype=float)
        if self.configuration is GapConfiguration.ON_TOP:
            return s / self.decay_length_nm
        c1, c2, c3, c4 = self.coefficients
        return s * (c1 + s * (c2 + s * (c3 + s * c4)))


# Sentetik yer tutucu katsayılar, FEM verisinden türetilmedi
DEFAULT_ON_TOP_FIT = GapCouplingFit(
    configuration=GapConfiguration.ON_TOP,
    amplitude=TWO_PI * 2e13,
    decay_length_nm=50.0,
)
DEFAULT_SIDE_BY_SIDE_FIT = GapCouplingFit(
    configuration=GapConfiguration.SIDE_BY_SIDE,
    amplitude=TWO_PI * 2e13,
    coefficients=(1.0 / 40.0, 1e-5, 1e-8, 1e-11),
)
DEFAULT_GAP_NM = 100.0


def gap_coupling(fit: GapCouplingFit, s: Union[float, np.ndarray]) -> Union[float, np.ndarray]:
    """
    Verilen aralıkta optik kuplaj γ(s)

    Args:
        fit: Fit formu ve katsayıları
        s: Nanobeam aralığı [nm] (skaler veya dizi)

    Returns:
        γ [rad/s]
    """
    values = np.asarray(s, dtype=float)
    low, high = fit.fitted_range_nm
    if np.any(values < low) or np.any(values > high):
        logger.warning(f"⚠️ Aralık {fit.configuration.value} fit bölgesi [{low}, {high}] nm dışında")

    coupling = fit.amplitude * np.exp(-fit.exponent(values))
    if coupling.ndim == 0:
        return float(coupling)
    return coupling


# Cihaz ön ayarı

DEVICE_OPTICAL_FREQUENCY = TWO_PI * 204e12
DEVICE_MECHANICAL_FREQUENCY = TWO_PI * 2.23e9
DEVICE_COUPLING = TWO_PI * 1e6
DEVICE_DRIVE_MIN = TWO_PI * 1e9
DEVICE_DRIVE_MAX = TWO_PI * 1e11
DEVICE_KAPPA_OPT_RATIO = 0.09
DEVICE_KAPPA_MEC_RATIO = 1.5e-5


def device_params(regime: Regime = Regime.NBS, drive: float = DEVICE_DRIVE_MAX,
                  gap_nm: float = DEFAULT_GAP_NM,
                  fit: GapCouplingFit = DEFAULT_ON_TOP_FIT,
                  losses: bool = True) -> ModelParams:
    """
    Nanobeam cihaz parametreleri, rejimin detuning koşullarını sağlayacak şekilde

    Args:
        regime: Sürücü ve optik frekansların ayarlanacağı rejim
        drive: Ω [rad/s], [2π·10⁹, 2π·10¹¹] aralığında
        gap_nm: γ'nın hesaplanacağı aralık
        fit: Kullanılacak γ(s) fiti
        losses: Kayıp oranlarını ekle

    Returns:
        ModelParams: rad/s biriminde parametreler
    """
    if not DEVICE_DRIVE_MIN <= drive <= DEVICE_DRIVE_MAX:
        logger.warning(f"⚠️ Ω = {drive:.3e} rad/s cihaz pompa aralığı dışında")

    nu = DEVICE_MECHANICAL_FREQUENCY
    omega1 = DEVICE_OPTICAL_FREQUENCY
    base = regime.base
    if base is Regime.OMC:
        # özdeş beamlerde δ = −ν₁ + ν₂ = 0
        omega2 = omega1
        omega_d = (omega1 - nu, omega2 - nu)
    elif base is Regime.OMS:
        omega2 = omega1 + 2.0 * nu
        omega_d = (omega1 - nu, omega2 - nu)
    else:
        omega2 = omega1
        omega_d = (omega1, omega2)

    kappa_opt = DEVICE_KAPPA_OPT_RATIO * nu if losses else 0.0
    kappa_mec = DEVICE_KAPPA_MEC_RATIO * nu if losses else 0.0
    return ModelParams(
        omega=(omega1, omega2), nu=(nu, nu), g=(DEVICE_COUPLING, DEVICE_COUPLING),
        drive=(drive, drive), omega_d=omega_d, gamma=gap_coupling(fit, gap_nm),
        kappa_opt=(kappa_opt, kappa_opt), kappa_mec=(kappa_mec, kappa_mec),
    )
