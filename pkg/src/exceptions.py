"""
Hata Sınıfları Modülü

Simülasyon kütüphanesinin tüm hataları OptomechError'dan türer.
Her sınıf, CLI'nin süreç çıkış kodu olarak kullandığı bir exit_code taşır:
- 2: konfigürasyon hatası
- 3: rejim (detuning) koşulu ihlali
- 4: Hilbert uzayı kapasite aşımı
- 5: integratör / yakınsama hatası
"""

from typing import Optional


class OptomechError(Exception):
    """Kütüphanenin temel hata sınıfı"""

    exit_code = 1


class ConfigError(OptomechError):
    """Konfigürasyon dosyası veya override ayrıştırma hatası"""

    exit_code = 2

    def __init__(self, message: str, section: Optional[str] = None,
                 key: Optional[str] = None, line: Optional[int] = None):
        location = []
        if line is not None:
            location.append(f"satır {line}")
        if section:
            location.append(f"[{section}]")
        if key:
            location.append(key)
        prefix = f"{' '.join(location)}: " if location else ""
        super().__init__(f"{prefix}{message}")
        self.section = section
        self.key = key
        self.line = line


class RegimeViolationError(OptomechError):
    """NBS / OMC / OMS detuning koşulu sağlanmadı"""

    exit_code = 3

    def __init__(self, regime: str, condition: str, actual: str):
        super().__init__(f"{regime} rejimi {condition} gerektirir, bulunan: {actual}")
        self.regime = regime
        self.condition = condition


class CapacityError(OptomechError):
    """Hilbert uzayı boyutu yapılandırılmış sınırı aşıyor"""

    exit_code = 4

    def __init__(self, cutoffs, product: int, limit: int):
        factors = " x ".join(str(c + 1) for c in cutoffs)
        super().__init__(f"Hilbert boyutu {factors} = {product} sınırı ({limit}) aşıyor")
        self.product = product
        self.limit = limit


class IntegrationError(OptomechError):
    """Adaptif integratör başarısız oldu (adım küçülmesi, tolerans)"""

    exit_code = 5

    def __init__(self, message: str, time: Optional[float] = None):
        if time is not None:
            message = f"t = {time:.6g} anında: {message}"
        super().__init__(message)
        self.time = time


class ConvergenceError(OptomechError):
    """Matris üsteli serisi maksimum terimde yakınsamadı"""

    exit_code = 5

    def __init__(self, residual: float, iterations: int):
        super().__init__(f"exp serisi {iterations} terimde yakınsamadı (kalan: {residual:.3e})")
        self.residual = residual
        self.iterations = iterations


class InvalidModeError(OptomechError):
    """Mod indeksi 0..3 aralığı dışında"""


class DimensionMismatchError(OptomechError):
    """Operatör ve durum farklı uzaylarda tanımlı"""


class StateSpecError(OptomechError):
    """Başlangıç durumu tanımı geçersiz (cutoff aşımı, sıfır norm)"""


class ParameterError(OptomechError):
    """Fiziksel parametre kısıtı ihlali (ν ≤ 0, negatif kayıp vb.)"""


class UndefinedPeriodError(OptomechError):
    """Sıfır kuplaj nedeniyle periyot tanımsız"""


class DegenerateCouplingError(OptomechError):
    """₁F₁ çarpanı sıfır: fiziksel ayrışma noktası"""


class InsufficientOscillationError(OptomechError):
    """Zaman serisinde periyot ölçmek için yeterli ekstremum yok"""
