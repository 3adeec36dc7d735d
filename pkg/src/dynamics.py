"""
Dinamik Modülü - Schrödinger ve Lindblad Zaman Evrimi

Bu modül, kesilmiş Fock uzayında kuantum durumlarını zamanda ilerletir:
- Saf durumlar: dψ/dt = −iH(t)ψ
- Yoğunluk matrisleri: dρ/dt = −i[H,ρ] + Σ κ(LρL† − ½{L†L, ρ})
- Gözlenebilirler düzgün zaman ızgarasında örneklenir (dense output)
- Norm / iz sapması ve negatif özdeğerler metadata'ya yazılır

Normalizasyon yapılmaz: sapma bir kalite sinyalidir.
"""

import logging
import math
import time
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
import pandas as pd
import scipy.sparse as sp
from scipy.integrate import solve_ivp

from exceptions import IntegrationError, ParameterError, StateSpecError
from fock_space import (
    MODE_LABELS,
    N_MODES,
    Frame,
    HilbertSpace,
    OperatorMatrix,
    QuantumState,
    StateKind,
    number_op,
)
from hamiltonians import TimeDependentHamiltonian

logger = logging.getLogger(__name__)

DEFAULT_METHOD = "DOP853"
DEFAULT_TOLERANCE = 1e-11
ABSOLUTE_TOL = 1e-13
NORM_DRIFT_LIMIT = 1e-8
TRACE_DRIFT_LIMIT = 1e-7
NEGATIVITY_LIMIT = -1e-6
EIGENVALUE_SPOT_CHECKS = 11
TIME_COLUMN = "time_per_nu1"

HamiltonianLike = Union[TimeDependentHamiltonian, OperatorMatrix]


@dataclass(frozen=True)
class TimeGrid:
    """Düzgün örnekleme ızgarası ve integratör toleransı (1/ν₁ birimleri)"""

    t0: float = 0.0
    t1: float = 1.0
    n_samples: int = 101
    tolerance: float = DEFAULT_TOLERANCE

    def __post_init__(self):
        if not self.t1 > self.t0:
            raise ParameterError(f"t1 > t0 olmalı: t0={self.t0}, t1={self.t1}")
        if int(self.n_samples) < 2:
            raise ParameterError(f"n_samples en az 2 olmalı: {self.n_samples}")
        if not 0 < self.tolerance <= 1e-3:
            raise ParameterError(f"tolerans (0, 1e-3] aralığında olmalı: {self.tolerance}")
        object.__setattr__(self, "n_samples", int(self.n_samples))

    @property
    def times(self) -> np.ndarray:
        return np.linspace(self.t0, self.t1, self.n_samples)

    @property
    def spacing(self) -> float:
        return (self.t1 - self.t0) / (self.n_samples - 1)

    @classmethod
    def with_spacing(cls, t0: float, t1: float, dt: float,
                     tolerance: float = DEFAULT_TOLERANCE) -> "TimeGrid":
        n_samples = int(round((t1 - t0) / dt)) + 1
        return cls(t0, t1, n_samples, tolerance)


@dataclass(frozen=True)
class Trajectory:
    """Zaman ızgarası ve isimli gözlenebilir serileri"""

    times: np.ndarray
    observables: Dict[str, np.ndarray]
    frame: Frame
    kind: StateKind
    metadata: Dict[str, object] = field(default_factory=dict)
    final_state: Optional[QuantumState] = field(default=None, repr=False)

    def __post_init__(self):
        for name, values in self.observables.items():
            if len(values) != len(self.times):
                raise ParameterError(f"'{name}' serisi {len(values)} örnek, zaman ızgarası {len(self.times)}")

    def __getitem__(self, name: str) -> np.ndarray:
        return self.observables[name]

    @property
    def names(self) -> List[str]:
        return list(self.observables)

    @property
    def warnings(self) -> List[str]:
        return list(self.metadata.get("warnings", []))

    def to_frame(self) -> pd.DataFrame:
        """İlk sütun zaman, ardından her gözlenebilir bir sütun"""
        data = {TIME_COLUMN: self.times}
        data.update(self.observables)
        return pd.DataFrame(data)


# Başlangıç durumu

@dataclass(frozen=True)
class StateSpec:
    """
    Doluluk süperpozisyonu: Σ cₖ |n_opt1, n_opt2, n_mec1, n_mec2⟩

    Metin biçimi: "0.5:1,0,0,0; 0.866:0,1,0,0" (genlik:doluluklar)
    """

    terms: Tuple[Tuple[complex, Tuple[int, int, int, int]], ...] = ((1.0, (0, 0, 0, 0)),)

    def __post_init__(self):
        normalized = []
        for amplitude, occupations in self.terms:
            occupations = tuple(int(n) for n in occupations)
            if len(occupations) != N_MODES:
                raise StateSpecError(f"{N_MODES} doluluk bekleniyordu: {occupations}")
            if any(n < 0 for n in occupations):
                raise StateSpecError(f"negatif doluluk: {occupations}")
            normalized.append((complex(amplitude), occupations))
        if not normalized:
            raise StateSpecError("durum tanımı boş")
        object.__setattr__(self, "terms", tuple(normalized))

    @classmethod
    def vacuum(cls) -> "StateSpec":
        return cls()

    @classmethod
    def product(cls, optical: Sequence[Tuple[complex, Tuple[int, int]]],
                mechanical: Sequence[Tuple[complex, Tuple[int, int]]]) -> "StateSpec":
        """Optik ve mekanik süperpozisyonların tensör çarpımı"""
        terms = []
        for c_opt, (n1, n2) in optical:
            for c_mec, (m1, m2) in mechanical:
                terms.append((complex(c_opt) * complex(c_mec), (n1, n2, m1, m2)))
        return cls(tuple(terms))

    @classmethod
    def parse(cls, text: str) -> "StateSpec":
        terms = []
        for chunk in text.split(";"):
            chunk = chunk.strip()
            if not chunk:
                continue
            if ":" not in chunk:
                raise StateSpecError(f"'genlik:doluluklar' bekleniyordu: {chunk!r}")
            amplitude, occupations = chunk.split(":", 1)
            try:
                value = complex(amplitude.strip().replace(" ", ""))
                levels = tuple(int(n) for n in occupations.split(","))
            except ValueError as e:
                raise StateSpecError(f"durum terimi ayrıştırılamadı: {chunk!r}") from e
            terms.append((value, levels))
        return cls(tuple(terms))

    def to_text(self) -> str:
        parts = []
        for amplitude, occupations in self.terms:
            if amplitude.imag == 0:
                value = repr(amplitude.real)
            else:
                value = repr(amplitude).strip("()")
            parts.append(f"{value}:{','.join(str(n) for n in occupations)}")
        return "; ".join(parts)

    @property
    def leading_occupations(self) -> Tuple[int, int, int, int]:
        """En büyük genlikli terimin doluluklar dörtlüsü"""
        return max(self.terms, key=lambda term: abs(term[0]))[1]


def build_initial_state(space: HilbertSpace, spec: StateSpec,
                        frame: Frame = Frame.POLARON_ROTATING) -> QuantumState:
    """
    Durum tanımından normalize saf durum oluşturur

    Args:
        space: Hilbert uzayı
        spec: Doluluk süperpozisyonu
        frame: Durumun etiketleneceği referans çerçevesi

    Returns:
        QuantumState: Birim normlu saf durum
    """
    vector = np.zeros(space.dim, dtype=complex)
    for amplitude, occupations in spec.terms:
        vector[space.index_of(occupations)] += amplitude

    norm = float(np.linalg.norm(vector))
    if norm == 0.0:
        raise StateSpecError("durum tanımının normu sıfır")
    return QuantumState(space, vector / norm, StateKind.PURE, frame)


# Gözlenebilirler

def standard_observables(space: HilbertSpace) -> Dict[str, OperatorMatrix]:
    """n_opt1, n_opt2, n_mec1, n_mec2"""
    return {f"n_{label}": number_op(space, mode) for mode, label in enumerate(MODE_LABELS)}


def top_fock_mask(space: HilbertSpace) -> np.ndarray:
    """Cutoff'u sıfırdan büyük modlardan en az biri en üst seviyede olan baz durumları"""
    mask = np.zeros(space.dim, dtype=bool)
    for mode, cutoff in enumerate(space.cutoffs):
        if cutoff > 0:
            mask |= space.occupation_table[:, mode] == cutoff
    return mask


def _as_td(hamiltonian: HamiltonianLike) -> TimeDependentHamiltonian:
    if isinstance(hamiltonian, TimeDependentHamiltonian):
        return hamiltonian
    wrapped = TimeDependentHamiltonian(hamiltonian.space, label=hamiltonian.label)
    wrapped.add(hamiltonian.data)
    return wrapped


def _pure_series(states: np.ndarray, operators: Dict[str, OperatorMatrix],
                 top_mask: np.ndarray) -> Dict[str, np.ndarray]:
    """states: (dim, n_samples)"""
    series = {}
    for name, operator in operators.items():
        values = np.sum(states.conj() * (operator.data @ states), axis=0)
        if operator.hermitian_hint:
            values = values.real
        series[name] = values
    populations = np.abs(states) ** 2
    series["norm"] = populations.sum(axis=0)
    series["top_fock_population"] = populations[top_mask].sum(axis=0)
    return series


def _density_series(rhos: Sequence[np.ndarray], operators: Dict[str, OperatorMatrix],
                    top_mask: np.ndarray) -> Dict[str, np.ndarray]:
    series = {name: [] for name in operators}
    traces, tops = [], []
    for rho in rhos:
        for name, operator in operators.items():
            value = complex(operator.data.multiply(rho.T).sum())
            series[name].append(value.real if operator.hermitian_hint else value)
        diagonal = np.real(np.diagonal(rho))
        traces.append(diagonal.sum())
        tops.append(diagonal[top_mask].sum())
    result = {name: np.asarray(values) for name, values in series.items()}
    result["trace"] = np.asarray(traces)
    result["top_fock_population"] = np.asarray(tops)
    return result


class _SolverClock:
    """Sağ tarafın en son değerlendirildiği an; integratörün kendi zamanı"""

    def __init__(self, t0: float):
        self.t = float(t0)

    def track(self, rhs):
        def tracked(t, y):
            self.t = float(t)
            return rhs(t, y)
        return tracked


def _check_solution(solution, grid: TimeGrid, clock: _SolverClock) -> None:
    if solution.status < 0 or not solution.success:
        raise IntegrationError(solution.message, time=clock.t)
    if solution.y.shape[1] != grid.n_samples:
        raise IntegrationError(f"{grid.n_samples} örnek bekleniyordu, {solution.y.shape[1]} üretildi",
                               time=float(solution.t[-1]) if len(solution.t) else grid.t0)


def propagate_schrodinger(hamiltonian: HamiltonianLike, psi0: QuantumState, grid: TimeGrid,
                          observables: Optional[Dict[str, OperatorMatrix]] = None,
                          method: str = DEFAULT_METHOD) -> Trajectory:
    """
    Saf durumu dψ/dt = −iH(t)ψ ile ilerletir

    Args:
        hamiltonian: Statik veya salınımlı terimli Hamiltonyen
        psi0: Saf başlangıç durumu
        grid: Örnekleme ızgarası ve bağıl tolerans
        observables: Ek gözlenebilirler (standart dörtlü her zaman eklenir)
        method: solve_ivp yöntemi

    Returns:
        Trajectory: Gözlenebilir serileri, norm ve üst seviye popülasyonu
    """
    if psi0.kind is not StateKind.PURE:
        raise StateSpecError("propagate_schrodinger saf durum bekler")
    hamiltonian = _as_td(hamiltonian)
    space = psi0.space
    operators = standard_observables(space)
    operators.update(observables or {})

    def rhs(t, y):
        return -1j * hamiltonian.apply(t, y)

    started = time.perf_counter()
    clock = _SolverClock(grid.t0)
    solution = solve_ivp(clock.track(rhs), (grid.t0, grid.t1), psi0.data, method=method,
                         t_eval=grid.times, rtol=grid.tolerance, atol=ABSOLUTE_TOL)
    _check_solution(solution, grid, clock)
    elapsed = time.perf_counter() - started

    series = _pure_series(solution.y, operators, top_fock_mask(space))
    norm_drift = float(np.abs(series["norm"] - 1.0).max())

    warnings = []
    if norm_drift > NORM_DRIFT_LIMIT:
        message = f"norm sapması {norm_drift:.3e} > {NORM_DRIFT_LIMIT:.0e}"
        logger.warning(f"⚠️ {message}")
        warnings.append(message)

    metadata = {
        "integrator": method,
        "rtol": grid.tolerance,
        "atol": ABSOLUTE_TOL,
        "nfev": int(solution.nfev),
        "wall_time_s": round(elapsed, 3),
        "norm_drift": norm_drift,
        "max_top_fock_population": float(series["top_fock_population"].max()),
        "warnings": warnings,
    }
    if hamiltonian.is_static:
        energy = np.real(np.sum(solution.y.conj() * (hamiltonian.static @ solution.y), axis=0))
        metadata["energy_drift"] = float(np.abs(energy - energy[0]).max())

    final = QuantumState(space, solution.y[:, -1], StateKind.PURE, psi0.frame, checked=False)
    logger.debug(f"Schrödinger: {solution.nfev} fonksiyon çağrısı, norm sapması {norm_drift:.2e}")
    return Trajectory(grid.times, series, psi0.frame, StateKind.PURE, metadata, final)


def _hermitian_part(rho: np.ndarray) -> np.ndarray:
    return 0.5 * (rho + rho.conj().T)


def propagate_lindblad(hamiltonian: HamiltonianLike,
                       collapse_ops: Sequence[Tuple[OperatorMatrix, float]],
                       rho0: QuantumState, grid: TimeGrid,
                       observables: Optional[Dict[str, OperatorMatrix]] = None,
                       method: str = DEFAULT_METHOD) -> Trajectory:
    """
    Yoğunluk matrisini Lindblad ana denklemiyle ilerletir

    Args:
        hamiltonian: Statik veya salınımlı terimli Hamiltonyen
        collapse_ops: (L, κ) çiftleri, κ ≥ 0
        rho0: Başlangıç durumu (saf ise ρ = |ψ⟩⟨ψ| yapılır)
        grid: Örnekleme ızgarası
        observables: Ek gözlenebilirler

    Returns:
        Trajectory: Gözlenebilir serileri, iz ve üst seviye popülasyonu
    """
    hamiltonian = _as_td(hamiltonian)
    rho0 = rho0.to_density()
    space = rho0.space
    dim = space.dim
    operators = standard_observables(space)
    operators.update(observables or {})

    jumps = []
    damping = sp.csr_matrix((dim, dim), dtype=complex)
    for operator, rate in collapse_ops:
        if rate < 0:
            raise ParameterError(f"kayıp oranı negatif olamaz: {rate}")
        if rate == 0:
            continue
        L = operator.data
        jumps.append((L, float(rate)))
        damping = damping + 0.5 * rate * (L.conj().T @ L)

    def rhs(t, y):
        rho = _hermitian_part(y.reshape(dim, dim))
        # X = −iHρ − ½Σκ L†Lρ;  dρ/dt = X + X† + Σ κ LρL†
        drift = -1j * hamiltonian.apply(t, rho) - damping @ rho
        result = drift + drift.conj().T
        for L, rate in jumps:
            left = L @ rho
            result = result + rate * (L @ left.conj().T).conj().T
        return result.ravel()

    started = time.perf_counter()
    clock = _SolverClock(grid.t0)
    solution = solve_ivp(clock.track(rhs), (grid.t0, grid.t1), rho0.data.ravel(), method=method,
                         t_eval=grid.times, rtol=grid.tolerance, atol=ABSOLUTE_TOL)
    _check_solution(solution, grid, clock)
    elapsed = time.perf_counter() - started

    rhos = [_hermitian_part(solution.y[:, k].reshape(dim, dim)) for k in range(grid.n_samples)]
    series = _density_series(rhos, operators, top_fock_mask(space))
    trace_drift = float(np.abs(series["trace"] - 1.0).max())

    warnings = []
    if trace_drift > TRACE_DRIFT_LIMIT:
        message = f"iz sapması {trace_drift:.3e} > {TRACE_DRIFT_LIMIT:.0e}"
        logger.warning(f"⚠️ {message}")
        warnings.append(message)

    checks = np.unique(np.linspace(0, grid.n_samples - 1,
                                   min(EIGENVALUE_SPOT_CHECKS, grid.n_samples)).astype(int))
    min_eigenvalue = math.inf
    for k in checks:
        value = float(np.linalg.eigvalsh(rhos[k]).min())
        min_eigenvalue = min(min_eigenvalue, value)
        if value < NEGATIVITY_LIMIT:
            message = f"t = {grid.times[k]:.6g} anında negatif özdeğer {value:.3e}"
            logger.warning(f"⚠️ {message}")
            warnings.append(message)

    metadata = {
        "integrator": method,
        "rtol": grid.tolerance,
        "atol": ABSOLUTE_TOL,
        "nfev": int(solution.nfev),
        "wall_time_s": round(elapsed, 3),
        "trace_drift": trace_drift,
        "min_eigenvalue": min_eigenvalue,
        "collapse_channels": len(jumps),
        "max_top_fock_population": float(series["top_fock_population"].max()),
        "warnings": warnings,
    }
    final = QuantumState(space, rhos[-1], StateKind.DENSITY, rho0.frame, checked=False)
    logger.debug(f"Lindblad: {solution.nfev} fonksiyon çağrısı, iz sapması {trace_drift:.2e}")
    return Trajectory(grid.times, series, rho0.frame, StateKind.DENSITY, metadata, final)
