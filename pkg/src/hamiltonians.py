"""
Hamiltonyen Modülü - İki Nanobeam Optomekanik Modeli

Bu modül modelin tüm Hamiltonyenlerini kurar:
- Laboratuvar çerçevesi tam Hamiltonyen (cos(ω_d t) sürücülü)
- Optik dönen çerçeve H₁ (RWA sonrası)
- Polaron çerçevesi serisi H₂ = H_K + H_OM + H_OC
- Rejim Hamiltonyenleri H_NBS, H_OMC, H_OMS ve birinci mertebe etkin modeller
- Yardımcı operatör fonksiyonu F[j,p,q] ve ₁F₁(−n; b; x)
- Lindblad çöküş operatörleri

Zamana bağlı Hamiltonyenler statik terim + (operatör, frekans) listesi olarak
tutulur; her adımda seyrek matris yeniden kurulmaz.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Dict, List, Tuple

import numpy as np
import scipy.sparse as sp

from exceptions import InvalidModeError, ParameterError
from fock_space import (
    MEC1,
    MEC2,
    OPT1,
    OPT2,
    Frame,
    HilbertSpace,
    OperatorMatrix,
    annihilation,
    number_op,
    op_function_of_number,
    zero_operator,
)
from parameters import FMode, ModelParams, Regime, RegimeSpec

logger = logging.getLogger(__name__)

FREQUENCY_REL_TOL = 1e-9


@dataclass
class TimeDependentHamiltonian:
    """
    H(t) = static + Σₖ e^{iωₖt} Oₖ

    Terim kümesi Hermitian eşlenik altında kapalıdır: Oₖ, ωₖ ile birlikte
    Oₖ†, −ωₖ de bulunur. Sıfır frekanslı terimler statik kısma katılır.
    """

    space: HilbertSpace
    static: sp.csr_matrix = None
    terms: Dict[float, sp.csr_matrix] = field(default_factory=dict)
    frequency_tol: float = 1e-12
    frame: Frame = Frame.POLARON_ROTATING
    label: str = ""

    def __post_init__(self):
        if self.static is None:
            self.static = sp.csr_matrix((self.space.dim, self.space.dim), dtype=complex)

    def add(self, operator: sp.spmatrix, frequency: float = 0.0) -> None:
        """Operatörü verilen frekans grubuna ekler"""
        operator = sp.csr_matrix(operator, dtype=complex)
        if operator.nnz == 0:
            return
        if abs(frequency) <= self.frequency_tol:
            self.static = self.static + operator
            return
        for key in self.terms:
            if abs(key - frequency) <= self.frequency_tol:
                self.terms[key] = self.terms[key] + operator
                return
        self.terms[float(frequency)] = operator

    def add_with_conjugate(self, operator: sp.spmatrix, frequency: float) -> None:
        """O e^{iωt} + O† e^{−iωt}"""
        operator = sp.csr_matrix(operator, dtype=complex)
        self.add(operator, frequency)
        self.add(operator.conj().T.tocsr(), -frequency)

    @property
    def is_static(self) -> bool:
        return not self.terms

    @property
    def frequencies(self) -> List[float]:
        return sorted(self.terms)

    def at(self, t: float) -> OperatorMatrix:
        data = self.static.copy()
        for frequency, operator in self.terms.items():
            data = data + np.exp(1j * frequency * t) * operator
        return OperatorMatrix(self.space, data, label=self.label)

    def apply(self, t: float, y: np.ndarray) -> np.ndarray:
        """H(t)·y; y vektör veya matris olabilir"""
        result = self.static @ y
        for frequency, operator in self.terms.items():
            result = result + np.exp(1j * frequency * t) * (operator @ y)
        return result

    def secular_part(self) -> OperatorMatrix:
        """Sıfır frekanslı (zamandan bağımsız) kısım"""
        return OperatorMatrix(self.space, self.static.copy(), label=f"{self.label} (sekuler)")

    def hermiticity_error(self, t: float = 0.0) -> float:
        return self.at(t).hermiticity_error()

    def max_abs(self) -> float:
        values = [OperatorMatrix(self.space, self.static).max_abs()]
        values += [float(np.abs(op.data).max()) for op in self.terms.values() if op.nnz]
        return max(values)


def _static(space: HilbertSpace, operator: OperatorMatrix, frame: Frame,
            label: str) -> TimeDependentHamiltonian:
    hamiltonian = TimeDependentHamiltonian(space, frame=frame, label=label)
    hamiltonian.add(operator.data)
    return hamiltonian


def _frequency_tol(params: ModelParams) -> float:
    return FREQUENCY_REL_TOL * max(max(params.nu), 1e-300)


# ₁F₁ ve F[j,p,q]

def confluent_1F1_table(n_max: int, b: int, x: float) -> np.ndarray:
    """
    Mₙ = ₁F₁(−n; b; x), n = 0..n_max

    Mₙ doğrudan normalize Laguerre yinelemesiyle hesaplanır (fark formu):
    d₁ = −x/b, dₖ₊₁ = −x/(k+b)·Mₖ + k/(k+b)·dₖ, Mₖ₊₁ = Mₖ + dₖ₊₁.
    """
    if n_max < 0 or n_max > 10 ** 6:
        raise ParameterError(f"n 0..10⁶ aralığında olmalı: {n_max}")
    if b < 1 or int(b) != b:
        raise ParameterError(f"b pozitif tamsayı olmalı: {b}")
    if x < 0:
        raise ParameterError(f"x negatif olamaz: {x}")

    table = np.empty(n_max + 1)
    table[0] = 1.0
    if n_max == 0:
        return table
    d = -x / b
    p = 1.0 + d
    table[1] = p
    for k in range(1, n_max):
        d = -x / (k + b) * p + k / (k + b) * d
        p += d
        table[k + 1] = p
    return table


def confluent_1F1_neg_int(n: int, b: int, x: float) -> float:
    """
    ₁F₁(−n; b; x) = Σ_{k=0..n} (−n)ₖ/((b)ₖ k!) xᵏ

    Args:
        n: Negatif olmayan tamsayı (≤ 10⁶)
        b: Pozitif tamsayı
        x: x ≥ 0

    Returns:
        float: Sonlu toplamın değeri
    """
    if int(n) != n:
        raise ParameterError(f"n tamsayı olmalı: {n}")
    return float(confluent_1F1_table(int(n), b, x)[-1])


def _check_nanobeam(j: int) -> int:
    if j not in (1, 2):
        raise InvalidModeError(f"nanobeam indeksi 1 veya 2 olmalı: {j!r}")
    return MEC1 + j - 1


def _check_pq(p: int, q: int) -> None:
    if int(p) != p or p < 1:
        raise ParameterError(f"p pozitif tamsayı olmalı: {p}")
    if int(q) != q or q < 0:
        raise ParameterError(f"q negatif olmayan tamsayı olmalı: {q}")


def aux_F(params: ModelParams, space: HilbertSpace, j: int, p: int, q: int) -> OperatorMatrix:
    """
    F[j,p,q] = (−g/ν)^q e^{−(g/ν)²/2} ₁F₁[−b̂†b̂; p; (g/ν)²]

    Args:
        params: Fiziksel parametreler
        space: Hilbert uzayı
        j: Nanobeam (1 veya 2)
        p: Pozitif tamsayı
        q: Negatif olmayan tamsayı

    Returns:
        OperatorMatrix: mec-j sayı bazında köşegen Hermitian operatör
    """
    mode = _check_nanobeam(j)
    _check_pq(p, q)
    r = params.ratio(j)
    x = r * r
    prefactor = (-r) ** q * math.exp(-x / 2.0)
    table = confluent_1F1_table(space.cutoffs[mode], p, x)
    operator = op_function_of_number(space, mode, lambda n: prefactor * table[n])
    return OperatorMatrix(space, operator.data, hermitian_hint=True, label=f"F[{j},{p},{q}]")


def aux_F_leading(params: ModelParams, space: HilbertSpace, j: int, p: int, q: int) -> OperatorMatrix:
    """F[j,p,q] ≈ (−g/ν)^q [1 − (1/2 + n̂/p)(g/ν)²]"""
    mode = _check_nanobeam(j)
    _check_pq(p, q)
    r = params.ratio(j)
    x = r * r
    operator = op_function_of_number(space, mode, lambda n: (-r) ** q * (1.0 - (0.5 + n / p) * x))
    return OperatorMatrix(space, operator.data, hermitian_hint=True, label=f"F~[{j},{p},{q}]")


def _aux(params, space, j, p, q, f_mode: FMode) -> sp.csr_matrix:
    builder = aux_F if FMode(f_mode) is FMode.EXACT else aux_F_leading
    return builder(params, space, j, p, q).data


# Ortak parçalar

def _ladders(space: HilbertSpace):
    a = [annihilation(space, OPT1).data, annihilation(space, OPT2).data]
    b = [annihilation(space, MEC1).data, annihilation(space, MEC2).data]
    return a, b


def _dag(matrix: sp.spmatrix) -> sp.csr_matrix:
    return matrix.conj().T.tocsr()


def kerr_term(params: ModelParams, space: HilbertSpace) -> sp.csr_matrix:
    """H_K = −Σⱼ (gⱼ²/νⱼ)(n̂_opt,ⱼ)²"""
    data = sp.csr_matrix((space.dim, space.dim), dtype=complex)
    for j, mode in ((1, OPT1), (2, OPT2)):
        n = number_op(space, mode).data
        data = data - params.kerr(j) * (n @ n)
    return data


def _sideband_drive(params: ModelParams, space: HilbertSpace, f_mode: FMode) -> sp.csr_matrix:
    """−Σⱼ (Ωⱼ/2)(âⱼ†F[j,2,1]b̂ⱼ + âⱼb̂ⱼ†F[j,2,1]); OMC ve OMS'de ortak"""
    a, b = _ladders(space)
    data = sp.csr_matrix((space.dim, space.dim), dtype=complex)
    for j in (1, 2):
        F = _aux(params, space, j, 2, 1, f_mode)
        forward = _dag(a[j - 1]) @ F @ b[j - 1]
        data = data - (params.drive[j - 1] / 2.0) * (forward + _dag(forward))
    return data


# Laboratuvar ve dönen çerçeveler

def full_hamiltonian_td(params: ModelParams, space: HilbertSpace) -> TimeDependentHamiltonian:
    """
    Laboratuvar çerçevesi:
    Σⱼ[ωⱼn̂ₐ + νⱼn̂_b − gⱼn̂ₐ(b̂†+b̂) + Ωⱼcos(ω_dⱼt)(â†+â)] + γ(â₁†â₂ + h.c.)
    """
    a, b = _ladders(space)
    hamiltonian = TimeDependentHamiltonian(space, frequency_tol=_frequency_tol(params),
                                           frame=Frame.LAB, label="H_lab")
    for j in (1, 2):
        aj, bj = a[j - 1], b[j - 1]
        na = _dag(aj) @ aj
        nb = _dag(bj) @ bj
        static = (params.omega[j - 1] * na + params.nu[j - 1] * nb
                  - params.g[j - 1] * na @ (bj + _dag(bj)))
        hamiltonian.add(static)
        # Ω cos(ω_d t) = (Ω/2)(e^{iω_d t} + e^{−iω_d t})
        drive = (params.drive[j - 1] / 2.0) * (aj + _dag(aj))
        hamiltonian.add(drive, params.omega_d[j - 1])
        hamiltonian.add(drive, -params.omega_d[j - 1])
    hopping = _dag(a[0]) @ a[1]
    hamiltonian.add(params.gamma * (hopping + _dag(hopping)))
    return hamiltonian


def full_hamiltonian(params: ModelParams, space: HilbertSpace, t: float) -> OperatorMatrix:
    operator = full_hamiltonian_td(params, space).at(t)
    return OperatorMatrix(space, operator.data, hermitian_hint=True, label="H_lab")


def rotating_frame_hamiltonian_td(params: ModelParams, space: HilbertSpace) -> TimeDependentHamiltonian:
    """
    H₁ = Σⱼ[νⱼn̂_b − gⱼn̂ₐ(b̂†+b̂) + (Ωⱼ/2)(â†e^{iΔⱼt} + âe^{−iΔⱼt})]
         + γ(â₁†â₂e^{iδt} + â₁â₂†e^{−iδt})
    """
    a, b = _ladders(space)
    hamiltonian = TimeDependentHamiltonian(space, frequency_tol=_frequency_tol(params),
                                           frame=Frame.ROTATING, label="H1")
    for j in (1, 2):
        aj, bj = a[j - 1], b[j - 1]
        na = _dag(aj) @ aj
        nb = _dag(bj) @ bj
        hamiltonian.add(params.nu[j - 1] * nb - params.g[j - 1] * na @ (bj + _dag(bj)))
        hamiltonian.add_with_conjugate((params.drive[j - 1] / 2.0) * _dag(aj), params.detuning[j - 1])
    hamiltonian.add_with_conjugate(params.gamma * _dag(a[0]) @ a[1], params.delta)
    return hamiltonian


def rotating_frame_hamiltonian(params: ModelParams, space: HilbertSpace, t: float) -> OperatorMatrix:
    operator = rotating_frame_hamiltonian_td(params, space).at(t)
    return OperatorMatrix(space, operator.data, hermitian_hint=True, label="H1")


# Polaron çerçevesi serisi

def _powers(matrix: sp.csr_matrix, order: int) -> List[sp.csr_matrix]:
    powers = [sp.identity(matrix.shape[0], dtype=complex, format="csr")]
    for _ in range(order):
        powers.append((powers[-1] @ matrix).tocsr())
    return powers


def polaron_series_td(params: ModelParams, space: HilbertSpace,
                      series_order: int) -> TimeDependentHamiltonian:
    """
    H₂ = H_K + H_OM + H_OC, p+q ≤ series_order ve r+s+u+v ≤ series_order ile kesilmiş.

    H_OM: (Ωⱼ/2)e^{−αⱼ²/2} Σ (−1)^q αⱼ^{p+q}/(p!q!) âⱼ†b̂ⱼ†ᵖb̂ⱼ^q e^{i[Δⱼ+(p−q)νⱼ]t} + h.c.
    H_OC: γe^{−(α₁²+α₂²)/2} Σ (−1)^{s+u} α₁^{r+s}α₂^{u+v}/(r!s!u!v!)
          â₁†â₂ b̂₁†ʳb̂₁ˢ b̂₂†ᵘb̂₂ᵛ e^{i[δ+(r−s)ν₁+(u−v)ν₂]t} + h.c.
    """
    if series_order < 0:
        raise ParameterError(f"series_order negatif olamaz: {series_order}")

    a, b = _ladders(space)
    alpha = (params.alpha(1), params.alpha(2))
    nu = params.nu
    hamiltonian = TimeDependentHamiltonian(space, frequency_tol=_frequency_tol(params),
                                           frame=Frame.POLARON_ROTATING, label="H2")
    hamiltonian.add(kerr_term(params, space))

    up = [_powers(_dag(bj), series_order) for bj in b]
    down = [_powers(bj, series_order) for bj in b]

    # H_OM
    for j in (1, 2):
        aj = a[j - 1]
        al = alpha[j - 1]
        base = (params.drive[j - 1] / 2.0) * math.exp(-al * al / 2.0)
        if base == 0.0:
            continue
        for p in range(series_order + 1):
            for q in range(series_order + 1 - p):
                coefficient = base * (-1) ** q * al ** (p + q) / (math.factorial(p) * math.factorial(q))
                if coefficient == 0.0:
                    continue
                mechanical = up[j - 1][p] @ down[j - 1][q]
                if mechanical.nnz == 0:
                    continue
                frequency = params.detuning[j - 1] + (p - q) * nu[j - 1]
                hamiltonian.add_with_conjugate(coefficient * _dag(aj) @ mechanical, frequency)

    # H_OC
    a1, a2 = alpha
    base = params.gamma * math.exp(-(a1 * a1 + a2 * a2) / 2.0)
    if base != 0.0:
        hopping = _dag(a[0]) @ a[1]
        for r in range(series_order + 1):
            for s in range(series_order + 1 - r):
                mech1 = up[0][r] @ down[0][s]
                if mech1.nnz == 0:
                    continue
                for u in range(series_order + 1 - r - s):
                    for v in range(series_order + 1 - r - s - u):
                        coefficient = (base * (-1) ** (s + u) * a1 ** (r + s) * a2 ** (u + v)
                                       / (math.factorial(r) * math.factorial(s)
                                          * math.factorial(u) * math.factorial(v)))
                        if coefficient == 0.0:
                            continue
                        mech2 = up[1][u] @ down[1][v]
                        if mech2.nnz == 0:
                            continue
                        frequency = params.delta + (r - s) * nu[0] + (u - v) * nu[1]
                        hamiltonian.add_with_conjugate(coefficient * hopping @ mech1 @ mech2, frequency)

    return hamiltonian


def h_polaron_series(params: ModelParams, space: HilbertSpace, t: float,
                     series_order: int) -> OperatorMatrix:
    operator = polaron_series_td(params, space, series_order).at(t)
    return OperatorMatrix(space, operator.data, hermitian_hint=True, label="H2")


# Rejim Hamiltonyenleri

def h_nbs(params: ModelParams, space: HilbertSpace, f_mode: FMode = FMode.EXACT) -> OperatorMatrix:
    """
    Sürülen doğrusal olmayan optik ışın bölücü:
    −Σ(gⱼ²/νⱼ)n̂ⱼ² + Σ(Ωⱼ/2)F[j,1,0](âⱼ†+âⱼ) + γF[1,1,0]F[2,1,0](â₁†â₂ + â₁â₂†)
    """
    a, _ = _ladders(space)
    data = kerr_term(params, space)
    F = [_aux(params, space, j, 1, 0, f_mode) for j in (1, 2)]
    for j in (1, 2):
        aj = a[j - 1]
        data = data + (params.drive[j - 1] / 2.0) * F[j - 1] @ (aj + _dag(aj))
    hopping = _dag(a[0]) @ a[1]
    data = data + params.gamma * F[0] @ F[1] @ (hopping + _dag(hopping))
    return OperatorMatrix(space, data, hermitian_hint=True, label="H_NBS")


def h_omc(params: ModelParams, space: HilbertSpace, f_mode: FMode = FMode.EXACT) -> OperatorMatrix:
    """
    Optomekanik kuplör:
    −Σ{(gⱼ²/νⱼ)n̂ⱼ² + (Ωⱼ/2)(âⱼ†F b̂ⱼ + âⱼb̂ⱼ†F)}
    − γ(â₁†â₂b̂₁†F[1,2,1]F[2,2,1]b̂₂ + h.c.)
    """
    a, b = _ladders(space)
    data = kerr_term(params, space) + _sideband_drive(params, space, f_mode)
    F1 = _aux(params, space, 1, 2, 1, f_mode)
    F2 = _aux(params, space, 2, 2, 1, f_mode)
    exchange = _dag(a[0]) @ a[1] @ _dag(b[0]) @ F1 @ F2 @ b[1]
    data = data - params.gamma * (exchange + _dag(exchange))
    return OperatorMatrix(space, data, hermitian_hint=True, label="H_OMC")


def h_oms_gamma_term(params: ModelParams, space: HilbertSpace,
                     f_mode: FMode = FMode.EXACT) -> OperatorMatrix:
    """−γ(â₁†â₂b̂₁†b̂₂†F[1,2,1]F[2,2,1] + h.c.)"""
    a, b = _ladders(space)
    F1 = _aux(params, space, 1, 2, 1, f_mode)
    F2 = _aux(params, space, 2, 2, 1, f_mode)
    squeeze = _dag(a[0]) @ a[1] @ _dag(b[0]) @ _dag(b[1]) @ F1 @ F2
    return OperatorMatrix(space, -params.gamma * (squeeze + _dag(squeeze)),
                          hermitian_hint=True, label="H_OMS,γ")


def h_oms(params: ModelParams, space: HilbertSpace, f_mode: FMode = FMode.EXACT) -> OperatorMatrix:
    """İki modlu mekanik sıkıştırma: Kerr + yan bant sürücü + γ çift üretim terimi"""
    data = (kerr_term(params, space) + _sideband_drive(params, space, f_mode)
            + h_oms_gamma_term(params, space, f_mode).data)
    return OperatorMatrix(space, data, hermitian_hint=True, label="H_OMS")


def sideband_drive_block(params: ModelParams, space: HilbertSpace,
                         f_mode: FMode = FMode.EXACT) -> OperatorMatrix:
    return OperatorMatrix(space, _sideband_drive(params, space, f_mode), hermitian_hint=True)


# Birinci mertebe etkin modeller

def h_nbs_rabi(params: ModelParams, space: HilbertSpace, include_kerr: bool = True) -> OperatorMatrix:
    """Rabi rejimi, F ≈ 1: Σ[−(g²/ν)n̂² + (Ω/2)(â†+â)] + γ(â₁†â₂ + h.c.)"""
    a, _ = _ladders(space)
    data = kerr_term(params, space) if include_kerr else zero_operator(space).data
    for j in (1, 2):
        aj = a[j - 1]
        data = data + (params.drive[j - 1] / 2.0) * (aj + _dag(aj))
    hopping = _dag(a[0]) @ a[1]
    data = data + params.gamma * (hopping + _dag(hopping))
    return OperatorMatrix(space, data, hermitian_hint=True, label="H_NBS,rabi")


def _effective(params: ModelParams, space: HilbertSpace, squeezing: bool,
               include_kerr: bool) -> sp.csr_matrix:
    a, b = _ladders(space)
    data = kerr_term(params, space) if include_kerr else zero_operator(space).data
    for j in (1, 2):
        forward = _dag(a[j - 1]) @ b[j - 1]
        data = data - params.omega_eff(j) * (forward + _dag(forward))
    if squeezing:
        pair = _dag(a[0]) @ a[1] @ _dag(b[0]) @ _dag(b[1])
    else:
        pair = _dag(a[0]) @ a[1] @ _dag(b[0]) @ b[1]
    return data - params.gamma_eff * (pair + _dag(pair))


def h_omc_effective(params: ModelParams, space: HilbertSpace, include_kerr: bool = True) -> OperatorMatrix:
    """−Σ[(g²/ν)n̂² + Ω_eff(â†b̂ + âb̂†)] − Γ_eff(â₁†â₂b̂₁†b̂₂ + h.c.)"""
    return OperatorMatrix(space, _effective(params, space, False, include_kerr),
                          hermitian_hint=True, label="H_OMC,eff")


def h_oms_effective(params: ModelParams, space: HilbertSpace, include_kerr: bool = True) -> OperatorMatrix:
    """−Σ[(g²/ν)n̂² + Ω_eff(â†b̂ + âb̂†)] − Γ_eff(â₁†â₂b̂₁†b̂₂† + h.c.)"""
    return OperatorMatrix(space, _effective(params, space, True, include_kerr),
                          hermitian_hint=True, label="H_OMS,eff")


# Kayıplar

def drive_collapse_ops(params: ModelParams, space: HilbertSpace) -> List[Tuple[OperatorMatrix, float]]:
    """
    Sıfır olmayan oranlar için (L, κ) çiftleri: âⱼ ↔ κ_opt,ⱼ ve b̂ⱼ ↔ κ_mec,ⱼ

    Returns:
        List: [(â₁, κ_opt,1), (â₂, κ_opt,2), (b̂₁, κ_mec,1), (b̂₂, κ_mec,2)] içinden sıfır olmayanlar
    """
    pairs = (
        (OPT1, params.kappa_opt[0]),
        (OPT2, params.kappa_opt[1]),
        (MEC1, params.kappa_mec[0]),
        (MEC2, params.kappa_mec[1]),
    )
    return [(annihilation(space, mode), float(rate)) for mode, rate in pairs if rate > 0]


# Dağıtıcı

def build_hamiltonian(spec: RegimeSpec, params: ModelParams,
                      space: HilbertSpace) -> TimeDependentHamiltonian:
    """
    Rejime göre Hamiltonyeni kurar

    Args:
        spec: Rejim, seri mertebesi ve F modu
        params: Fiziksel parametreler
        space: Hilbert uzayı

    Returns:
        TimeDependentHamiltonian: Statik rejimlerde terim listesi boştur
    """
    regime = spec.regime
    logger.info(f"🔧 Hamiltonyen kuruluyor: {regime.value} (dim={space.dim})")
    for warning in params.series_warnings():
        logger.warning(f"⚠️ {warning}")

    if regime is Regime.FULL_LAB:
        return full_hamiltonian_td(params, space)
    if regime is Regime.ROTATING:
        return rotating_frame_hamiltonian_td(params, space)
    if regime is Regime.POLARON_SERIES:
        return polaron_series_td(params, space, spec.series_order)

    builders = {
        Regime.NBS: lambda: h_nbs(params, space, spec.f_mode),
        Regime.OMC: lambda: h_omc(params, space, spec.f_mode),
        Regime.OMS: lambda: h_oms(params, space, spec.f_mode),
        Regime.NBS_RABI: lambda: h_nbs_rabi(params, space, spec.include_kerr),
        Regime.OMC_EFFECTIVE: lambda: h_omc_effective(params, space, spec.include_kerr),
        Regime.OMS_EFFECTIVE: lambda: h_oms_effective(params, space, spec.include_kerr),
    }
    operator = builders[regime]()
    return _static(space, operator, Frame.POLARON_ROTATING, operator.label)


def frame_for(regime: Regime) -> Frame:
    if regime is Regime.FULL_LAB:
        return Frame.LAB
    if regime is Regime.ROTATING:
        return Frame.ROTATING
    return Frame.POLARON_ROTATING
