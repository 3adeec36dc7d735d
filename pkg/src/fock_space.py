"""
Fock Uzayı Modülü - Kesilmiş Dört Modlu Bozonik Uzay

Bu modül, iki nanobeam'in optik ve mekanik modlarından oluşan
bileşik Fock uzayını ve üzerindeki operatör cebirini sağlar:
- Mod sırası her yerde [opt1, opt2, mec1, mec2]
- Operatörler seyrek (scipy.sparse CSR), durumlar yoğun (numpy)
- Operatörler doğrudan kesilmiş uzayda kurulur, büyük uzaydan izdüşüm yapılmaz
"""

import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from typing import Callable, Iterable, Optional, Sequence, Tuple, Union

import numpy as np
import scipy.sparse as sp
import scipy.sparse.linalg as spla

from exceptions import (
    CapacityError,
    ConvergenceError,
    DimensionMismatchError,
    InvalidModeError,
    ParameterError,
    StateSpecError,
)
from settings import DEFAULT_MAX_HILBERT_DIM

logger = logging.getLogger(__name__)

# Mod indeksleri
OPT1, OPT2, MEC1, MEC2 = 0, 1, 2, 3
N_MODES = 4
MODE_LABELS = ("opt1", "opt2", "mec1", "mec2")
OPTICAL_MODES = (OPT1, OPT2)
MECHANICAL_MODES = (MEC1, MEC2)

HERMITIAN_TOL = 1e-12
PURE_NORM_TOL = 1e-9
DENSITY_TRACE_TOL = 1e-9
DENSITY_MIN_EIGENVALUE = -1e-8
EXPM_TOL = 1e-10
EXPM_MAX_TERMS = 60


class StateKind(Enum):
    PURE = "pure"
    DENSITY = "density"


class Frame(Enum):
    LAB = "lab"
    ROTATING = "rotating"
    POLARON_ROTATING = "polaron-rotating"


@dataclass(frozen=True)
class HilbertSpace:
    """
    Dört bozonik modun kesilmiş tensör çarpım uzayı.

    Birleşik indeks C sırasıyla oluşur: mod 0 (opt1) en anlamlı basamaktır.
    """

    cutoffs: Tuple[int, int, int, int]

    @property
    def shape(self) -> Tuple[int, ...]:
        return tuple(c + 1 for c in self.cutoffs)

    @property
    def dim(self) -> int:
        return int(np.prod(self.shape))

    def index_of(self, occupations: Sequence[int]) -> int:
        """
        Doluluk dörtlüsünü birleşik baz indeksine çevirir

        Args:
            occupations: (n_opt1, n_opt2, n_mec1, n_mec2)

        Returns:
            int: Baz indeksi
        """
        occupations = tuple(int(n) for n in occupations)
        if len(occupations) != N_MODES:
            raise StateSpecError(f"{N_MODES} doluluk bekleniyordu, {len(occupations)} verildi")
        for mode, (n, c) in enumerate(zip(occupations, self.cutoffs)):
            if n < 0 or n > c:
                raise StateSpecError(f"{MODE_LABELS[mode]} doluluğu {n}, cutoff {c} dışında")
        return int(np.ravel_multi_index(occupations, self.shape))

    def occupations_of(self, index: int) -> Tuple[int, int, int, int]:
        if index < 0 or index >= self.dim:
            raise StateSpecError(f"indeks {index} uzay boyutu {self.dim} dışında")
        return tuple(int(n) for n in np.unravel_index(index, self.shape))

    @cached_property
    def occupation_table(self) -> np.ndarray:
        """(dim, 4) tamsayı tablosu: her baz durumunun mod dolulukları"""
        grids = np.indices(self.shape).reshape(N_MODES, -1)
        return grids.T.copy()

    def below_cutoff_mask(self, modes: Iterable[int]) -> np.ndarray:
        """Verilen modların hepsi cutoff altında olan baz durumları için True"""
        mask = np.ones(self.dim, dtype=bool)
        for mode in modes:
            _check_mode(mode)
            mask &= self.occupation_table[:, mode] < self.cutoffs[mode]
        return mask


def _check_mode(mode: int) -> None:
    if not isinstance(mode, (int, np.integer)) or not 0 <= mode < N_MODES:
        raise InvalidModeError(f"geçersiz mod indeksi: {mode!r} (0..{N_MODES - 1} olmalı)")


def build_space(cutoffs: Sequence[int], max_dim: Optional[int] = None) -> HilbertSpace:
    """
    Kesilmiş Fock uzayını oluşturur

    Args:
        cutoffs: Her mod için maksimum doluluk [opt1, opt2, mec1, mec2]
        max_dim: Boyut sınırı (varsayılan 2·10⁵)

    Returns:
        HilbertSpace: Tutarlı indeks haritasına sahip uzay
    """
    cutoffs = tuple(int(c) for c in cutoffs)
    if len(cutoffs) != N_MODES:
        raise StateSpecError(f"{N_MODES} cutoff bekleniyordu, {len(cutoffs)} verildi")
    if any(c < 0 for c in cutoffs):
        raise StateSpecError(f"cutoff değerleri negatif olamaz: {list(cutoffs)}")

    limit = DEFAULT_MAX_HILBERT_DIM if max_dim is None else int(max_dim)
    product = math.prod(c + 1 for c in cutoffs)
    if product > limit:
        raise CapacityError(cutoffs, product, limit)

    space = HilbertSpace(cutoffs)
    logger.debug(f"Hilbert uzayı oluşturuldu: cutoffs={list(cutoffs)}, dim={product}")
    return space


@dataclass(frozen=True, eq=False)
class OperatorMatrix:
    """Bileşik uzayda seyrek karmaşık operatör"""

    space: HilbertSpace
    data: sp.csr_matrix
    hermitian_hint: bool = False
    label: str = ""

    def __post_init__(self):
        data = sp.csr_matrix(self.data, dtype=complex)
        object.__setattr__(self, "data", data)
        if data.shape != (self.space.dim, self.space.dim):
            raise DimensionMismatchError(
                f"operatör boyutu {data.shape}, uzay boyutu {self.space.dim}"
            )
        if __debug__ and self.hermitian_hint:
            scale = max(1.0, self.max_abs())
            assert self.hermiticity_error() <= HERMITIAN_TOL * scale, \
                f"'{self.label}' Hermitian değil: {self.hermiticity_error():.3e}"

    # Cebir
    def dag(self) -> "OperatorMatrix":
        return OperatorMatrix(self.space, self.data.conj().T.tocsr(),
                              self.hermitian_hint, f"({self.label})†" if self.label else "")

    def _coerce(self, other: "OperatorMatrix") -> sp.csr_matrix:
        if not isinstance(other, OperatorMatrix):
            return NotImplemented
        if other.space != self.space:
            raise DimensionMismatchError(
                f"uzaylar uyuşmuyor: {self.space.cutoffs} vs {other.space.cutoffs}"
            )
        return other.data

    def __add__(self, other):
        data = self._coerce(other)
        if data is NotImplemented:
            return NotImplemented
        return OperatorMatrix(self.space, self.data + data,
                              self.hermitian_hint and other.hermitian_hint)

    def __sub__(self, other):
        data = self._coerce(other)
        if data is NotImplemented:
            return NotImplemented
        return OperatorMatrix(self.space, self.data - data,
                              self.hermitian_hint and other.hermitian_hint)

    def __neg__(self):
        return OperatorMatrix(self.space, -self.data, self.hermitian_hint, self.label)

    def __mul__(self, scalar):
        if not np.isscalar(scalar):
            return NotImplemented
        hermitian = self.hermitian_hint and np.isreal(scalar)
        return OperatorMatrix(self.space, self.data * scalar, bool(hermitian))

    __rmul__ = __mul__

    def __matmul__(self, other):
        if isinstance(other, OperatorMatrix):
            return OperatorMatrix(self.space, self.data @ self._coerce(other))
        if isinstance(other, np.ndarray):
            if other.shape[0] != self.space.dim:
                raise DimensionMismatchError(
                    f"vektör boyutu {other.shape[0]}, uzay boyutu {self.space.dim}"
                )
            return self.data @ other
        return NotImplemented

    def commutator(self, other: "OperatorMatrix") -> "OperatorMatrix":
        """[self, other]"""
        data = self._coerce(other)
        return OperatorMatrix(self.space, self.data @ data - data @ self.data)

    # Normlar
    def max_abs(self) -> float:
        if self.data.nnz == 0:
            return 0.0
        return float(np.abs(self.data.data).max())

    def hermiticity_error(self) -> float:
        diff = self.data - self.data.conj().T
        if diff.nnz == 0:
            return 0.0
        return float(np.abs(diff.data).max())

    def is_hermitian(self, tol: float = HERMITIAN_TOL) -> bool:
        return self.hermiticity_error() <= tol * max(1.0, self.max_abs())

    def to_dense(self) -> np.ndarray:
        return self.data.toarray()

    def element(self, bra: Sequence[int], ket: Sequence[int]) -> complex:
        """⟨bra|A|ket⟩, doluluk dörtlüleriyle"""
        return complex(self.data[self.space.index_of(bra), self.space.index_of(ket)])


def identity(space: HilbertSpace) -> OperatorMatrix:
    return OperatorMatrix(space, sp.identity(space.dim, dtype=complex, format="csr"),
                          hermitian_hint=True, label="I")


def zero_operator(space: HilbertSpace) -> OperatorMatrix:
    return OperatorMatrix(space, sp.csr_matrix((space.dim, space.dim), dtype=complex),
                          hermitian_hint=True, label="0")


def _single_mode_lowering(cutoff: int) -> sp.csr_matrix:
    if cutoff == 0:
        return sp.csr_matrix((1, 1), dtype=complex)
    return sp.diags(np.sqrt(np.arange(1, cutoff + 1)), 1, format="csr", dtype=complex)


def _embed(space: HilbertSpace, mode: int, single: sp.spmatrix) -> sp.csr_matrix:
    """Tek mod operatörünü diğer modlarda birim ile tensör çarpımına gömer"""
    result = None
    for m, c in enumerate(space.cutoffs):
        factor = single if m == mode else sp.identity(c + 1, dtype=complex, format="csr")
        result = factor if result is None else sp.kron(result, factor, format="csr")
    return result.tocsr()


def annihilation(space: HilbertSpace, mode: int) -> OperatorMatrix:
    """
    Tek mod indirgeme operatörü (â veya b̂), bileşik uzaya gömülü

    Args:
        space: Hilbert uzayı
        mode: 0..3

    Returns:
        OperatorMatrix: (n−1, n) konumlarında √n girdileri
    """
    _check_mode(mode)
    single = _single_mode_lowering(space.cutoffs[mode])
    return OperatorMatrix(space, _embed(space, mode, single), label=f"a_{MODE_LABELS[mode]}")


def creation(space: HilbertSpace, mode: int) -> OperatorMatrix:
    return annihilation(space, mode).dag()


def number_op(space: HilbertSpace, mode: int) -> OperatorMatrix:
    """Modun doluluk sayısı operatörü n̂ (köşegen)"""
    _check_mode(mode)
    occupations = space.occupation_table[:, mode].astype(complex)
    return OperatorMatrix(space, sp.diags(occupations, format="csr"),
                          hermitian_hint=True, label=f"n_{MODE_LABELS[mode]}")


def op_function_of_number(space: HilbertSpace, mode: int,
                          f: Callable[[int], float]) -> OperatorMatrix:
    """
    Modun doluluk sayısının reel fonksiyonu f(n̂)

    Args:
        space: Hilbert uzayı
        mode: 0..3
        f: 0..cutoff için tanımlı reel fonksiyon

    Returns:
        OperatorMatrix: Doluluğu n olan her baz durumunda f(n) köşegen girdisi
    """
    _check_mode(mode)
    values = np.array([float(f(n)) for n in range(space.cutoffs[mode] + 1)])
    if not np.all(np.isfinite(values)):
        raise ParameterError(f"f(n) sonlu değil: {values}")
    diagonal = values[space.occupation_table[:, mode]].astype(complex)
    return OperatorMatrix(space, sp.diags(diagonal, format="csr"), hermitian_hint=True)


def total_excitation_op(space: HilbertSpace) -> OperatorMatrix:
    """N̂_tot = Σⱼ (n̂_opt,ⱼ + n̂_mec,ⱼ)"""
    total = space.occupation_table.sum(axis=1).astype(complex)
    return OperatorMatrix(space, sp.diags(total, format="csr"), hermitian_hint=True, label="N_tot")


@dataclass(frozen=True, eq=False)
class QuantumState:
    """
    Saf durum vektörü veya yoğunluk matrisi, referans çerçevesiyle etiketli.

    checked=False yalnızca ara sonuçlar için; kurulumda geçerlilik denetimi atlanır.
    """

    space: HilbertSpace
    data: np.ndarray
    kind: StateKind = StateKind.PURE
    frame: Frame = Frame.LAB
    checked: bool = field(default=True, repr=False)

    def __post_init__(self):
        data = np.asarray(self.data, dtype=complex)
        object.__setattr__(self, "data", data)
        dim = self.space.dim
        expected = (dim,) if self.kind is StateKind.PURE else (dim, dim)
        if data.shape != expected:
            raise DimensionMismatchError(f"durum boyutu {data.shape}, beklenen {expected}")
        if self.checked:
            self.validate()

    def validate(self) -> None:
        if self.kind is StateKind.PURE:
            drift = abs(np.vdot(self.data, self.data).real - 1.0)
            if drift > PURE_NORM_TOL:
                raise StateSpecError(f"saf durum normu 1'den {drift:.3e} sapıyor")
            return

        rho = self.data
        herm = float(np.abs(rho - rho.conj().T).max())
        if herm > HERMITIAN_TOL:
            raise StateSpecError(f"yoğunluk matrisi Hermitian değil: {herm:.3e}")
        trace_drift = abs(np.trace(rho).real - 1.0)
        if trace_drift > DENSITY_TRACE_TOL:
            raise StateSpecError(f"iz 1'den {trace_drift:.3e} sapıyor")
        min_eig = float(np.linalg.eigvalsh(rho).min())
        if min_eig < DENSITY_MIN_EIGENVALUE:
            raise StateSpecError(f"negatif özdeğer: {min_eig:.3e}")

    @classmethod
    def basis(cls, space: HilbertSpace, occupations: Sequence[int],
              frame: Frame = Frame.LAB) -> "QuantumState":
        vector = np.zeros(space.dim, dtype=complex)
        vector[space.index_of(occupations)] = 1.0
        return cls(space, vector, StateKind.PURE, frame)

    def norm(self) -> float:
        """Saf durumda ⟨ψ|ψ⟩, yoğunluk matrisinde Tr ρ"""
        if self.kind is StateKind.PURE:
            return float(np.vdot(self.data, self.data).real)
        return float(np.trace(self.data).real)

    def to_density(self) -> "QuantumState":
        if self.kind is StateKind.DENSITY:
            return self
        rho = np.outer(self.data, self.data.conj())
        return QuantumState(self.space, rho, StateKind.DENSITY, self.frame, checked=self.checked)

    def with_frame(self, frame: Frame) -> "QuantumState":
        return QuantumState(self.space, self.data, self.kind, frame, checked=False)


def expectation(state: QuantumState, operator: OperatorMatrix) -> complex:
    """
    Beklenen değer ⟨ψ|A|ψ⟩ veya Tr(ρA)

    Args:
        state: Saf durum veya yoğunluk matrisi
        operator: Aynı uzaydaki operatör

    Returns:
        complex: Beklenen değer
    """
    if state.space != operator.space:
        raise DimensionMismatchError(
            f"durum {state.space.cutoffs}, operatör {operator.space.cutoffs} uzayında"
        )
    if state.kind is StateKind.PURE:
        return complex(np.vdot(state.data, operator.data @ state.data))
    # Tr(Aρ) = Σ_ij A_ij ρ_ji
    return complex(operator.data.multiply(state.data.T).sum())


def occupation_probability(state: QuantumState, mode: int, level: int) -> float:
    """Modun tam olarak `level` dolulukta bulunma olasılığı"""
    _check_mode(mode)
    mask = state.space.occupation_table[:, mode] == level
    if state.kind is StateKind.PURE:
        return float(np.sum(np.abs(state.data[mask]) ** 2))
    return float(np.real(np.diagonal(state.data)[mask]).sum())


def taylor_expm_apply(matrix: sp.spmatrix, block: np.ndarray,
                      tol: float = EXPM_TOL, max_terms: int = EXPM_MAX_TERMS) -> np.ndarray:
    """
    exp(M)·X, ölçeklenmiş Taylor serisiyle.

    M, 1-normu en fazla 1 olacak şekilde s alt adıma bölünür; her alt adımda
    seri, son terim birikimin tol katının altına inene kadar toplanır.
    """
    norm1 = float(spla.norm(matrix, 1)) if matrix.nnz else 0.0
    substeps = max(1, int(math.ceil(norm1)))
    scaled = matrix / substeps
    result = np.array(block, dtype=complex, copy=True)

    for _ in range(substeps):
        term = result
        accumulated = result.copy()
        for k in range(1, max_terms + 1):
            term = (scaled @ term) / k
            accumulated += term
            term_norm = np.linalg.norm(term)
            acc_norm = np.linalg.norm(accumulated)
            if term_norm <= tol * max(acc_norm, np.finfo(float).tiny):
                break
        else:
            raise ConvergenceError(residual=term_norm / max(acc_norm, np.finfo(float).tiny),
                                   iterations=max_terms)
        result = accumulated
    return result


def matrix_exp_apply(operator: OperatorMatrix, state: QuantumState,
                     scale: Union[complex, float],
                     tol: float = EXPM_TOL) -> QuantumState:
    """
    exp(scale·A) uygulaması: saf durumda E|ψ⟩, yoğunluk matrisinde EρE†

    Args:
        operator: Üs operatörü A
        state: Aynı uzaydaki durum
        scale: Karmaşık ölçek

    Returns:
        QuantumState: Dönüştürülmüş durum (çerçeve etiketi korunur)
    """
    if state.space != operator.space:
        raise DimensionMismatchError(
            f"durum {state.space.cutoffs}, operatör {operator.space.cutoffs} uzayında"
        )
    matrix = operator.data * complex(scale)

    if state.kind is StateKind.PURE:
        data = taylor_expm_apply(matrix, state.data, tol)
    else:
        left = taylor_expm_apply(matrix, state.data, tol)
        data = taylor_expm_apply(matrix, left.conj().T, tol).conj().T

    return QuantumState(state.space, data, state.kind, state.frame, checked=False)


def exp_operator(operator: OperatorMatrix, scale: Union[complex, float],
                 tol: float = EXPM_TOL) -> np.ndarray:
    """exp(scale·A) yoğun matris olarak (küçük uzaylar için)"""
    eye = np.eye(operator.space.dim, dtype=complex)
    return taylor_expm_apply(operator.data * complex(scale), eye, tol)
