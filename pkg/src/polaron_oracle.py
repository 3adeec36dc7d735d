"""
Polaron Çerçevesi Doğrulama Modülü

Dönen çerçeve Hamiltonyeni H₁'i sayısal olarak polaron çerçevesine taşır:
    H₂ = U†H₁U + i(dU†/dt)U,   U(t) = D·V(t)
    D = exp(−Σⱼ αⱼ n̂_opt,ⱼ(b̂ⱼ† − b̂ⱼ)),   V(t) = exp(−iΣⱼ νⱼ n̂_mec,ⱼ t)

Yer değiştirme operatörü matrix üsteli ile, zaman türevi merkezi farkla
hesaplanır. Sonuç, analitik seri (polaron_series_td) ile iç blokta
(tüm mekanik doluluklar cutoff altında) karşılaştırılır.
Küçük uzaylar içindir (yoğun matrisler).
"""

import logging
from typing import Iterable, Optional

import numpy as np
import pandas as pd

from exceptions import ParameterError
from fock_space import (
    MECHANICAL_MODES,
    OPT1,
    OPT2,
    HilbertSpace,
    OperatorMatrix,
    annihilation,
    exp_operator,
    number_op,
)
from hamiltonians import polaron_series_td, rotating_frame_hamiltonian
from parameters import ModelParams

logger = logging.getLogger(__name__)

ORACLE_EXPM_TOL = 1e-14
ORACLE_MAX_DIM = 400


def displacement_generator(params: ModelParams, space: HilbertSpace) -> OperatorMatrix:
    """S = Σⱼ αⱼ n̂_opt,ⱼ (b̂ⱼ† − b̂ⱼ); D = exp(−S)"""
    data = None
    for j, optical in ((1, OPT1), (2, OPT2)):
        b = annihilation(space, MECHANICAL_MODES[j - 1]).data
        term = params.alpha(j) * number_op(space, optical).data @ (b.conj().T - b)
        data = term if data is None else data + term
    return OperatorMatrix(space, data, label="S")


def mechanical_rotation(params: ModelParams, space: HilbertSpace, t: float) -> np.ndarray:
    """V(t) = exp(−iΣⱼ νⱼ n̂_mec,ⱼ t), köşegen olduğu için doğrudan"""
    occupations = space.occupation_table[:, list(MECHANICAL_MODES)]
    phase = occupations @ np.asarray(params.nu)
    return np.diag(np.exp(-1j * phase * t))


def frame_unitary(params: ModelParams, space: HilbertSpace, t: float,
                  displacement: Optional[np.ndarray] = None,
                  tol: float = ORACLE_EXPM_TOL) -> np.ndarray:
    """U(t) = D·V(t) yoğun matris olarak"""
    if displacement is None:
        displacement = exp_operator(displacement_generator(params, space), -1.0, tol)
    return displacement @ mechanical_rotation(params, space, t)


def transformed_hamiltonian(params: ModelParams, space: HilbertSpace, t: float,
                            step: Optional[float] = None,
                            tol: float = ORACLE_EXPM_TOL) -> np.ndarray:
    """
    U†H₁U + i(dU†/dt)U, türev merkezi farkla

    Args:
        params: Fiziksel parametreler (ν birimlerinde önerilir)
        space: En fazla birkaç yüz boyutlu uzay
        t: Değerlendirme zamanı
        step: Fark adımı (varsayılan 10⁻⁶/ν₁)
        tol: Matris üsteli toleransı

    Returns:
        np.ndarray: Yoğun (dim, dim) Hamiltonyen
    """
    if space.dim > ORACLE_MAX_DIM:
        raise ParameterError(f"oracle yoğun matris kullanır, dim {space.dim} > {ORACLE_MAX_DIM}")
    params.require_positive_nu()
    if step is None:
        step = 1e-6 / params.nu[0]

    displacement = exp_operator(displacement_generator(params, space), -1.0, tol)
    unitary = frame_unitary(params, space, t, displacement)
    forward = frame_unitary(params, space, t + step, displacement).conj().T
    backward = frame_unitary(params, space, t - step, displacement).conj().T
    d_unitary_dag = (forward - backward) / (2.0 * step)

    h1 = rotating_frame_hamiltonian(params, space, t).to_dense()
    return unitary.conj().T @ h1 @ unitary + 1j * d_unitary_dag @ unitary


def interior_mask(space: HilbertSpace) -> np.ndarray:
    """Mekanik dolulukların hepsi cutoff altında olan baz durumları"""
    return space.below_cutoff_mask(MECHANICAL_MODES)


def interior_deviation(first: np.ndarray, second: np.ndarray, space: HilbertSpace) -> float:
    """İki yoğun operatörün iç bloktaki en büyük eleman farkı"""
    mask = interior_mask(space)
    block = np.ix_(mask, mask)
    return float(np.abs(first[block] - second[block]).max())


def compare_with_series(params: ModelParams, space: HilbertSpace, times: Iterable[float],
                        series_order: int = 6) -> pd.DataFrame:
    """
    Sayısal dönüşüm ile analitik seriyi verilen zamanlarda karşılaştırır

    Returns:
        pd.DataFrame: time, deviation, relative_deviation (ν₁'e göre) sütunları
    """
    series = polaron_series_td(params, space, series_order)
    rows = []
    for t in times:
        numeric = transformed_hamiltonian(params, space, t)
        analytic = series.at(t).to_dense()
        deviation = interior_deviation(numeric, analytic, space)
        rows.append({
            "time": float(t),
            "deviation": deviation,
            "relative_deviation": deviation / params.nu[0],
        })
        logger.debug(f"oracle t={t:.3g}: sapma {deviation:.3e}")

    report = pd.DataFrame(rows)
    logger.info(f"📊 Polaron oracle: en büyük sapma {report['deviation'].max():.3e}")
    return report
