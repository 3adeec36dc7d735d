import math

import numpy as np
import pytest
from scipy.special import binom, eval_genlaguerre

from exceptions import InvalidModeError, ParameterError
from fock_space import Frame, build_space, total_excitation_op
from hamiltonians import (
    aux_F,
    aux_F_leading,
    build_hamiltonian,
    confluent_1F1_neg_int,
    confluent_1F1_table,
    drive_collapse_ops,
    full_hamiltonian,
    h_nbs,
    h_nbs_rabi,
    h_omc,
    h_omc_effective,
    h_oms,
    h_oms_effective,
    h_oms_gamma_term,
    polaron_series_td,
    rotating_frame_hamiltonian,
    rotating_frame_hamiltonian_td,
)
from parameters import FMode, ModelParams, Regime, RegimeSpec


@pytest.fixture
def params():
    return ModelParams(omega=(5.0, 5.0), nu=(1.0, 1.3), g=(0.05, 0.04), drive=(0.5, 0.3),
                       omega_d=(4.0, 3.7), gamma=0.7)


@pytest.fixture
def space():
    return build_space([1, 1, 2, 2])


# ₁F₁

def test_confluent_known_values():
    assert confluent_1F1_neg_int(1, 1, 0.25) == pytest.approx(0.75, rel=1e-15)
    assert confluent_1F1_neg_int(2, 2, 0.1) == pytest.approx(0.9016666666666667, rel=1e-14)
    assert confluent_1F1_neg_int(0, 3, 0.4) == 1.0


@pytest.mark.parametrize("b", [1, 2, 3, 4])
@pytest.mark.parametrize("x", [1e-6, 1e-2, 0.25])
def test_confluent_matches_laguerre_identity(b, x):
    table = confluent_1F1_table(50, b, x)
    n = np.arange(51)
    reference = eval_genlaguerre(n, b - 1, x) / binom(n + b - 1, n)
    np.testing.assert_allclose(table, reference, rtol=1e-12, atol=1e-14)


def test_confluent_rejects_bad_arguments():
    with pytest.raises(ParameterError):
        confluent_1F1_neg_int(2, 0, 0.1)
    with pytest.raises(ParameterError):
        confluent_1F1_neg_int(2, 1, -0.1)


# F[j,p,q]

def test_aux_F_small_coupling_vacuum():
    params = ModelParams(nu=(1.0, 1.0), g=(1e-3, 1e-3))
    space = build_space([0, 0, 3, 0])
    F = aux_F(params, space, 1, 1, 0)
    assert F.element((0, 0, 0, 0), (0, 0, 0, 0)).real == pytest.approx(math.exp(-5e-7), rel=1e-15)
    assert F.is_hermitian()


def test_aux_F_leading_form():
    params = ModelParams(nu=(1.0, 1.0), g=(0.02, 0.02))
    space = build_space([0, 0, 3, 0])
    x = 0.02 ** 2
    F = aux_F_leading(params, space, 1, 1, 0)
    for n in range(4):
        expected = 1.0 - (0.5 + n) * x
        assert F.element((0, 0, n, 0), (0, 0, n, 0)).real == pytest.approx(expected)


def test_aux_F_sign_follows_displacement():
    params = ModelParams(nu=(1.0, 1.0), g=(0.1, 0.1))
    space = build_space([0, 0, 1, 0])
    value = aux_F(params, space, 1, 2, 1).element((0, 0, 0, 0), (0, 0, 0, 0)).real
    assert value == pytest.approx(-0.1 * math.exp(-0.005))


def test_leading_error_scales_as_fourth_power():
    space = build_space([0, 0, 2, 0])
    ratios = np.logspace(-3, -1, 9)
    errors = []
    for r in ratios:
        params = ModelParams(nu=(1.0, 1.0), g=(r, r))
        diff = aux_F(params, space, 1, 1, 0) - aux_F_leading(params, space, 1, 1, 0)
        errors.append(diff.max_abs())
    slope = np.polyfit(np.log(ratios), np.log(errors), 1)[0]
    assert slope == pytest.approx(4.0, abs=0.2)


def test_aux_F_rejects_bad_indices(params, space):
    with pytest.raises(InvalidModeError):
        aux_F(params, space, 3, 1, 0)
    with pytest.raises(ParameterError):
        aux_F(params, space, 1, 0, 0)


# Çerçeveler

def test_frames_are_hermitian(params, space):
    for t in (0.0, 0.37, 2.1):
        assert full_hamiltonian(params, space, t).is_hermitian()
        assert rotating_frame_hamiltonian(params, space, t).is_hermitian()
        assert polaron_series_td(params, space, 4).at(t).is_hermitian()


def test_rotating_frame_frequencies(params, space):
    hamiltonian = rotating_frame_hamiltonian_td(params, space)
    expected = sorted({1.0, -1.0, 1.3, -1.3})
    np.testing.assert_allclose(hamiltonian.frequencies, expected)
    assert hamiltonian.frame is Frame.ROTATING


def test_polaron_secular_part_reduces_to_nbs(space):
    params = ModelParams(omega=(5.0, 5.0), nu=(1.0, 1.3), g=(0.08, 0.06), drive=(0.5, 0.3),
                         omega_d=(5.0, 5.0), gamma=0.7)
    secular = polaron_series_td(params, space, 8).secular_part().to_dense()
    np.testing.assert_allclose(secular, h_nbs(params, space).to_dense(), atol=1e-12)


# Rejim Hamiltonyenleri

def test_regime_hamiltonians_are_hermitian(params, space):
    for builder in (h_nbs, h_omc, h_oms):
        for mode in (FMode.EXACT, FMode.LEADING):
            assert builder(params, space, mode).is_hermitian()


def test_omc_drive_readout(params, space):
    H = h_omc(params, space)
    x = 0.05 ** 2
    value = H.element((0, 0, 1, 0), (1, 0, 0, 0))
    assert value.real == pytest.approx(0.5 * 0.05 / 2 * math.exp(-x / 2), rel=1e-12)


def test_exchange_readouts(params, space):
    r1, r2 = 0.05, 0.04 / 1.3
    expected = -0.7 * r1 * r2 * math.exp(-(r1 ** 2 + r2 ** 2) / 2)
    omc = h_omc(params, space).element((1, 0, 1, 0), (0, 1, 0, 1))
    oms = h_oms(params, space).element((1, 0, 1, 1), (0, 1, 0, 0))
    assert omc.real == pytest.approx(expected, rel=1e-12)
    assert oms.real == pytest.approx(expected, rel=1e-12)


def test_omc_conserves_total_excitation(params, space):
    H = h_omc(params, space)
    assert H.commutator(total_excitation_op(space)).max_abs() <= 1e-10


def test_oms_gamma_term_support_pattern(params, space):
    term = h_oms_gamma_term(params, space).data.tocoo()
    table = space.occupation_table
    allowed = {(1, -1, 1, 1), (-1, 1, -1, -1)}
    assert term.nnz > 0
    for row, col in zip(term.row, term.col):
        assert tuple(table[row] - table[col]) in allowed


def test_effective_models(params, space):
    omc = h_omc_effective(params, space)
    assert omc.element((0, 0, 1, 0), (1, 0, 0, 0)).real == pytest.approx(-params.omega_eff(1))
    no_kerr = h_oms_effective(params, space, include_kerr=False)
    assert no_kerr.element((1, 0, 0, 0), (1, 0, 0, 0)) == 0
    rabi = h_nbs_rabi(params, space)
    assert rabi.element((1, 0, 0, 0), (0, 1, 0, 0)).real == pytest.approx(0.7)


def test_collapse_ops_skip_zero_rates(space):
    params = ModelParams(kappa_opt=(0.09, 0.0), kappa_mec=(0.0, 1e-5))
    channels = drive_collapse_ops(params, space)
    assert [rate for _, rate in channels] == [0.09, 1e-5]
    L, _ = channels[1]
    assert L.element((0, 0, 0, 0), (0, 0, 0, 1)) == pytest.approx(1.0)


def test_build_hamiltonian_dispatch(params, space):
    static = build_hamiltonian(RegimeSpec(Regime.OMC), params, space)
    assert static.is_static
    np.testing.assert_allclose(static.at(0.0).to_dense(), h_omc(params, space).to_dense())

    lab = build_hamiltonian(RegimeSpec(Regime.FULL_LAB), params, space)
    assert lab.frame is Frame.LAB
    assert not lab.is_static

    series = build_hamiltonian(RegimeSpec(Regime.POLARON_SERIES, series_order=2), params, space)
    assert series.frame is Frame.POLARON_ROTATING
    assert series.frequencies
