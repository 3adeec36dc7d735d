import math

import numpy as np
import pytest

from exceptions import ParameterError, RegimeViolationError
from parameters import (
    DEFAULT_ON_TOP_FIT,
    DEFAULT_SIDE_BY_SIDE_FIT,
    DEVICE_DRIVE_MAX,
    GapConfiguration,
    GapCouplingFit,
    ModelParams,
    Regime,
    RegimeSpec,
    check_regime_conditions,
    device_params,
    gap_coupling,
)


def omc_params(**changes):
    params = ModelParams(omega=(50.0, 50.0), nu=(1.0, 1.0), g=(0.05, 0.05),
                         drive=(40.0, 40.0), omega_d=(49.0, 49.0), gamma=20.0)
    return params.with_changes(**changes)


def test_scalar_expands_to_pair():
    params = ModelParams(nu=2.0, g=0.1)
    assert params.nu == (2.0, 2.0)
    assert params.ratio(2) == pytest.approx(0.05)
    assert params.alpha(1) == pytest.approx(-0.05)


def test_negative_rates_rejected():
    with pytest.raises(ParameterError):
        ModelParams(kappa_opt=(-0.1, 0.0))
    with pytest.raises(ParameterError):
        ModelParams(gamma=-1.0)


def test_derived_couplings():
    params = omc_params()
    assert params.detuning == (1.0, 1.0)
    assert params.delta == 0.0
    assert params.omega_eff(1) == pytest.approx(40.0 * 0.05 / 2)
    assert params.gamma_eff == pytest.approx(20.0 * 0.05 * 0.05)
    assert params.kerr(2) == pytest.approx(0.0025)


def test_scaling_divides_every_frequency():
    params = omc_params(nu=(2.0, 2.0), omega_d=(48.0, 48.0))
    scaled = params.scaled(2.0)
    assert scaled.nu == (1.0, 1.0)
    assert scaled.omega == (25.0, 25.0)
    assert scaled.ratio(1) == pytest.approx(params.ratio(1))


def test_swapped_relabels_beams():
    params = ModelParams(omega=(1.0, 2.0), g=(0.1, 0.2))
    assert params.swapped().omega == (2.0, 1.0)
    assert params.swapped().g == (0.2, 0.1)


def test_series_warning_for_large_displacement():
    assert ModelParams(g=(0.5, 0.01)).series_warnings()
    assert not ModelParams(g=(0.1, 0.1)).series_warnings()


@pytest.mark.parametrize("regime", [Regime.OMC, Regime.OMC_EFFECTIVE])
def test_omc_conditions_hold(regime):
    check_regime_conditions(regime, omc_params())


def test_omc_violation_names_condition():
    with pytest.raises(RegimeViolationError) as info:
        check_regime_conditions(Regime.OMC, omc_params(omega_d=(49.0, 49.5)))
    assert "Δ2" in info.value.condition
    assert info.value.exit_code == 3


def test_nbs_requires_resonant_drive():
    params = ModelParams(omega=(50.0, 50.0), omega_d=(50.0, 50.0))
    check_regime_conditions(Regime.NBS, params)
    with pytest.raises(RegimeViolationError):
        check_regime_conditions(Regime.NBS, params.with_changes(omega_d=(49.0, 50.0)))


def test_oms_conditions():
    params = ModelParams(omega=(50.0, 52.0), nu=(1.0, 1.0), omega_d=(49.0, 51.0))
    check_regime_conditions(Regime.OMS, params)
    with pytest.raises(RegimeViolationError):
        check_regime_conditions(Regime.OMS, params.with_changes(omega=(50.0, 50.0),
                                                               omega_d=(49.0, 49.0)))


def test_lab_regime_is_unchecked():
    check_regime_conditions(Regime.FULL_LAB, ModelParams(omega=(3.0, 7.0)))


def test_regime_spec_accepts_text():
    spec = RegimeSpec("OMS", series_order=6, f_mode="leading-order")
    assert spec.regime is Regime.OMS
    assert spec.f_mode.value == "leading-order"
    with pytest.raises(ParameterError):
        RegimeSpec(Regime.NBS, series_order=-1)


def test_on_top_fit_is_exponential():
    fit = DEFAULT_ON_TOP_FIT
    ratio = gap_coupling(fit, 100.0) / gap_coupling(fit, 150.0)
    assert ratio == pytest.approx(math.exp(50.0 / fit.decay_length_nm))


def test_side_by_side_fit_decreases_over_range():
    gaps = np.linspace(20.0, 300.0, 50)
    values = gap_coupling(DEFAULT_SIDE_BY_SIDE_FIT, gaps)
    assert np.all(np.diff(values) < 0)
    assert DEFAULT_SIDE_BY_SIDE_FIT.synthetic


def test_side_by_side_fit_must_be_monotone():
    with pytest.raises(ParameterError):
        GapCouplingFit(GapConfiguration.SIDE_BY_SIDE, amplitude=1.0,
                       coefficients=(-1.0, 0.0, 0.0, 0.0))


def test_device_satisfies_its_regime():
    for regime in (Regime.NBS, Regime.OMC, Regime.OMS):
        params = device_params(regime, drive=DEVICE_DRIVE_MAX)
        check_regime_conditions(regime, params)
    params = device_params(Regime.OMC)
    assert params.kappa_opt[0] == pytest.approx(0.09 * params.nu[0])
    assert device_params(Regime.OMC, losses=False).kappa_mec == (0.0, 0.0)
