import math
from types import SimpleNamespace

import numpy as np
import pytest

import dynamics
from dynamics import (
    TIME_COLUMN,
    StateSpec,
    TimeGrid,
    Trajectory,
    build_initial_state,
    propagate_lindblad,
    propagate_schrodinger,
    top_fock_mask,
)
from exceptions import IntegrationError, ParameterError, StateSpecError
from fock_space import OPT1, Frame, QuantumState, StateKind, annihilation, build_space
from hamiltonians import (
    drive_collapse_ops,
    full_hamiltonian_td,
    h_nbs,
    h_nbs_rabi,
    rotating_frame_hamiltonian_td,
)
from parameters import ModelParams


def test_grid_validation():
    with pytest.raises(ParameterError):
        TimeGrid(1.0, 1.0, 10)
    with pytest.raises(ParameterError):
        TimeGrid(0.0, 1.0, 1)
    grid = TimeGrid.with_spacing(0.0, 2.0, 0.25)
    assert grid.n_samples == 9
    assert grid.spacing == pytest.approx(0.25)


def test_default_tolerance_is_tight():
    grid = TimeGrid(0.0, 1.0, 11)
    assert grid.tolerance == dynamics.DEFAULT_TOLERANCE <= 1e-11


def test_trajectory_rejects_mismatched_series():
    with pytest.raises(ParameterError):
        Trajectory(np.linspace(0.0, 1.0, 5), {"n_opt1": np.zeros(4)}, Frame.ROTATING, StateKind.PURE)


def test_state_spec_text_form():
    spec = StateSpec.parse("0.5:1,0,0,0; 0.8:0,1,0,0")
    assert spec.leading_occupations == (0, 1, 0, 0)
    assert StateSpec.parse(spec.to_text()) == spec
    with pytest.raises(StateSpecError):
        StateSpec.parse("0.5:1,0,0")
    with pytest.raises(StateSpecError):
        StateSpec.parse("yarım:1,0,0,0")


def test_product_state_spec():
    spec = StateSpec.product(((0.6, (1, 0)), (0.8, (0, 1))), ((1.0, (2, 0)),))
    assert spec.terms == ((0.6 + 0j, (1, 0, 2, 0)), (0.8 + 0j, (0, 1, 2, 0)))


def test_initial_state_is_normalized():
    space = build_space([1, 1, 1, 1])
    state = build_initial_state(space, StateSpec.parse("3:1,0,0,0; 4:0,1,0,0"), Frame.ROTATING)
    assert state.norm() == pytest.approx(1.0)
    assert state.frame is Frame.ROTATING
    assert abs(state.data[space.index_of((1, 0, 0, 0))]) == pytest.approx(0.6)
    with pytest.raises(StateSpecError):
        build_initial_state(space, StateSpec.parse("1:1,0,0,0; -1:1,0,0,0"))


def test_top_fock_mask_ignores_empty_modes():
    space = build_space([1, 1, 0, 2])
    mask = top_fock_mask(space)
    assert mask[space.index_of((0, 0, 0, 2))]
    assert mask[space.index_of((1, 0, 0, 0))]
    assert not mask[space.index_of((0, 0, 0, 1))]


def test_exchange_follows_cosine():
    space = build_space([1, 1, 0, 0])
    params = ModelParams(gamma=0.7)
    H = h_nbs_rabi(params, space, include_kerr=False)
    psi0 = QuantumState.basis(space, (1, 0, 0, 0), Frame.POLARON_ROTATING)
    trajectory = propagate_schrodinger(H, psi0, TimeGrid(0.0, 10.0, 201, 1e-10))
    expected = np.cos(0.7 * trajectory.times) ** 2
    np.testing.assert_allclose(trajectory["n_opt1"], expected, atol=1e-7)
    assert trajectory.kind is StateKind.PURE
    assert trajectory.to_frame().columns[0] == TIME_COLUMN


def test_nbs_conserves_photon_number_and_norm():
    space = build_space([1, 1, 3, 3])
    params = ModelParams(nu=(1.0, 1.0), g=(0.2, 0.2), gamma=1.0)
    H = h_nbs(params, space)
    psi0 = QuantumState.basis(space, (1, 0, 0, 0))
    period = 2 * math.pi / math.exp(-0.04) / 2
    trajectory = propagate_schrodinger(H, psi0, TimeGrid(0.0, 10 * period, 1001, 1e-10))
    total = trajectory["n_opt1"] + trajectory["n_opt2"]
    assert np.abs(total - 1.0).max() <= 1e-8
    assert trajectory.metadata["norm_drift"] <= 1e-8
    assert trajectory.metadata["energy_drift"] <= 1e-8
    assert trajectory.metadata["warnings"] == []


def test_rotating_wave_deviation_is_bounded():
    space = build_space([4, 4, 0, 0])
    params = ModelParams(omega=(20.0, 20.0), nu=(1.0, 1.0), drive=(0.05, 0.05),
                         omega_d=(20.0, 20.0), gamma=0.3)
    grid = TimeGrid(0.0, 4.0, 401, 1e-10)
    vacuum = QuantumState.basis(space, (0, 0, 0, 0))
    lab = propagate_schrodinger(full_hamiltonian_td(params, space), vacuum, grid)
    rotating = propagate_schrodinger(rotating_frame_hamiltonian_td(params, space),
                                     vacuum.with_frame(Frame.ROTATING), grid)
    bound = 0.05 / (20.0 + 20.0)
    for name in ("n_opt1", "n_opt2"):
        assert np.abs(lab[name] - rotating[name]).max() <= bound
    assert lab.frame is Frame.LAB


def test_optical_loss_decays_exponentially():
    space = build_space([1, 1, 0, 0])
    params = ModelParams(kappa_opt=(0.2, 0.2))
    H = h_nbs_rabi(params, space, include_kerr=False)
    rho0 = QuantumState.basis(space, (1, 0, 0, 0))
    trajectory = propagate_lindblad(H, drive_collapse_ops(params, space), rho0,
                                    TimeGrid(0.0, 5.0, 101, 1e-10))
    np.testing.assert_allclose(trajectory["n_opt1"], np.exp(-0.2 * trajectory.times), atol=1e-7)
    assert trajectory.kind is StateKind.DENSITY
    assert trajectory.metadata["trace_drift"] <= 1e-7
    assert trajectory.metadata["collapse_channels"] == 2
    assert trajectory.metadata["min_eigenvalue"] > -1e-6


def test_lossless_master_equation_matches_schrodinger():
    space = build_space([1, 1, 1, 0])
    params = ModelParams(nu=(1.0, 1.0), g=(0.1, 0.1), gamma=0.5)
    H = h_nbs(params, space)
    rho0 = QuantumState.basis(space, (0, 1, 1, 0))
    lossless = propagate_lindblad(H, [], rho0, TimeGrid(0.0, 6.0, 61, 1e-10))
    pure = propagate_schrodinger(H, rho0, TimeGrid(0.0, 6.0, 61, 1e-10))
    np.testing.assert_allclose(lossless["n_opt1"], pure["n_opt1"], atol=1e-7)
    assert np.abs(lossless["trace"] - 1.0).max() <= 1e-7


def test_negative_rate_rejected():
    space = build_space([1, 0, 0, 0])
    rho0 = QuantumState.basis(space, (1, 0, 0, 0))
    H = h_nbs_rabi(ModelParams(), space, include_kerr=False)
    with pytest.raises(ParameterError):
        propagate_lindblad(H, [(annihilation(space, OPT1), -0.1)], rho0, TimeGrid(0.0, 1.0, 3))


def test_integrator_failure_is_reported(monkeypatch):
    space = build_space([1, 0, 0, 0])
    psi0 = QuantumState.basis(space, (1, 0, 0, 0))
    H = h_nbs_rabi(ModelParams(), space, include_kerr=False)

    def failing(fun, t_span, y0, **kwargs):
        fun(0.73, y0)
        return SimpleNamespace(status=-1, success=False, message="adım boyutu çok küçük",
                               t=np.array([0.0, 0.42]), y=np.zeros((2, 2)), nfev=10)

    monkeypatch.setattr(dynamics, "solve_ivp", failing)
    with pytest.raises(IntegrationError) as info:
        propagate_schrodinger(H, psi0, TimeGrid(0.0, 1.0, 5))
    assert info.value.time == pytest.approx(0.73)
    assert info.value.exit_code == 5
