import numpy as np
import pytest

from exceptions import ParameterError
from fock_space import build_space
from hamiltonians import rotating_frame_hamiltonian
from parameters import ModelParams
from polaron_oracle import (
    compare_with_series,
    displacement_generator,
    frame_unitary,
    interior_mask,
    transformed_hamiltonian,
)


@pytest.fixture
def params():
    return ModelParams(omega=(5.0, 4.1), nu=(1.0, 1.3), g=(1e-3, 1.3e-3), drive=(0.5, 0.3),
                       omega_d=(4.3, 4.5), gamma=0.8)


@pytest.fixture
def space():
    return build_space([1, 1, 2, 2])


def test_frame_unitary_is_unitary(params, space):
    U = frame_unitary(params, space, 0.3)
    np.testing.assert_allclose(U.conj().T @ U, np.eye(space.dim), atol=1e-12)


def test_generator_is_antihermitian(params, space):
    S = displacement_generator(params, space).to_dense()
    np.testing.assert_allclose(S, -S.conj().T, atol=1e-15)


def test_interior_block_excludes_top_mechanical_level(space):
    mask = interior_mask(space)
    assert mask.sum() == 2 * 2 * 2 * 2
    assert not mask[space.index_of((0, 0, 2, 0))]


def test_no_coupling_transformation_keeps_drive_terms(space):
    params = ModelParams(omega=(5.0, 4.1), nu=(1.0, 1.3), drive=(0.5, 0.3), omega_d=(4.3, 4.5))
    numeric = transformed_hamiltonian(params, space, 0.0)
    rotating = rotating_frame_hamiltonian(params, space, 0.0).to_dense()
    # g = 0: yalnız ν n̂_b terimi düşer
    occupations = space.occupation_table
    rotating -= np.diag(occupations[:, 2] * 1.0 + occupations[:, 3] * 1.3)
    np.testing.assert_allclose(numeric, rotating, atol=1e-9)


def test_series_matches_numeric_transformation(params, space):
    report = compare_with_series(params, space, [0.0, 0.3, 1.7], series_order=6)
    assert list(report.columns) == ["time", "deviation", "relative_deviation"]
    assert (report["relative_deviation"] <= 1e-6).all()


def test_oracle_refuses_large_spaces(params):
    with pytest.raises(ParameterError):
        transformed_hamiltonian(params, build_space([3, 3, 5, 5]), 0.0)
