import math

import numpy as np
import pytest

from exceptions import (
    CapacityError,
    ConvergenceError,
    InvalidModeError,
    OptomechError,
    ParameterError,
    StateSpecError,
)
from fock_space import (
    MEC1,
    MEC2,
    OPT1,
    OPT2,
    Frame,
    QuantumState,
    StateKind,
    annihilation,
    build_space,
    creation,
    exp_operator,
    expectation,
    identity,
    matrix_exp_apply,
    number_op,
    occupation_probability,
    op_function_of_number,
    taylor_expm_apply,
    total_excitation_op,
)


@pytest.fixture
def space():
    return build_space([1, 1, 2, 2])


def test_dimension_is_product_of_levels(space):
    assert space.dim == 36
    assert space.shape == (2, 2, 3, 3)


def test_capacity_limit():
    with pytest.raises(CapacityError) as info:
        build_space([9, 9, 9, 9], max_dim=1000)
    assert info.value.product == 10_000
    assert info.value.exit_code == 4


def test_negative_cutoff_rejected():
    with pytest.raises(StateSpecError):
        build_space([1, 1, -1, 2])


def test_index_map_is_consistent(space):
    assert space.index_of((0, 0, 0, 0)) == 0
    assert space.index_of((1, 1, 2, 2)) == space.dim - 1
    index = space.index_of((1, 0, 2, 1))
    assert space.occupations_of(index) == (1, 0, 2, 1)
    with pytest.raises(StateSpecError):
        space.index_of((0, 0, 3, 0))


def test_annihilation_matrix_elements(space):
    b1 = annihilation(space, MEC1)
    assert b1.element((0, 0, 1, 0), (0, 0, 2, 0)) == pytest.approx(math.sqrt(2))
    assert b1.element((0, 0, 0, 0), (0, 0, 1, 0)) == pytest.approx(1.0)
    assert b1.element((0, 0, 0, 0), (0, 0, 0, 0)) == 0


def test_number_operator_matches_ladder_product(space):
    for mode in (OPT1, OPT2, MEC1, MEC2):
        product = creation(space, mode) @ annihilation(space, mode)
        diff = (product - number_op(space, mode)).max_abs()
        assert diff < 1e-14


def test_canonical_commutator_below_cutoff(space):
    b = annihilation(space, MEC2)
    commutator = b.commutator(b.dag()).to_dense()
    mask = space.below_cutoff_mask([MEC2])
    block = commutator[np.ix_(mask, mask)]
    np.testing.assert_allclose(block, np.eye(mask.sum()), atol=1e-14)


def test_invalid_mode_index(space):
    with pytest.raises(InvalidModeError):
        annihilation(space, 4)


def test_total_excitation_commutes_with_exchange(space):
    a1, a2 = annihilation(space, OPT1), annihilation(space, OPT2)
    b1, b2 = annihilation(space, MEC1), annihilation(space, MEC2)
    exchange = a1.dag() @ a2 @ b1.dag() @ b2
    hermitian = exchange + exchange.dag()
    assert total_excitation_op(space).commutator(hermitian).max_abs() < 1e-12


def test_function_of_number_is_diagonal(space):
    op = op_function_of_number(space, MEC1, lambda n: n * n + 1)
    assert op.element((0, 0, 2, 0), (0, 0, 2, 0)) == pytest.approx(5.0)
    assert op.is_hermitian()


def test_function_of_number_rejects_non_finite_values(space):
    with pytest.raises(ParameterError) as info:
        op_function_of_number(space, MEC1, lambda n: math.inf if n == 2 else 1.0)
    assert isinstance(info.value, OptomechError)


def test_state_validation():
    space = build_space([1, 0, 0, 0])
    with pytest.raises(StateSpecError):
        QuantumState(space, np.array([1.0, 1.0]))

    rho = np.diag([0.25, 0.75]).astype(complex)
    state = QuantumState(space, rho, StateKind.DENSITY)
    assert state.norm() == pytest.approx(1.0)


def test_expectation_and_occupation(space):
    state = QuantumState.basis(space, (1, 0, 2, 0))
    assert expectation(state, number_op(space, MEC1)).real == pytest.approx(2.0)
    assert occupation_probability(state, MEC1, 2) == pytest.approx(1.0)
    density = state.to_density()
    assert expectation(density, number_op(space, OPT1)).real == pytest.approx(1.0)


def test_matrix_exp_of_number_is_phase(space):
    state = QuantumState.basis(space, (0, 0, 2, 0), Frame.ROTATING)
    evolved = matrix_exp_apply(number_op(space, MEC1), state, -0.7j)
    index = space.index_of((0, 0, 2, 0))
    assert evolved.data[index] == pytest.approx(np.exp(-1.4j))
    assert evolved.frame is Frame.ROTATING


def test_exp_operator_is_unitary(space):
    b = annihilation(space, MEC1)
    hermitian = b + b.dag()
    unitary = exp_operator(hermitian, 0.3j)
    np.testing.assert_allclose(unitary @ unitary.conj().T, identity(space).to_dense(), atol=1e-10)


def test_exp_series_reports_non_convergence(space):
    b = annihilation(space, MEC1)
    block = np.ones(space.dim, dtype=complex)
    with pytest.raises(ConvergenceError) as info:
        taylor_expm_apply((b + b.dag()).data * 0.5, block, tol=1e-16, max_terms=1)
    assert info.value.exit_code == 5
