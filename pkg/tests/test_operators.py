import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import same_up_to_phase
from exceptions import DimensionMismatchError, NotUnitaryError, ParameterRangeError
from quantum.operators import (
    EntanglementParam, Su2Params, Unitary, classical_mix, embed, entangler, flip, hadamard,
    identity, kron, permutation, reflection, strategy_from_matrix, su2, su2_matrices,
    validate_unitary, wrap_angle,
)
from quantum.state import apply_global, basis_state

thetas = st.floats(min_value=0.0, max_value=np.pi)
phases = st.floats(min_value=-np.pi, max_value=np.pi)
reals = st.floats(min_value=-20.0, max_value=20.0)


@given(thetas, phases, phases)
@settings(max_examples=1000, deadline=None)
def test_su2_is_unitary_with_unit_determinant(theta, alpha, beta):
    u = su2(Su2Params(theta, alpha, beta))
    assert validate_unitary(u)
    assert abs(np.linalg.det(u.matrix) - 1.0) < 1e-9


@given(thetas, phases, phases, thetas, phases, phases)
@settings(max_examples=300, deadline=None)
def test_su2_products_stay_in_su2(t1, a1, b1, t2, a2, b2):
    product = su2(Su2Params(t1, a1, b1)) @ su2(Su2Params(t2, a2, b2))
    assert validate_unitary(product)
    assert abs(np.linalg.det(product.matrix)) == pytest.approx(1.0, abs=1e-9)


@given(thetas)
@settings(max_examples=200, deadline=None)
def test_phase_free_su2_has_real_diagonal(theta):
    m = su2(Su2Params(theta)).matrix
    assert np.allclose(np.diag(m).imag, 0.0, atol=1e-12)
    assert np.allclose(np.array([m[0, 1], m[1, 0]]).real, 0.0, atol=1e-12)


def test_su2_special_points():
    """U(0,0,0) = C = I and U(pi,0,0) = D = i sigma_x."""
    assert np.allclose(su2(Su2Params(0.0)).matrix, np.eye(2))
    assert np.allclose(su2(Su2Params(np.pi)).matrix, flip().matrix)
    assert np.allclose(classical_mix(np.pi).matrix, [[0, 1j], [1j, 0]])


def test_su2_params_range_checks():
    with pytest.raises(ParameterRangeError):
        Su2Params(-0.1)
    with pytest.raises(ParameterRangeError):
        Su2Params(1.0, 4.0, 0.0)
    with pytest.raises(ParameterRangeError):
        Su2Params(1.0, 0.0, float("nan"))


def test_wrapped_params():
    p = Su2Params.wrapped(1.0, np.pi / 2 + 3.0, -7.0)
    assert -np.pi <= p.alpha < np.pi and -np.pi <= p.beta < np.pi
    assert np.allclose(su2(p).matrix, su2_matrices(1.0, np.pi / 2 + 3.0, -7.0))
    assert wrap_angle(np.pi) == pytest.approx(-np.pi)


@given(reals, reals, reals)
@settings(max_examples=500, deadline=None)
def test_canonical_params_match_up_to_sign(theta, alpha, beta):
    """Unconstrained optimizer output maps to in-range params with the same matrix up to sign."""
    p = Su2Params.canonical(theta, alpha, beta)
    raw = su2_matrices(theta, alpha, beta)
    fixed = su2(p).matrix
    assert np.allclose(fixed, raw, atol=1e-9) or np.allclose(fixed, -raw, atol=1e-9)


def test_unitary_validation():
    with pytest.raises(NotUnitaryError):
        Unitary(np.array([[1, 1], [0, 1]]))
    with pytest.raises(DimensionMismatchError):
        Unitary(np.ones((2, 3)))
    with pytest.raises(DimensionMismatchError):
        Unitary(np.ones((1, 1)))
    assert not validate_unitary(np.array([[2, 0], [0, 1]]))
    assert validate_unitary(hadamard())


def test_unitary_product_and_dagger():
    h = hadamard()
    assert np.allclose((h @ h).matrix, np.eye(2))
    f = flip()
    assert np.allclose((f @ f.dagger()).matrix, np.eye(2))
    with pytest.raises(DimensionMismatchError):
        h @ identity(3)


def test_entangler_endpoints():
    """J(0) = I; J(pi/2)|00> = (|00> + i|11>)/sqrt 2."""
    assert np.allclose(entangler(2, 0.0).matrix, np.eye(4))
    state = apply_global(basis_state((2, 2)), entangler(2, np.pi / 2))
    assert np.allclose(state.amps, np.array([1, 0, 0, 1j]) / np.sqrt(2))


def test_entangler_range_and_players():
    with pytest.raises(ParameterRangeError):
        entangler(2, 2.0)
    with pytest.raises(ParameterRangeError):
        EntanglementParam(-0.01)
    with pytest.raises(DimensionMismatchError):
        entangler(1, 0.5)


@pytest.mark.parametrize("n_players", [2, 3, 4])
def test_entangler_commutes_with_classical_moves(n_players):
    """Exhaustive over {I, F}^N and a few entanglement levels."""
    moves = (identity(2), flip())
    for gamma in (0.0, 0.4, 1.1, np.pi / 2):
        j = entangler(n_players, gamma).matrix
        for combo in itertools.product(moves, repeat=n_players):
            m = kron(*combo).matrix
            assert np.allclose(j @ m, m @ j, atol=1e-12)


def test_qudit_entangler():
    """The reflection generalises sigma_x, so J stays unitary and commutes with R (x) R."""
    assert np.allclose(reflection(2).matrix, [[0, 1], [1, 0]])
    r = reflection(3)
    assert np.allclose((r @ r).matrix, np.eye(3))
    j = entangler(2, np.pi / 3, dims=(3, 3))
    assert validate_unitary(j)
    rr = kron(r, r).matrix
    assert np.allclose(j.matrix @ rr, rr @ j.matrix)


def test_permutation_and_raw_moves():
    p = permutation(3, [1, 2, 0])
    assert np.allclose(p.matrix @ np.eye(3)[:, 0], np.eye(3)[:, 1])
    with pytest.raises(DimensionMismatchError):
        permutation(3, [0, 0, 1])
    with pytest.raises(NotUnitaryError):
        strategy_from_matrix(np.diag([1.0, 2.0, 1.0]))
    assert strategy_from_matrix(np.eye(3)).dim == 3


def test_embed_matches_kron():
    h = hadamard()
    assert np.allclose(embed(h, (2, 2, 2), 1).matrix, kron(identity(2), h, identity(2)).matrix)
    with pytest.raises(DimensionMismatchError):
        embed(h, (2, 3), 1)


def test_flip_matches_miracle_convention():
    """F = i sigma_x equals U(pi, 0, 0) up to phase."""
    assert same_up_to_phase(flip().matrix, su2_matrices(np.pi, 0.0, 0.0))
