import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import random_amps
from exceptions import DimensionMismatchError, NormalizationError, ParameterRangeError
from quantum.operators import embed, hadamard, pauli_x, reflection, su2_matrices, Unitary
from quantum.state import (
    StateVector, WeightedEnsemble, apply_bitflip_noise, apply_global, apply_local,
    basis_state, ensemble_outcome_probabilities, fidelity_up_to_phase, outcome_probabilities, tensor,
)


def test_basis_state_index_convention():
    """Site 0 is the most significant index."""
    state = basis_state((2, 3), (1, 2))
    assert state.amps[5] == 1.0
    assert np.sum(np.abs(state.amps)) == 1.0
    assert basis_state((2, 2)).amps[0] == 1.0


def test_basis_state_rejects_bad_labels():
    with pytest.raises(DimensionMismatchError):
        basis_state((2, 2), (0, 2))


def test_state_vector_validation():
    """Length, site dimensions, finiteness and normalization are enforced."""
    with pytest.raises(NormalizationError):
        StateVector((2,), [1.0, 1.0])
    with pytest.raises(DimensionMismatchError):
        StateVector((2, 2), [1.0, 0.0])
    with pytest.raises(DimensionMismatchError):
        StateVector((1,), [1.0])
    with pytest.raises(NormalizationError):
        StateVector((2,), [np.nan, 0.0])


def test_state_vector_is_immutable():
    state = basis_state((2,))
    with pytest.raises(ValueError):
        state.amps[0] = 0.0


def test_tensor_ordering():
    one, zero = basis_state((2,), (1,)), basis_state((2,), (0,))
    product = tensor([one, zero])
    assert product.dims == (2, 2)
    assert product.amps[2] == 1.0


def test_tensor_of_nothing_is_an_error():
    with pytest.raises(DimensionMismatchError):
        tensor([])


def test_apply_local_matches_embedded_operator(rng):
    """Local application equals the full I (x) u (x) I matrix."""
    dims = (2, 3, 2)
    state = StateVector(dims, random_amps(rng, 12))
    u = Unitary(su2_matrices(0.7, 0.2, -1.1))
    for site in (0, 2):
        local = apply_local(state, site, u)
        full = apply_global(state, embed(u, dims, site))
        assert np.allclose(local.amps, full.amps, atol=1e-12)


def test_apply_local_dimension_checks():
    state = basis_state((2, 3))
    with pytest.raises(DimensionMismatchError):
        apply_local(state, 1, hadamard())
    with pytest.raises(DimensionMismatchError):
        apply_local(state, 2, hadamard())
    with pytest.raises(DimensionMismatchError):
        apply_global(state, hadamard())


@given(st.integers(min_value=0, max_value=2**32 - 1))
@settings(max_examples=1000, deadline=None)
def test_unitary_evolution_preserves_normalization(seed):
    """Random SU(2) moves on random three-qubit states keep the norm and probabilities summing to 1."""
    rng = np.random.default_rng(seed)
    state = StateVector((2, 2, 2), random_amps(rng, 8))
    for site in range(3):
        u = Unitary(su2_matrices(rng.uniform(0, np.pi), rng.uniform(-np.pi, np.pi), rng.uniform(-np.pi, np.pi)))
        state = apply_local(state, site, u)
    assert abs(np.vdot(state.amps, state.amps).real - 1.0) < 1e-9
    assert abs(outcome_probabilities(state).sum() - 1.0) < 1e-9


def test_fidelity_up_to_phase(rng):
    state = StateVector((2, 2), random_amps(rng, 4))
    rotated = StateVector((2, 2), np.exp(1j * 0.83) * state.amps)
    assert fidelity_up_to_phase(state, rotated) == pytest.approx(1.0, abs=1e-12)
    assert fidelity_up_to_phase(basis_state((2,), (0,)), basis_state((2,), (1,))) == 0.0


@given(st.integers(min_value=0, max_value=2**32 - 1))
@settings(max_examples=200, deadline=None)
def test_fidelity_is_symmetric(seed):
    rng = np.random.default_rng(seed)
    a = StateVector((2, 3), random_amps(rng, 6))
    b = StateVector((2, 3), random_amps(rng, 6))
    assert fidelity_up_to_phase(a, b) == pytest.approx(fidelity_up_to_phase(b, a), abs=1e-12)
    assert 0.0 <= fidelity_up_to_phase(a, b) <= 1.0


def test_weighted_ensemble_validation():
    zero, one = basis_state((2,), (0,)), basis_state((2,), (1,))
    with pytest.raises(NormalizationError):
        WeightedEnsemble(((0.5, zero), (0.4, one)))
    with pytest.raises(NormalizationError):
        WeightedEnsemble(((1.5, zero), (-0.5, one)))
    with pytest.raises(DimensionMismatchError):
        WeightedEnsemble(((0.5, zero), (0.5, basis_state((3,)))))


def test_bitflip_noise_branches():
    """The noisy CNOT splits each member into kept and flipped branches."""
    ensemble = WeightedEnsemble.pure(basis_state((2, 2)))
    noisy = apply_bitflip_noise(ensemble, 1, p=0.25)
    assert len(noisy.members) == 2
    assert noisy.total_weight == pytest.approx(1.0, abs=1e-12)
    probs = ensemble_outcome_probabilities(noisy)
    assert np.allclose(probs, [0.75, 0.25, 0.0, 0.0], atol=1e-12)


def test_bitflip_noise_edge_probabilities():
    ensemble = WeightedEnsemble.pure(basis_state((2,)))
    assert len(apply_bitflip_noise(ensemble, 0, p=0.0).members) == 1
    flipped = apply_bitflip_noise(ensemble, 0, p=1.0)
    assert np.allclose(flipped.members[0][1].amps, pauli_x().matrix[:, 0])
    with pytest.raises(ParameterRangeError):
        apply_bitflip_noise(ensemble, 0, p=1.5)


def test_bitflip_noise_on_qudit_uses_reflection():
    ensemble = WeightedEnsemble.pure(basis_state((3,)))
    noisy = apply_bitflip_noise(ensemble, 0, p=0.5)
    assert np.allclose(noisy.members[1][1].amps, reflection(3).matrix[:, 0])


@given(st.integers(min_value=0, max_value=2**32 - 1), st.floats(min_value=0.0, max_value=1.0))
@settings(max_examples=200, deadline=None)
def test_bitflip_noise_preserves_total_weight(seed, p):
    rng = np.random.default_rng(seed)
    ensemble = WeightedEnsemble.pure(StateVector((2, 2), random_amps(rng, 4)))
    for site in (0, 1):
        ensemble = apply_bitflip_noise(ensemble, site, p)
    assert abs(ensemble.total_weight - 1.0) < 1e-12
