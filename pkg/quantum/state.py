"""Dense state vectors over small tensor-product registers.

Basis label |a_1 a_2 ... a_N> maps to flat index a_1*(d_2*...*d_N) + ... + a_N,
so site 0 (player 1) is the most significant index. States are immutable;
every operation returns a new one.
"""

import logging
from dataclasses import dataclass
from typing import List, Sequence, Tuple

import numpy as np

from config.settings import EPS_PROB, EPS_WEIGHT
from exceptions import DimensionMismatchError, NormalizationError, ParameterRangeError
from quantum.operators import Unitary, pauli_x, reflection

logger = logging.getLogger("quantum")


@dataclass(frozen=True, eq=False)
class StateVector:
    """Normalized complex amplitudes over sites of dimensions `dims`."""
    dims: Tuple[int, ...]
    amps: np.ndarray

    def __post_init__(self):
        dims = tuple(int(d) for d in self.dims)
        if not dims or any(d < 2 for d in dims):
            raise DimensionMismatchError("site dimensions >= 2", dims, "state")
        amps = np.array(self.amps, dtype=complex).reshape(-1)
        if amps.size != int(np.prod(dims)):
            raise DimensionMismatchError(int(np.prod(dims)), amps.size, "state amplitudes")
        if not np.all(np.isfinite(amps)):
            raise NormalizationError(float("nan"), "state has non-finite amplitudes")
        norm = float(np.vdot(amps, amps).real)
        if abs(norm - 1.0) > EPS_PROB:
            raise NormalizationError(norm)
        amps.setflags(write=False)
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "amps", amps)

    @property
    def size(self) -> int:
        return self.amps.size

    def tensor_view(self) -> np.ndarray:
        """Amplitudes reshaped to one axis per site."""
        return self.amps.reshape(self.dims)

    def __repr__(self) -> str:
        return f"StateVector(dims={self.dims})"


def basis_state(dims: Sequence[int], labels: Sequence[int] = None) -> StateVector:
    """Computational basis state |labels>; defaults to |0...0>."""
    dims = tuple(dims)
    labels = tuple(labels) if labels is not None else (0,) * len(dims)
    if len(labels) != len(dims) or any(not 0 <= a < d for a, d in zip(labels, dims)):
        raise DimensionMismatchError(dims, labels, "basis label")
    amps = np.zeros(int(np.prod(dims)), dtype=complex)
    amps[np.ravel_multi_index(labels, dims)] = 1.0
    return StateVector(dims, amps)


def tensor(states: Sequence[StateVector]) -> StateVector:
    """Tensor product; the first state's site 0 becomes the most significant."""
    if not states:
        raise DimensionMismatchError("at least one state", 0, "tensor")
    amps = states[0].amps
    dims: Tuple[int, ...] = states[0].dims
    for state in states[1:]:
        amps = np.kron(amps, state.amps)
        dims = dims + state.dims
    return StateVector(dims, amps)


def apply_on_axis(tensor_amps: np.ndarray, matrix: np.ndarray, axis: int) -> np.ndarray:
    """Contract `matrix` with one axis of an amplitude tensor."""
    moved = np.tensordot(matrix, tensor_amps, axes=([1], [axis]))
    return np.moveaxis(moved, 0, axis)


def apply_on_axis_batch(batch_amps: np.ndarray, matrices: np.ndarray, axis: int) -> np.ndarray:
    """Batched variant: batch_amps has shape (K, *dims), matrices (K, d, d).

    `axis` indexes the site, not counting the leading batch axis.
    """
    moved = np.moveaxis(batch_amps, axis + 1, 1)
    contracted = np.einsum("kij,kj...->ki...", matrices, moved)
    return np.moveaxis(contracted, 1, axis + 1)


def apply_local(state: StateVector, site: int, u: Unitary) -> StateVector:
    """Apply u to a single site: (I (x) ... (x) u (x) ... (x) I)|state>."""
    if not 0 <= site < len(state.dims):
        raise DimensionMismatchError(f"site in [0, {len(state.dims)})", site, "apply_local")
    if u.dim != state.dims[site]:
        raise DimensionMismatchError(state.dims[site], u.dim, f"operator on site {site}")
    amps = apply_on_axis(state.tensor_view(), u.matrix, site)
    return StateVector(state.dims, amps.reshape(-1))


def apply_global(state: StateVector, u: Unitary) -> StateVector:
    """Apply an operator acting on the whole register."""
    if u.dim != state.size:
        raise DimensionMismatchError(state.size, u.dim, "global operator")
    return StateVector(state.dims, u.matrix @ state.amps)


def outcome_probabilities(state: StateVector) -> np.ndarray:
    """Computational-basis measurement probabilities |amp_k|^2."""
    return np.abs(state.amps) ** 2


def fidelity_up_to_phase(a: StateVector, b: StateVector) -> float:
    """|<a|b>|^2, equal to 1 iff the states agree up to a global phase."""
    if a.dims != b.dims:
        raise DimensionMismatchError(a.dims, b.dims, "fidelity")
    overlap = np.vdot(a.amps, b.amps)
    return float(min(1.0, abs(overlap) ** 2))


@dataclass(frozen=True, eq=False)
class WeightedEnsemble:
    """Classical mixture of pure states sharing one register layout."""
    members: Tuple[Tuple[float, StateVector], ...]

    def __post_init__(self):
        members = tuple((float(w), s) for w, s in self.members)
        if not members:
            raise NormalizationError(0.0, "ensemble has no members")
        if any(w < 0.0 or w > 1.0 for w, _ in members):
            raise NormalizationError(sum(w for w, _ in members), "ensemble weight outside [0, 1]")
        total = sum(w for w, _ in members)
        if abs(total - 1.0) > EPS_PROB:
            raise NormalizationError(total, "ensemble weights do not sum to 1")
        dims = members[0][1].dims
        for _, state in members[1:]:
            if state.dims != dims:
                raise DimensionMismatchError(dims, state.dims, "ensemble member")
        object.__setattr__(self, "members", members)

    @classmethod
    def pure(cls, state: StateVector) -> "WeightedEnsemble":
        return cls(((1.0, state),))

    @property
    def dims(self) -> Tuple[int, ...]:
        return self.members[0][1].dims

    @property
    def total_weight(self) -> float:
        return sum(w for w, _ in self.members)


def apply_bitflip_noise(ensemble: WeightedEnsemble, site: int, p: float = 0.5) -> WeightedEnsemble:
    """Controlled-NOT on `site` with a random classical control bit.

    The control bit is 1 with probability p; each member (w, psi) splits into
    (w*(1-p), psi) and (w*p, X_site psi). Zero-weight branches are dropped.
    """
    if not 0.0 <= p <= 1.0:
        raise ParameterRangeError("p", p, 0.0, 1.0)
    dims = ensemble.dims
    if not 0 <= site < len(dims):
        raise DimensionMismatchError(f"site in [0, {len(dims)})", site, "bit-flip noise")
    x_gate = pauli_x() if dims[site] == 2 else reflection(dims[site])
    members: List[Tuple[float, StateVector]] = []
    for weight, state in ensemble.members:
        if weight * (1.0 - p) > 0.0:
            members.append((weight * (1.0 - p), state))
        if weight * p > 0.0:
            members.append((weight * p, apply_local(state, site, x_gate)))
    logger.debug(f"Bit-flip noise on site {site} with p={p}: {len(ensemble.members)} -> {len(members)} members")
    return WeightedEnsemble(tuple(members))


def ensemble_outcome_probabilities(ensemble: WeightedEnsemble) -> np.ndarray:
    """Weight-averaged measurement probabilities over the ensemble."""
    probs = sum(w * outcome_probabilities(s) for w, s in ensemble.members)
    total = float(np.sum(probs))
    if abs(total - 1.0) > EPS_PROB + EPS_WEIGHT:
        raise NormalizationError(total, "ensemble probabilities do not sum to 1")
    return probs
