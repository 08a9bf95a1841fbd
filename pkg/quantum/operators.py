"""Gate and strategy operators for quantum games.

Every operator is wrapped in :class:`Unitary`, which refuses matrices that
fail the unitarity check. Conventions: the bit flip is F = i*sigma_x and the
entangler is J = exp(i*gamma/2 * sigma_x^{(x)N}).
"""

import logging
from dataclasses import dataclass
from functools import reduce
from typing import Optional, Sequence, Union

import numpy as np

from config.settings import EPS_UNITARY
from exceptions import DimensionMismatchError, NotUnitaryError, ParameterRangeError

logger = logging.getLogger("quantum")

# Float slack when checking closed angle intervals.
ANGLE_SLACK = 1e-12

_SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)


def _max_unitarity_deviation(matrix: np.ndarray) -> float:
    product = matrix.conj().T @ matrix
    return float(np.max(np.abs(product - np.eye(matrix.shape[0]))))


@dataclass(frozen=True, eq=False)
class Unitary:
    """Square complex matrix with U^dag U = I within EPS_UNITARY."""
    matrix: np.ndarray

    def __post_init__(self):
        matrix = np.array(self.matrix, dtype=complex)
        if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
            raise DimensionMismatchError("square matrix", matrix.shape, "unitary")
        if matrix.shape[0] < 2:
            raise DimensionMismatchError(">= 2", matrix.shape[0], "unitary")
        if not np.all(np.isfinite(matrix)):
            raise NotUnitaryError(float("inf"))
        deviation = _max_unitarity_deviation(matrix)
        if deviation >= EPS_UNITARY:
            raise NotUnitaryError(deviation)
        matrix.setflags(write=False)
        object.__setattr__(self, "matrix", matrix)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def dagger(self) -> "Unitary":
        return Unitary(self.matrix.conj().T)

    def __matmul__(self, other: "Unitary") -> "Unitary":
        if self.dim != other.dim:
            raise DimensionMismatchError(self.dim, other.dim, "operator product")
        return Unitary(self.matrix @ other.matrix)

    def __repr__(self) -> str:
        return f"Unitary(dim={self.dim})"


def validate_unitary(u: Union[Unitary, np.ndarray, Sequence]) -> bool:
    """True iff the matrix is square and max |U^dag U - I| < EPS_UNITARY."""
    matrix = u.matrix if isinstance(u, Unitary) else np.asarray(u, dtype=complex)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        return False
    if not np.all(np.isfinite(matrix)):
        return False
    return _max_unitarity_deviation(matrix) < EPS_UNITARY


def wrap_angle(angle: float) -> float:
    """Map an angle into [-pi, pi)."""
    return float((angle + np.pi) % (2 * np.pi) - np.pi)


def _check_range(name: str, value: float, low: float, high: float) -> None:
    if not np.isfinite(value) or value < low - ANGLE_SLACK or value > high + ANGLE_SLACK:
        raise ParameterRangeError(name, value, low, high)


@dataclass(frozen=True)
class Su2Params:
    """(theta, alpha, beta) with theta in [0, pi] and alpha, beta in [-pi, pi]."""
    theta: float
    alpha: float = 0.0
    beta: float = 0.0

    def __post_init__(self):
        _check_range("theta", self.theta, 0.0, np.pi)
        _check_range("alpha", self.alpha, -np.pi, np.pi)
        _check_range("beta", self.beta, -np.pi, np.pi)

    @classmethod
    def wrapped(cls, theta: float, alpha: float, beta: float) -> "Su2Params":
        """Build params with alpha and beta taken modulo 2*pi into [-pi, pi)."""
        return cls(float(theta), wrap_angle(alpha), wrap_angle(beta))

    @classmethod
    def canonical(cls, theta: float, alpha: float, beta: float) -> "Su2Params":
        """Params in range whose matrix equals su2(theta, alpha, beta) up to a sign.

        Accepts any real angles, as produced by unconstrained optimizers.
        """
        t = float(theta) % (4 * np.pi)
        if t > 2 * np.pi:
            t -= 2 * np.pi
        if t > np.pi:
            # cos(t/2) flips sign, sin(t/2) does not; absorb into alpha.
            t = 2 * np.pi - t
            alpha = alpha + np.pi
        return cls.wrapped(min(t, np.pi), alpha, beta)

    def as_tuple(self):
        return (self.theta, self.alpha, self.beta)


@dataclass(frozen=True)
class EntanglementParam:
    """Entanglement level gamma in [0, pi/2]."""
    gamma: float

    def __post_init__(self):
        _check_range("gamma", self.gamma, 0.0, np.pi / 2)


def su2_matrices(theta, alpha, beta) -> np.ndarray:
    """Vectorized SU(2) strategy matrices, shape (..., 2, 2); no range checks."""
    theta, alpha, beta = np.broadcast_arrays(
        np.asarray(theta, dtype=float), np.asarray(alpha, dtype=float), np.asarray(beta, dtype=float)
    )
    c = np.cos(theta / 2)
    s = np.sin(theta / 2)
    out = np.empty(theta.shape + (2, 2), dtype=complex)
    out[..., 0, 0] = np.exp(1j * alpha) * c
    out[..., 0, 1] = 1j * np.exp(1j * beta) * s
    out[..., 1, 0] = 1j * np.exp(-1j * beta) * s
    out[..., 1, 1] = np.exp(-1j * alpha) * c
    return out


def su2(params: Su2Params) -> Unitary:
    """Pure quantum strategy U(theta, alpha, beta)."""
    return Unitary(su2_matrices(params.theta, params.alpha, params.beta))


def identity(dim: int = 2) -> Unitary:
    if dim < 2:
        raise DimensionMismatchError(">= 2", dim, "identity")
    return Unitary(np.eye(dim, dtype=complex))


def hadamard() -> Unitary:
    return Unitary(np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2))


def flip() -> Unitary:
    """Bit flip F = i*sigma_x; also the 'always defect' move D."""
    return Unitary(1j * _SIGMA_X)


def pauli_x() -> Unitary:
    return Unitary(_SIGMA_X)


def reflection(dim: int) -> Unitary:
    """|k> -> |dim-1-k>; a Hermitian involution equal to sigma_x for dim 2."""
    if dim < 2:
        raise DimensionMismatchError(">= 2", dim, "reflection")
    return Unitary(np.fliplr(np.eye(dim, dtype=complex)))


def permutation(dim: int, perm: Sequence[int]) -> Unitary:
    """Classical qudit move sending |k> to |perm[k]>."""
    if sorted(perm) != list(range(dim)):
        raise DimensionMismatchError(f"a permutation of range({dim})", list(perm), "permutation")
    matrix = np.zeros((dim, dim), dtype=complex)
    for source, target in enumerate(perm):
        matrix[target, source] = 1.0
    return Unitary(matrix)


def classical_mix(theta: float) -> Unitary:
    """U(theta, 0, 0): the classical mixture of identity and flip."""
    return su2(Su2Params(theta, 0.0, 0.0))


def strategy_from_matrix(matrix) -> Unitary:
    """Validate a user-supplied SU(n) move for a 2 x n game."""
    return Unitary(np.asarray(matrix, dtype=complex))


def kron(*operators: Unitary) -> Unitary:
    if not operators:
        raise DimensionMismatchError("at least one operator", 0, "kron")
    return Unitary(reduce(np.kron, (op.matrix for op in operators)))


def embed(u: Unitary, dims: Sequence[int], site: int) -> Unitary:
    """Full-register operator I (x) ... (x) u (x) ... (x) I acting on `site`."""
    if not 0 <= site < len(dims):
        raise DimensionMismatchError(f"site in [0, {len(dims)})", site, "embed")
    if dims[site] != u.dim:
        raise DimensionMismatchError(dims[site], u.dim, f"embed at site {site}")
    factors = [u if k == site else identity(d) for k, d in enumerate(dims)]
    return kron(*factors)


def entangler(n_players: int, gamma: Union[float, EntanglementParam],
              dims: Optional[Sequence[int]] = None) -> Unitary:
    """J = cos(gamma/2) I + i sin(gamma/2) R^{(x)N}.

    R is sigma_x on qubits and the reflection |k> -> |d-1-k> on qudits.
    Since R^{(x)N} squares to the identity, this closed form equals
    exp(i gamma/2 R^{(x)N}) exactly.
    """
    if n_players < 2:
        raise DimensionMismatchError(">= 2 players", n_players, "entangler")
    level = gamma if isinstance(gamma, EntanglementParam) else EntanglementParam(float(gamma))
    dims = list(dims) if dims is not None else [2] * n_players
    if len(dims) != n_players:
        raise DimensionMismatchError(n_players, len(dims), "entangler dims")
    flips = reduce(np.kron, (reflection(d).matrix for d in dims))
    half = level.gamma / 2
    matrix = np.cos(half) * np.eye(flips.shape[0]) + 1j * np.sin(half) * flips
    return Unitary(matrix)
