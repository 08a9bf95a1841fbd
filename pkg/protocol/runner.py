"""Game pipelines and payoff evaluation.

EisertFull: |psi_f> = J^dag (M_1 (x) ... (x) M_N) J |0...0>.
MarinattoWeber: |psi_f> = (M_1 (x) ... (x) M_N) |psi_init>.
"""

import itertools
import logging
from typing import Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np

from exceptions import (
    DimensionMismatchError, QuantumGameException, SimulationError, StrategyProfileError,
)
from protocol.game import GameSpec, StrategyProfile, Variant
from quantum.operators import Unitary
from quantum.state import (
    StateVector, WeightedEnsemble, apply_bitflip_noise, apply_global, apply_local,
    apply_on_axis, apply_on_axis_batch, basis_state, ensemble_outcome_probabilities,
    outcome_probabilities,
)

logger = logging.getLogger("protocol")

Target = Union[int, str, None]


def _check_moves(spec: GameSpec, moves: Sequence[Unitary]) -> List[Unitary]:
    moves = list(moves)
    if len(moves) != spec.n_players:
        raise DimensionMismatchError(spec.n_players, len(moves), "number of moves")
    for player, (move, dim) in enumerate(zip(moves, spec.dims)):
        if move.dim != dim:
            raise DimensionMismatchError(dim, move.dim, f"move of player {player}")
    return moves


def _apply_moves(state: StateVector, moves: Sequence[Unitary]) -> StateVector:
    for site, move in enumerate(moves):
        state = apply_local(state, site, move)
    return state


def run_eisert(spec: GameSpec, moves: Sequence[Unitary]) -> StateVector:
    """Entangle, apply each player's move, disentangle."""
    if spec.variant is not Variant.EISERT_FULL:
        raise StrategyProfileError(f"run_eisert needs an EisertFull game, got {spec.variant.value}")
    moves = _check_moves(spec, moves)
    state = apply_global(basis_state(spec.dims), spec.entangler)
    state = _apply_moves(state, moves)
    return apply_global(state, spec.entangler.dagger())


def run_marinatto_weber(spec: GameSpec, moves: Sequence[Unitary]) -> StateVector:
    """Apply each player's move to the chosen initial state; no disentangler."""
    if spec.variant is not Variant.MARINATTO_WEBER:
        raise StrategyProfileError(f"run_marinatto_weber needs a MarinattoWeber game, got {spec.variant.value}")
    moves = _check_moves(spec, moves)
    return _apply_moves(spec.initial_state, moves)


def run_game(spec: GameSpec, moves: Sequence[Unitary]) -> StateVector:
    if spec.variant is Variant.EISERT_FULL:
        return run_eisert(spec, moves)
    return run_marinatto_weber(spec, moves)


def run_sequence(initial: StateVector, steps: Iterable[Tuple[Target, Unitary]]) -> StateVector:
    """Apply gates left to right; a target of None or "global" means the whole register."""
    state = initial
    for index, (target, gate) in enumerate(steps):
        try:
            if target is None or target == "global":
                state = apply_global(state, gate)
            elif isinstance(target, (int, np.integer)) and not isinstance(target, bool):
                state = apply_local(state, int(target), gate)
            else:
                raise DimensionMismatchError("site index or 'global'", target, "step target")
        except QuantumGameException as e:
            logger.error(f"Gate sequence failed at step {index}: {e}")
            raise SimulationError(index, str(e)) from e
    return state


def payoffs_from_probabilities(spec: GameSpec, probs: np.ndarray) -> np.ndarray:
    return np.asarray(probs, dtype=float) @ spec.matrix.flat_table()


def expected_payoffs(spec: GameSpec, final: StateVector) -> np.ndarray:
    """Per-player payoff expectation sum_outcome P_p(outcome) |<outcome|final>|^2."""
    if final.dims != spec.dims:
        raise DimensionMismatchError(spec.dims, final.dims, "final state")
    return payoffs_from_probabilities(spec, outcome_probabilities(final))


def validate_profile(spec: GameSpec, profile: StrategyProfile) -> None:
    if len(profile) != spec.n_players:
        raise StrategyProfileError(f"profile has {len(profile)} strategies for {spec.n_players} players")
    for player, (strategy, dim) in enumerate(zip(profile, spec.dims)):
        if strategy.dim != dim:
            raise StrategyProfileError(
                f"player {player} strategy acts on dimension {strategy.dim}, game needs {dim}"
            )


def mixed_expected_payoffs(spec: GameSpec, profile: StrategyProfile) -> np.ndarray:
    """Average payoffs over the joint product of every player's mixture components."""
    validate_profile(spec, profile)
    total = np.zeros(spec.n_players)
    for combo in itertools.product(*(s.components for s in profile)):
        weight = float(np.prod([w for w, _ in combo]))
        if weight == 0.0:
            continue
        final = run_game(spec, [u for _, u in combo])
        total += weight * expected_payoffs(spec, final)
    return total


def run_with_bitflip_noise(spec: GameSpec, moves: Sequence[Unitary], p: float = 0.5,
                           sites: Optional[Sequence[int]] = None) -> WeightedEnsemble:
    """Play the game with random-control CNOT noise after the players' moves.

    Noise hits each listed site (all sites by default) before the disentangling
    gate of EisertFull games.
    """
    moves = _check_moves(spec, moves)
    sites = list(range(spec.n_players)) if sites is None else list(sites)
    if spec.variant is Variant.EISERT_FULL:
        state = apply_global(basis_state(spec.dims), spec.entangler)
    else:
        state = spec.initial_state
    ensemble = WeightedEnsemble.pure(_apply_moves(state, moves))
    for site in sites:
        ensemble = apply_bitflip_noise(ensemble, site, p)
    if spec.variant is Variant.EISERT_FULL:
        closing = spec.entangler.dagger()
        ensemble = WeightedEnsemble(tuple((w, apply_global(s, closing)) for w, s in ensemble.members))
    return ensemble


def ensemble_expected_payoffs(spec: GameSpec, ensemble: WeightedEnsemble) -> np.ndarray:
    if ensemble.dims != spec.dims:
        raise DimensionMismatchError(spec.dims, ensemble.dims, "ensemble")
    return payoffs_from_probabilities(spec, ensemble_outcome_probabilities(ensemble))


def _opening_tensor(spec: GameSpec) -> np.ndarray:
    if spec.variant is Variant.EISERT_FULL:
        start = spec.entangler.matrix[:, 0]
    else:
        start = spec.initial_state.amps
    return np.asarray(start).reshape(spec.dims)


def _closing_matrix(spec: GameSpec) -> Optional[np.ndarray]:
    if spec.variant is Variant.EISERT_FULL:
        return spec.entangler.matrix.conj().T
    return None


def _as_batch(candidates, dim: int) -> np.ndarray:
    batch = np.asarray(candidates, dtype=complex)
    if batch.ndim == 2:
        batch = batch[None]
    if batch.ndim != 3 or batch.shape[1:] != (dim, dim):
        raise DimensionMismatchError((dim, dim), batch.shape[1:], "candidate moves")
    return batch


def deviation_payoffs(spec: GameSpec, profile: StrategyProfile, player: int, candidates) -> np.ndarray:
    """Payoffs, shape (K, n_players), when `player` plays each candidate matrix.

    The other players keep their (possibly mixed) strategies from `profile`;
    the deviating player's own entry in `profile` is ignored. Candidates are
    raw matrices of shape (K, d, d) and are not unitarity-checked.
    """
    validate_profile(spec, profile)
    if not 0 <= player < spec.n_players:
        raise StrategyProfileError(f"player {player} out of range for {spec.n_players} players")
    batch = _as_batch(candidates, spec.dims[player])
    k = batch.shape[0]
    table = spec.matrix.flat_table()
    start = _opening_tensor(spec)
    closing = _closing_matrix(spec)
    others = [p for p in range(spec.n_players) if p != player]

    total = np.zeros((k, spec.n_players))
    for combo in itertools.product(*(profile[p].components for p in others)):
        weight = float(np.prod([w for w, _ in combo]))
        if weight == 0.0:
            continue
        fixed = start
        for p, (_, u) in zip(others, combo):
            fixed = apply_on_axis(fixed, u.matrix, p)
        moved = np.moveaxis(fixed, player, 0)
        amps = np.einsum("kij,j...->ki...", batch, moved)
        amps = np.moveaxis(amps, 1, player + 1).reshape(k, -1)
        if closing is not None:
            amps = amps @ closing.T
        total += weight * (np.abs(amps) ** 2) @ table
    return total


def symmetric_payoffs(spec: GameSpec, candidates) -> np.ndarray:
    """Payoffs, shape (K, n_players), when every player plays the same candidate."""
    if len(set(spec.dims)) != 1:
        raise DimensionMismatchError("equal site dimensions", spec.dims, "symmetric profile")
    batch = _as_batch(candidates, spec.dims[0])
    k = batch.shape[0]
    amps = np.broadcast_to(_opening_tensor(spec), (k,) + spec.dims).copy()
    for site in range(spec.n_players):
        amps = apply_on_axis_batch(amps, batch, site)
    amps = amps.reshape(k, -1)
    closing = _closing_matrix(spec)
    if closing is not None:
        amps = amps @ closing.T
    return (np.abs(amps) ** 2) @ spec.matrix.flat_table()
