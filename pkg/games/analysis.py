"""Classical game analysis: dominance, pure Nash equilibria, Pareto optimality,
saddle points and evolutionary stability."""

import logging
from typing import List, Optional, Set, Tuple

import numpy as np

from exceptions import GameDefinitionError
from games.matrix import ClassicalMatrix, Outcome

logger = logging.getLogger("games")


def _own_payoffs_first(m: ClassicalMatrix, player: int) -> np.ndarray:
    """Player's payoffs with their own move on axis 0 and opponents flattened."""
    own = np.moveaxis(m.payoffs[..., player], player, 0)
    return own.reshape(own.shape[0], -1)


def find_dominant_strategies(m: ClassicalMatrix) -> List[Optional[int]]:
    """Per player, the lowest-indexed move weakly dominating all alternatives, or None."""
    dominant: List[Optional[int]] = []
    for player in range(m.n_players):
        own = _own_payoffs_first(m, player)
        best = own.max(axis=0)
        candidates = np.flatnonzero(np.all(own >= best, axis=1))
        dominant.append(int(candidates[0]) if candidates.size else None)
    logger.debug(f"Dominant strategies: {dominant}")
    return dominant


def find_pure_nash(m: ClassicalMatrix) -> Set[Outcome]:
    """Outcomes where every player's move is a best response to the others'."""
    stable = np.ones(m.moves_per_player, dtype=bool)
    for player in range(m.n_players):
        own = m.payoffs[..., player]
        stable &= own >= own.max(axis=player, keepdims=True)
    return {tuple(int(a) for a in idx) for idx in np.argwhere(stable)}


def pareto_optimal_outcomes(m: ClassicalMatrix) -> Set[Outcome]:
    """Outcomes no other outcome Pareto-dominates."""
    outcomes = list(m.outcomes())
    table = m.flat_table()
    at_least = np.all(table[:, None, :] >= table[None, :, :], axis=2)
    strictly = np.any(table[:, None, :] > table[None, :, :], axis=2)
    # dominated[j] when some i is >= everywhere and > somewhere
    dominated = np.any(at_least & strictly, axis=0)
    return {outcomes[j] for j in np.flatnonzero(~dominated)}


def saddle_point(m: ClassicalMatrix) -> Optional[Tuple[int, int]]:
    """Lowest-indexed entry that is its row minimum and column maximum for the row player."""
    if m.n_players != 2:
        raise GameDefinitionError(f"saddle points need a 2-player game, got {m.n_players} players")
    if not m.is_zero_sum():
        raise GameDefinitionError("saddle points are defined for zero-sum games only")
    values = m.payoffs[..., 0]
    is_saddle = (values == values.min(axis=1, keepdims=True)) & (values == values.max(axis=0, keepdims=True))
    found = np.argwhere(is_saddle)
    if not found.size:
        return None
    return int(found[0][0]), int(found[0][1])


def is_symmetric_2x2(m: ClassicalMatrix) -> bool:
    return m.moves_per_player == (2, 2) and np.array_equal(m.payoffs[..., 0], m.payoffs[..., 1].T)


def is_ess_2x2(m: ClassicalMatrix, candidate: int, rival: int) -> bool:
    """Small-invasion limit: E(A,A) > E(B,A), or E(A,A) = E(B,A) and E(A,B) > E(B,B)."""
    if not is_symmetric_2x2(m):
        raise GameDefinitionError("ESS test needs a symmetric 2x2 game")
    if candidate == rival or {candidate, rival} != {0, 1}:
        raise GameDefinitionError(f"candidate {candidate} and rival {rival} must be the two distinct moves")
    e = m.payoffs[..., 0]
    a, b = candidate, rival
    if e[a, a] > e[b, a]:
        return True
    return bool(e[a, a] == e[b, a] and e[a, b] > e[b, b])
