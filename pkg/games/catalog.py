"""Canonical games: prisoners' dilemma, minority game, matching pennies, penny flip."""

import itertools
import logging
from dataclasses import dataclass
from enum import Enum

import numpy as np

from exceptions import GameDefinitionError, ParameterRangeError
from games.matrix import ClassicalMatrix
from protocol.runner import run_sequence
from quantum.operators import Su2Params, Unitary, flip, identity, su2
from quantum.state import basis_state, outcome_probabilities

logger = logging.getLogger("games")

COOPERATE, DEFECT = 0, 1


def prisoners_dilemma(reward: float = 3.0, sucker: float = 0.0,
                      temptation: float = 5.0, punishment: float = 1.0) -> ClassicalMatrix:
    """Symmetric 2x2 dilemma; move 0 is cooperate, move 1 is defect."""
    table = {
        (0, 0): (reward, reward),
        (0, 1): (sucker, temptation),
        (1, 0): (temptation, sucker),
        (1, 1): (punishment, punishment),
    }
    return ClassicalMatrix.from_outcomes((2, 2), table, labels=(("C", "D"), ("C", "D")))


def is_prisoners_dilemma(m: ClassicalMatrix) -> bool:
    """True iff P_DC > P_CC > P_DD > P_CD for the row player of a symmetric 2x2 game."""
    if m.moves_per_player != (2, 2):
        raise GameDefinitionError(f"expected a 2x2 game, got moves {m.moves_per_player}")
    row = m.payoffs[..., 0]
    if not np.array_equal(row, m.payoffs[..., 1].T):
        return False
    p_cc, p_cd = row[COOPERATE, COOPERATE], row[COOPERATE, DEFECT]
    p_dc, p_dd = row[DEFECT, COOPERATE], row[DEFECT, DEFECT]
    return bool(p_dc > p_cc > p_dd > p_cd)


def matching_pennies() -> ClassicalMatrix:
    """Zero-sum: the row player wins 1 on a match and loses 1 otherwise."""
    table = {
        (0, 0): (1.0, -1.0),
        (0, 1): (-1.0, 1.0),
        (1, 0): (-1.0, 1.0),
        (1, 1): (1.0, -1.0),
    }
    return ClassicalMatrix.from_outcomes((2, 2), table, labels=(("H", "T"), ("H", "T")))


def minority_game(n_players: int) -> ClassicalMatrix:
    """Players choose 0 or 1; those in a strict minority score 1, everyone else 0."""
    if n_players < 3:
        raise GameDefinitionError(f"the minority game needs at least 3 players, got {n_players}")
    payoffs = np.zeros((2,) * n_players + (n_players,))
    for outcome in itertools.product((0, 1), repeat=n_players):
        ones = sum(outcome)
        counts = (n_players - ones, ones)
        for player, choice in enumerate(outcome):
            if counts[choice] < counts[1 - choice]:
                payoffs[outcome + (player,)] = 1.0
    return ClassicalMatrix(payoffs)


def classical_random_payoff(m: ClassicalMatrix) -> np.ndarray:
    """Expected payoffs when every player picks a move uniformly at random."""
    return m.flat_table().mean(axis=0)


def miracle_move() -> Unitary:
    """M = U(pi/2, pi/2, 0) = (i/sqrt 2) [[1, 1], [1, -1]]."""
    return su2(Su2Params(np.pi / 2, np.pi / 2, 0.0))


class AliceMove(str, Enum):
    """The classical player's options in the penny flip."""
    IDENTITY = "I"
    FLIP = "F"

    def unitary(self) -> Unitary:
        return identity(2) if self is AliceMove.IDENTITY else flip()


@dataclass(frozen=True)
class PennyFlipMoves:
    """Bob moves, then Alice (classical only), then Bob again."""
    bob_first: Unitary
    alice: AliceMove
    bob_second: Unitary

    def __post_init__(self):
        object.__setattr__(self, "alice", AliceMove(self.alice))
        if self.bob_first.dim != 2 or self.bob_second.dim != 2:
            raise GameDefinitionError("penny flip moves act on a single qubit")


def play_penny_flip(moves: PennyFlipMoves) -> float:
    """Probability that the coin, starting heads-up |0>, ends heads-up (Bob wins)."""
    final = run_sequence(
        basis_state((2,)),
        [(0, moves.bob_first), (0, moves.alice.unitary()), (0, moves.bob_second)],
    )
    return float(outcome_probabilities(final)[0])


def penny_flip_win_probability(bob_first: Unitary, bob_second: Unitary,
                               alice_flip_probability: float = 0.5) -> float:
    """Bob's win probability when Alice flips with the given probability."""
    if not 0.0 <= alice_flip_probability <= 1.0:
        raise ParameterRangeError("alice_flip_probability", alice_flip_probability, 0.0, 1.0)
    keep = play_penny_flip(PennyFlipMoves(bob_first, AliceMove.IDENTITY, bob_second))
    flipped = play_penny_flip(PennyFlipMoves(bob_first, AliceMove.FLIP, bob_second))
    return (1.0 - alice_flip_probability) * keep + alice_flip_probability * flipped
