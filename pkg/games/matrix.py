"""Dense classical payoff tables."""

import itertools
from dataclasses import dataclass
from typing import Dict, Iterator, Mapping, Optional, Sequence, Tuple

import numpy as np

from exceptions import GameDefinitionError

Outcome = Tuple[int, ...]


@dataclass(frozen=True, eq=False)
class ClassicalMatrix:
    """Payoffs indexed by outcome tuple, stored as an array of shape (*moves, n_players).

    ``payoffs[a_1, ..., a_N, p]`` is player p's payoff when player k plays move a_k.
    """
    payoffs: np.ndarray
    labels: Optional[Tuple[Tuple[str, ...], ...]] = None

    def __post_init__(self):
        payoffs = np.array(self.payoffs, dtype=float)
        if payoffs.ndim < 3:
            raise GameDefinitionError(f"payoff array needs >= 2 players, got shape {payoffs.shape}")
        n_players = payoffs.shape[-1]
        if payoffs.ndim - 1 != n_players:
            raise GameDefinitionError(
                f"payoff array shape {payoffs.shape} does not give one payoff per player"
            )
        if any(m < 2 for m in payoffs.shape[:-1]):
            raise GameDefinitionError(f"every player needs >= 2 moves, got {payoffs.shape[:-1]}")
        if not np.all(np.isfinite(payoffs)):
            raise GameDefinitionError("payoffs must be finite")
        payoffs.setflags(write=False)
        object.__setattr__(self, "payoffs", payoffs)
        if self.labels is not None:
            labels = tuple(tuple(str(x) for x in player) for player in self.labels)
            if len(labels) != n_players or any(
                len(names) != m for names, m in zip(labels, payoffs.shape[:-1])
            ):
                raise GameDefinitionError("move labels do not match the payoff table")
            object.__setattr__(self, "labels", labels)

    @classmethod
    def from_outcomes(cls, moves_per_player: Sequence[int], table: Mapping[Outcome, Sequence[float]],
                      labels=None) -> "ClassicalMatrix":
        """Build from an outcome -> payoffs mapping; every outcome must be present."""
        moves = tuple(moves_per_player)
        payoffs = np.empty(moves + (len(moves),), dtype=float)
        for outcome in itertools.product(*(range(m) for m in moves)):
            if outcome not in table:
                raise GameDefinitionError(f"missing payoffs for outcome {outcome}")
            entry = tuple(table[outcome])
            if len(entry) != len(moves):
                raise GameDefinitionError(
                    f"outcome {outcome} has {len(entry)} payoffs, expected {len(moves)}"
                )
            payoffs[outcome] = entry
        return cls(payoffs, labels)

    @classmethod
    def from_rows(cls, moves_per_player: Sequence[int], rows: Sequence[Sequence[float]],
                  labels=None) -> "ClassicalMatrix":
        """Build from a dense list of per-outcome payoffs in row-major outcome order."""
        moves = tuple(moves_per_player)
        expected = int(np.prod(moves))
        if len(rows) != expected:
            raise GameDefinitionError(f"expected {expected} payoff entries, got {len(rows)}")
        payoffs = np.asarray(rows, dtype=float)
        if payoffs.shape != (expected, len(moves)):
            raise GameDefinitionError(
                f"each payoff entry needs {len(moves)} values, got shape {payoffs.shape}"
            )
        return cls(payoffs.reshape(moves + (len(moves),)), labels)

    @property
    def n_players(self) -> int:
        return self.payoffs.shape[-1]

    @property
    def moves_per_player(self) -> Tuple[int, ...]:
        return tuple(self.payoffs.shape[:-1])

    def outcomes(self) -> Iterator[Outcome]:
        return itertools.product(*(range(m) for m in self.moves_per_player))

    def payoff(self, outcome: Outcome) -> Tuple[float, ...]:
        return tuple(float(x) for x in self.payoffs[tuple(outcome)])

    def as_dict(self) -> Dict[Outcome, Tuple[float, ...]]:
        return {outcome: self.payoff(outcome) for outcome in self.outcomes()}

    def flat_table(self) -> np.ndarray:
        """Payoffs reshaped to (n_outcomes, n_players) in basis-index order."""
        return self.payoffs.reshape(-1, self.n_players)

    def move_label(self, player: int, move: int) -> str:
        if self.labels is None:
            return str(move)
        return self.labels[player][move]

    def outcome_label(self, outcome: Outcome) -> str:
        return "".join(self.move_label(p, a) for p, a in enumerate(outcome))

    def is_zero_sum(self, tol: float = 1e-12) -> bool:
        return bool(np.all(np.abs(self.payoffs.sum(axis=-1)) <= tol))
