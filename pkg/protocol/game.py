"""Game specifications and strategy profiles."""

from dataclasses import dataclass, replace
from enum import Enum
from functools import cached_property
from typing import Iterator, Optional, Sequence, Tuple

import numpy as np

from config.settings import EPS_WEIGHT
from exceptions import DimensionMismatchError, GameDefinitionError, StrategyProfileError
from games.matrix import ClassicalMatrix
from quantum.operators import EntanglementParam, Unitary, entangler
from quantum.state import StateVector, basis_state


class Variant(str, Enum):
    """Quantization scheme."""
    EISERT_FULL = "eisert"
    MARINATTO_WEBER = "marinatto-weber"


@dataclass(frozen=True, eq=False)
class GameSpec:
    """A classical payoff table plus the quantum protocol that plays it.

    EisertFull games start from |0...0> and use the entangler J(gamma);
    MarinattoWeber games start from `initial_state` (|0...0> when omitted)
    and have no disentangling gate.
    """
    matrix: ClassicalMatrix
    variant: Variant = Variant.EISERT_FULL
    gamma: float = np.pi / 2
    initial_state: Optional[StateVector] = None

    def __post_init__(self):
        variant = Variant(self.variant)
        object.__setattr__(self, "variant", variant)
        if variant is Variant.EISERT_FULL:
            EntanglementParam(float(self.gamma))
            if self.initial_state is not None:
                raise GameDefinitionError("EisertFull games always start from |0...0>")
        else:
            state = self.initial_state or basis_state(self.dims)
            if state.dims != self.dims:
                raise DimensionMismatchError(self.dims, state.dims, "initial state")
            object.__setattr__(self, "initial_state", state)

    @classmethod
    def eisert(cls, matrix: ClassicalMatrix, gamma: float = np.pi / 2) -> "GameSpec":
        return cls(matrix, Variant.EISERT_FULL, gamma)

    @classmethod
    def marinatto_weber(cls, matrix: ClassicalMatrix,
                        initial_state: Optional[StateVector] = None) -> "GameSpec":
        return cls(matrix, Variant.MARINATTO_WEBER, 0.0, initial_state)

    @property
    def n_players(self) -> int:
        return self.matrix.n_players

    @property
    def moves_per_player(self) -> Tuple[int, ...]:
        return self.matrix.moves_per_player

    @property
    def dims(self) -> Tuple[int, ...]:
        return self.matrix.moves_per_player

    @property
    def payoffs(self) -> np.ndarray:
        return self.matrix.payoffs

    @cached_property
    def entangler(self) -> Unitary:
        return entangler(self.n_players, self.gamma, self.dims)

    def with_gamma(self, gamma: float) -> "GameSpec":
        if self.variant is not Variant.EISERT_FULL:
            raise GameDefinitionError("only EisertFull games carry an entanglement level")
        return replace(self, gamma=float(gamma))


@dataclass(frozen=True, eq=False)
class Strategy:
    """A pure strategy (one component) or a classical mixture of unitaries."""
    components: Tuple[Tuple[float, Unitary], ...]

    def __post_init__(self):
        components = tuple((float(p), u) for p, u in self.components)
        if not components:
            raise StrategyProfileError("a strategy needs at least one unitary")
        if any(p < 0.0 or p > 1.0 for p, _ in components):
            raise StrategyProfileError("mixing probabilities must lie in [0, 1]")
        total = sum(p for p, _ in components)
        if abs(total - 1.0) > EPS_WEIGHT:
            raise StrategyProfileError(f"mixing probabilities sum to {total!r}, not 1")
        if len({u.dim for _, u in components}) != 1:
            raise StrategyProfileError("all components of a mixed strategy need the same dimension")
        object.__setattr__(self, "components", components)

    @classmethod
    def pure(cls, u: Unitary) -> "Strategy":
        return cls(((1.0, u),))

    @classmethod
    def mixed(cls, components: Sequence[Tuple[float, Unitary]]) -> "Strategy":
        return cls(tuple(components))

    @classmethod
    def uniform(cls, unitaries: Sequence[Unitary]) -> "Strategy":
        if not unitaries:
            raise StrategyProfileError("a mixed strategy needs at least one component")
        weight = 1.0 / len(unitaries)
        return cls(tuple((weight, u) for u in unitaries))

    @property
    def is_pure(self) -> bool:
        return len(self.components) == 1

    @property
    def dim(self) -> int:
        return self.components[0][1].dim


@dataclass(frozen=True, eq=False)
class StrategyProfile:
    """One strategy per player, in player order."""
    strategies: Tuple[Strategy, ...]

    def __post_init__(self):
        strategies = tuple(self.strategies)
        if not strategies:
            raise StrategyProfileError("a profile needs at least one strategy")
        object.__setattr__(self, "strategies", strategies)

    @classmethod
    def pure(cls, *unitaries: Unitary) -> "StrategyProfile":
        return cls(tuple(Strategy.pure(u) for u in unitaries))

    @classmethod
    def symmetric(cls, u: Unitary, n_players: int) -> "StrategyProfile":
        return cls(tuple(Strategy.pure(u) for _ in range(n_players)))

    def __len__(self) -> int:
        return len(self.strategies)

    def __iter__(self) -> Iterator[Strategy]:
        return iter(self.strategies)

    def __getitem__(self, player: int) -> Strategy:
        return self.strategies[player]

    @property
    def is_pure(self) -> bool:
        return all(s.is_pure for s in self.strategies)

    def with_strategy(self, player: int, strategy: Strategy) -> "StrategyProfile":
        strategies = list(self.strategies)
        strategies[player] = strategy
        return StrategyProfile(tuple(strategies))
