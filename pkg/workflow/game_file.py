"""JSON game files.

Example::

    {
      "players": 2,
      "moves": [2, 2],
      "payoffs": [[3, 3], [0, 5], [5, 0], [1, 1]],
      "variant": "eisert",
      "gamma": 1.5708
    }

`payoffs` lists one per-player payoff vector per outcome in row-major order
(player 1's move most significant). `moves` may be a single integer shared by
all players. `initial_state` is an optional list of [re, im] pairs and is only
accepted for the marinatto-weber variant.
"""

import json
import logging
import re
from typing import List, Optional, Tuple, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, ValidationError

from exceptions import GameFileError, QuantumGameException
from games.matrix import ClassicalMatrix
from protocol.game import GameSpec, Variant
from quantum.state import StateVector

logger = logging.getLogger("workflow")

# Gamma values within this distance of 0 or pi/2 snap to the endpoint,
# so four-decimal inputs such as 1.5708 mean maximal entanglement.
GAMMA_SNAP = 5e-5


def snap_gamma(gamma: float) -> float:
    if abs(gamma - np.pi / 2) <= GAMMA_SNAP:
        return float(np.pi / 2)
    if abs(gamma) <= GAMMA_SNAP:
        return 0.0
    return float(gamma)


class GameFile(BaseModel):
    """Raw game-file contents before conversion to a GameSpec."""
    model_config = ConfigDict(extra="forbid")

    players: int = Field(ge=2)
    moves: Union[int, List[int]]
    payoffs: List[List[float]]
    variant: Variant = Variant.EISERT_FULL
    gamma: float = float(np.pi / 2)
    initial_state: Optional[List[Tuple[float, float]]] = None


def _line_of(text: str, key: str) -> Optional[int]:
    match = re.search(rf'"{re.escape(key)}"\s*:', text)
    if match is None:
        return None
    return text.count("\n", 0, match.start()) + 1


def parse_game_file(text: str) -> GameSpec:
    """Parse game-file text into a GameSpec.

    Every failure is a GameFileError naming the offending key and, when it can
    be located, its line.
    """
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as e:
        raise GameFileError("<document>", f"invalid JSON: {e.msg}", e.lineno) from e
    if not isinstance(raw, dict):
        raise GameFileError("<document>", "top level must be a JSON object", 1)

    try:
        data = GameFile.model_validate(raw)
    except ValidationError as e:
        first = e.errors()[0]
        key = str(first["loc"][0]) if first["loc"] else "<document>"
        message = "missing required key" if first["type"] == "missing" else first["msg"]
        raise GameFileError(key, message, _line_of(text, key)) from e

    moves = [data.moves] * data.players if isinstance(data.moves, int) else list(data.moves)
    if len(moves) != data.players:
        raise GameFileError("moves", f"expected {data.players} move counts, got {len(moves)}",
                            _line_of(text, "moves"))

    try:
        matrix = ClassicalMatrix.from_rows(moves, data.payoffs)
    except QuantumGameException as e:
        raise GameFileError("payoffs", str(e), _line_of(text, "payoffs")) from e

    if data.variant is Variant.EISERT_FULL:
        if data.initial_state is not None:
            raise GameFileError("initial_state", "only marinatto-weber games take an initial state",
                                _line_of(text, "initial_state"))
        try:
            spec = GameSpec.eisert(matrix, snap_gamma(data.gamma))
        except QuantumGameException as e:
            raise GameFileError("gamma", str(e), _line_of(text, "gamma")) from e
    else:
        state = None
        if data.initial_state is not None:
            amps = np.array([complex(r, i) for r, i in data.initial_state])
            try:
                state = StateVector(tuple(moves), amps)
            except QuantumGameException as e:
                raise GameFileError("initial_state", str(e), _line_of(text, "initial_state")) from e
        spec = GameSpec.marinatto_weber(matrix, state)

    logger.debug(f"Parsed {spec.variant.value} game with moves {spec.moves_per_player}")
    return spec
