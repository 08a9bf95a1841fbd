"""Payoffs as a function of the entanglement level gamma."""

import logging
from typing import List, NamedTuple, Optional, Sequence, Tuple

import numpy as np
from scipy.optimize import bisect, minimize_scalar

from config.settings import SearchConfig
from exceptions import GameDefinitionError, NoCrossoverError
from games.catalog import miracle_move
from protocol.game import GameSpec, StrategyProfile, Variant
from protocol.runner import deviation_payoffs, expected_payoffs, run_eisert
from quantum.operators import EntanglementParam, Unitary, flip, identity, su2_matrices

logger = logging.getLogger("equilibrium")

# Bracket tolerance for the crossover bisection.
GAMMA_XTOL = 1e-13


class SweepRow(NamedTuple):
    gamma: float
    payoffs: Tuple[float, ...]


def gamma_sweep(spec_template: GameSpec, alice: Unitary, bob: Unitary,
                gammas: Sequence[float]) -> List[SweepRow]:
    """Payoffs of a fixed move pair at each entanglement level."""
    if spec_template.variant is not Variant.EISERT_FULL:
        raise GameDefinitionError("gamma sweeps need an EisertFull game")
    rows = []
    for gamma in gammas:
        EntanglementParam(float(gamma))
        spec = spec_template.with_gamma(gamma)
        payoffs = expected_payoffs(spec, run_eisert(spec, [alice, bob]))
        rows.append(SweepRow(float(gamma), tuple(float(p) for p in payoffs)))
    return rows


def _classical_reply_payoff(spec: GameSpec, quantum_player: int, move: Unitary,
                            cfg: SearchConfig) -> float:
    """Quantum player's payoff when the other player answers `move` with their best U(theta, 0, 0)."""
    classical = 1 - quantum_player
    moves = [identity(2), identity(2)]
    moves[quantum_player] = move
    profile = StrategyProfile.pure(*moves)

    def payoffs_at(thetas: np.ndarray) -> np.ndarray:
        return deviation_payoffs(spec, profile, classical, su2_matrices(thetas, 0.0, 0.0))

    thetas = np.linspace(0.0, np.pi, 4 * (cfg.grid_points_per_axis - 1) + 1)
    grid = payoffs_at(thetas)
    best = int(np.argmax(grid[:, classical]))
    reply_value, quantum_value = grid[best, classical], grid[best, quantum_player]

    low, high = thetas[max(best - 1, 0)], thetas[min(best + 1, len(thetas) - 1)]
    refined = minimize_scalar(
        lambda t: -payoffs_at(np.array([t]))[0, classical],
        bounds=(low, high), method="bounded", options={"xatol": cfg.refine_tolerance},
    )
    if -refined.fun > reply_value:
        quantum_value = payoffs_at(np.array([refined.x]))[0, quantum_player]
    return float(quantum_value)


def entanglement_advantage(spec: GameSpec, gamma: float, cfg: Optional[SearchConfig] = None,
                           quantum_player: int = 1) -> float:
    """Payoff with the miracle move minus payoff with D, both against the classical best reply."""
    cfg = cfg or SearchConfig()
    if spec.variant is not Variant.EISERT_FULL or spec.moves_per_player != (2, 2):
        raise GameDefinitionError("entanglement advantage needs a 2x2 EisertFull game")
    if quantum_player not in (0, 1):
        raise GameDefinitionError(f"quantum_player must be 0 or 1, got {quantum_player}")
    at_gamma = spec.with_gamma(gamma)
    return (_classical_reply_payoff(at_gamma, quantum_player, miracle_move(), cfg)
            - _classical_reply_payoff(at_gamma, quantum_player, flip(), cfg))


def critical_gamma(spec: GameSpec, cfg: Optional[SearchConfig] = None) -> float:
    """Entanglement level where the miracle move stops beating D.

    Raises NoCrossoverError when the advantage keeps one sign on [0, pi/2].
    """
    cfg = cfg or SearchConfig()

    def advantage(gamma: float) -> float:
        return entanglement_advantage(spec, gamma, cfg)

    low, high = 0.0, np.pi / 2
    f_low, f_high = advantage(low), advantage(high)
    logger.debug(f"Advantage at gamma=0: {f_low:.9f}, at gamma=pi/2: {f_high:.9f}")
    if f_low == 0.0:
        return low
    if f_high == 0.0:
        return high
    if np.sign(f_low) == np.sign(f_high):
        raise NoCrossoverError(f_low, f_high)

    gamma_star = float(bisect(advantage, low, high, xtol=GAMMA_XTOL, maxiter=200))
    residual = advantage(gamma_star)
    if abs(residual) >= 1e-9:
        logger.warning(f"Crossover residual {residual:.3e} at gamma={gamma_star:.12f}")
    logger.info(f"Critical entanglement gamma*={gamma_star:.12f} (sin={np.sin(gamma_star):.12f})")
    return gamma_star
