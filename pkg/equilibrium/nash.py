"""Nash verification, counter strategies and known equilibria of quantum games."""

import logging
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from config.settings import SearchConfig
from exceptions import GameDefinitionError, ParameterRangeError, StrategyProfileError
from games.analysis import is_symmetric_2x2
from games.catalog import minority_game
from protocol.game import GameSpec, Strategy, StrategyProfile, Variant
from protocol.runner import mixed_expected_payoffs, symmetric_payoffs
from quantum.operators import Su2Params, Unitary, flip, su2, su2_matrices
from equilibrium.search import BestResponse, best_response, search_su2

logger = logging.getLogger("equilibrium")


@dataclass(frozen=True, eq=False)
class EquilibriumReport:
    """Outcome of checking every player's best unilateral deviation."""
    profile: StrategyProfile
    payoffs: Tuple[float, ...]
    max_unilateral_gain: Tuple[float, ...]
    is_nash: bool
    tolerance_used: float
    deviations: Tuple[BestResponse, ...] = ()

    def __post_init__(self):
        if len(self.payoffs) != len(self.max_unilateral_gain):
            raise StrategyProfileError("one payoff and one gain per player required")
        expected = all(g <= self.tolerance_used for g in self.max_unilateral_gain)
        if self.is_nash != expected:
            raise StrategyProfileError(
                f"is_nash={self.is_nash} contradicts gains {self.max_unilateral_gain} "
                f"at tolerance {self.tolerance_used}"
            )

    @classmethod
    def from_deviations(cls, profile: StrategyProfile, payoffs, deviations, tolerance: float) -> "EquilibriumReport":
        payoffs = tuple(float(p) for p in payoffs)
        gains = tuple(d.payoff - p for d, p in zip(deviations, payoffs))
        return cls(profile, payoffs, gains, all(g <= tolerance for g in gains), tolerance, tuple(deviations))


def verify_nash(spec: GameSpec, profile: StrategyProfile, cfg: Optional[SearchConfig] = None,
                restrict_beta_zero: bool = False) -> EquilibriumReport:
    """Search each player's best pure deviation and compare it with their payoff.

    Pure deviations suffice for mixed profiles since payoffs are linear in
    the mixing weights.
    """
    cfg = cfg or SearchConfig()
    payoffs = mixed_expected_payoffs(spec, profile)
    deviations = [
        best_response(spec, player, profile, cfg, restrict_beta_zero)
        for player in range(spec.n_players)
    ]
    report = EquilibriumReport.from_deviations(profile, payoffs, deviations, cfg.ne_tolerance)
    logger.info(
        f"Nash check: payoffs {report.payoffs}, gains {report.max_unilateral_gain}, is_nash={report.is_nash}"
    )
    return report


def counter_strategy(a: Su2Params) -> Unitary:
    """D U(theta, -alpha, pi/2 - beta): leaves the opponent 0 and takes 5 in the maximally entangled dilemma."""
    return flip() @ su2(Su2Params.wrapped(a.theta, -a.alpha, np.pi / 2 - a.beta))


def equivalent_partner_move(a: Su2Params) -> Unitary:
    """U(theta, alpha, -pi/2 - beta).

    Acting with it on the second qubit of (|00> + i|11>)/sqrt 2 gives the same
    state as U(a) on the first.
    """
    return su2(Su2Params.wrapped(a.theta, a.alpha, -np.pi / 2 - a.beta))


def mixed_ne_family(theta: float, alpha: float, beta: float) -> StrategyProfile:
    """Equal-weight mixed profile from the continuous equilibrium family."""
    Su2Params(theta, alpha, beta)
    alice = Strategy.uniform([
        su2(Su2Params.wrapped(theta, alpha, beta)),
        su2(Su2Params.wrapped(theta, np.pi / 2 + alpha, np.pi / 2 + beta)),
    ])
    bob = Strategy.uniform([
        su2(Su2Params.wrapped(np.pi - theta, np.pi / 2 + beta, alpha)),
        su2(Su2Params.wrapped(np.pi - theta, np.pi + beta, np.pi / 2 + alpha)),
    ])
    return StrategyProfile((alice, bob))


def eisert_mixed_equilibrium() -> StrategyProfile:
    """Alice mixes I and diag(i, -i); Bob mixes [[0, i], [i, 0]] and [[0, -1], [1, 0]]."""
    alice = Strategy.uniform([
        Unitary(np.eye(2)),
        Unitary(np.diag([1j, -1j])),
    ])
    bob = Strategy.uniform([
        Unitary(np.array([[0, 1j], [1j, 0]])),
        Unitary(np.array([[0, -1], [1, 0]])),
    ])
    return StrategyProfile((alice, bob))


def restricted_ne_search(spec: GameSpec, cfg: Optional[SearchConfig] = None) -> EquilibriumReport:
    """Symmetric best-response dynamics over beta = 0 strategies, starting from C."""
    cfg = cfg or SearchConfig()
    if spec.variant is not Variant.EISERT_FULL or not is_symmetric_2x2(spec.matrix):
        raise GameDefinitionError("restricted search needs a symmetric 2x2 EisertFull game")

    current = Su2Params(0.0, 0.0, 0.0)
    for iteration in range(cfg.max_dynamics_iterations):
        profile = StrategyProfile.symmetric(su2(current), 2)
        payoff = float(mixed_expected_payoffs(spec, profile)[1])
        reply = best_response(spec, 1, profile, cfg, restrict_beta_zero=True)
        logger.info(f"Dynamics step {iteration}: {current.as_tuple()} pays {payoff:.6f}, reply pays {reply.payoff:.6f}")
        if reply.payoff - payoff <= cfg.ne_tolerance:
            break
        current = reply.params
    else:
        logger.warning(f"Best-response dynamics did not settle in {cfg.max_dynamics_iterations} steps")

    return verify_nash(spec, StrategyProfile.symmetric(su2(current), 2), cfg, restrict_beta_zero=True)


def minority_quantum_search(n_players: int, cfg: Optional[SearchConfig] = None) -> EquilibriumReport:
    """Best symmetric SU(2) profile of the maximally entangled minority game, Nash-verified."""
    cfg = cfg or SearchConfig()
    if n_players not in (3, 4):
        raise ParameterRangeError("n_players", n_players, 3, 4)
    spec = GameSpec.eisert(minority_game(n_players), np.pi / 2)

    def shared_payoff(points: np.ndarray) -> np.ndarray:
        candidates = su2_matrices(points[:, 0], points[:, 1], points[:, 2])
        return symmetric_payoffs(spec, candidates)[:, 0]

    candidates = search_su2(shared_payoff, cfg)
    best = candidates[0]
    first_report = None
    for candidate in candidates:
        if candidate.payoff < best.payoff - cfg.ne_tolerance:
            break
        report = verify_nash(spec, StrategyProfile.symmetric(su2(candidate.params), n_players), cfg)
        if report.is_nash:
            return report
        first_report = first_report or report
    logger.warning(f"No Nash-verified symmetric profile among the {n_players}-player candidates")
    return first_report
