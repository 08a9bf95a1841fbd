"""Named experiments behind the command line.

Each experiment turns an ExperimentOptions into an ExperimentResult table.
Output depends only on the options (seed included), never on wall-clock time.
"""

import logging
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from config.settings import EPS_OPT, EPS_PROB, VERSION, SearchConfig
from exceptions import GameFileError, QuantumGameException, UnknownExperimentError
from equilibrium.entanglement import critical_gamma, entanglement_advantage, gamma_sweep
from equilibrium.nash import (
    counter_strategy, eisert_mixed_equilibrium, minority_quantum_search, mixed_ne_family,
    restricted_ne_search, verify_nash,
)
from equilibrium.search import best_response
from games.analysis import find_dominant_strategies, find_pure_nash, pareto_optimal_outcomes, saddle_point
from games.catalog import (
    AliceMove, PennyFlipMoves, classical_random_payoff, miracle_move, minority_game,
    penny_flip_win_probability, play_penny_flip, prisoners_dilemma,
)
from games.matrix import ClassicalMatrix
from protocol.game import GameSpec, StrategyProfile, Variant
from protocol.runner import (
    ensemble_expected_payoffs, expected_payoffs, run_eisert, run_game, run_with_bitflip_noise,
)
from quantum.operators import Su2Params, flip, hadamard, identity, su2
from quantum.state import outcome_probabilities
from workflow.game_file import parse_game_file, snap_gamma

logger = logging.getLogger("workflow")

Angles = Tuple[float, float, float]


class ExperimentOptions(BaseModel):
    """Flags shared by all experiments; each experiment reads the ones it needs."""
    model_config = ConfigDict(frozen=True)

    gamma: Optional[float] = None
    alice: Optional[Angles] = None
    bob: Optional[Angles] = None
    seed: int = 0
    game: Optional[str] = None
    points: Optional[int] = Field(default=None, ge=1)
    players: int = Field(default=4, ge=3)
    quantum: bool = False


@dataclass(frozen=True)
class ExperimentResult:
    name: str
    params: Dict[str, Any]
    columns: Tuple[str, ...]
    rows: Tuple[Tuple[Any, ...], ...]
    metadata: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        if not self.rows:
            raise QuantumGameException(f"experiment '{self.name}' produced no rows")
        for row in self.rows:
            if len(row) != len(self.columns):
                raise QuantumGameException(
                    f"experiment '{self.name}' row has {len(row)} values for {len(self.columns)} columns"
                )
            for value in row:
                if isinstance(value, float) and not math.isfinite(value):
                    raise QuantumGameException(f"experiment '{self.name}' produced a non-finite value")


# name -> (function, one-line description)
ExperimentFn = Callable[[ExperimentOptions, SearchConfig], Tuple[Dict[str, Any], Sequence[str], List[tuple], Dict[str, Any]]]
_REGISTRY: Dict[str, Tuple[ExperimentFn, str]] = {}


def experiment(name: str, description: str):
    def register(fn: ExperimentFn) -> ExperimentFn:
        _REGISTRY[name] = (fn, description)
        return fn
    return register


def available_experiments() -> Dict[str, str]:
    return {name: description for name, (_, description) in _REGISTRY.items()}


def run_experiment(name: str, options: Optional[ExperimentOptions] = None) -> ExperimentResult:
    """Run a registered experiment; raises UnknownExperimentError listing the known names."""
    if name not in _REGISTRY:
        raise UnknownExperimentError(name, sorted(_REGISTRY))
    options = options or ExperimentOptions()
    cfg = SearchConfig(seed=options.seed)
    fn, _ = _REGISTRY[name]
    logger.info(f"Running experiment '{name}'")
    params, columns, rows, extra = fn(options, cfg)
    metadata = {
        "seed": options.seed,
        "eps_prob": EPS_PROB,
        "eps_opt": EPS_OPT,
        "ne_tolerance": cfg.ne_tolerance,
        "grid_points_per_axis": cfg.grid_points_per_axis,
        "version": VERSION,
    }
    metadata.update(extra)
    return ExperimentResult(name, params, tuple(columns), tuple(tuple(r) for r in rows), metadata)


def _gamma(options: ExperimentOptions) -> float:
    return float(np.pi / 2) if options.gamma is None else snap_gamma(options.gamma)


def _params(angles: Optional[Angles], default: Su2Params) -> Su2Params:
    return default if angles is None else Su2Params(*angles)


def _load_spec(options: ExperimentOptions, gamma: Optional[float] = None) -> GameSpec:
    """The --game file when given, otherwise the prisoners' dilemma; --gamma overrides EisertFull files."""
    if options.game is None:
        return GameSpec.eisert(prisoners_dilemma(), _gamma(options) if gamma is None else gamma)
    try:
        text = Path(options.game).read_text()
    except OSError as e:
        raise GameFileError("<file>", f"cannot read {options.game}: {e.strerror}") from e
    spec = parse_game_file(text)
    if spec.variant is Variant.EISERT_FULL and (options.gamma is not None or gamma is not None):
        spec = spec.with_gamma(_gamma(options) if gamma is None else gamma)
    return spec


def _two_qubit(spec: GameSpec) -> GameSpec:
    if spec.moves_per_player != (2, 2):
        raise GameFileError("moves", f"this experiment needs a 2-player 2-move game, got {spec.moves_per_player}")
    return spec


def _angles_param(p: Su2Params) -> List[float]:
    return list(p.as_tuple())


CLASSICAL_COIN = {"I": identity(2), "F": flip(), "H": hadamard()}


@experiment("penny-flip", "Bob's win probability for every penny-flip move sequence")
def _penny_flip(options, cfg):
    rows = []
    for bob_first, bob_second in ((a, b) for a in CLASSICAL_COIN for b in CLASSICAL_COIN):
        u1, u2 = CLASSICAL_COIN[bob_first], CLASSICAL_COIN[bob_second]
        for alice in AliceMove:
            rows.append((bob_first, alice.value, bob_second, play_penny_flip(PennyFlipMoves(u1, alice, u2))))
        rows.append((bob_first, "*", bob_second, penny_flip_win_probability(u1, u2)))
    return {}, ("bob_first", "alice", "bob_second", "win_prob"), rows, {}


@experiment("pd", "One-shot payoffs for given strategies and entanglement")
def _pd(options, cfg):
    spec = _two_qubit(_load_spec(options))
    alice = _params(options.alice, Su2Params(0.0))
    bob = _params(options.bob, Su2Params(0.0))
    final = run_game(spec, [su2(alice), su2(bob)])
    probs = outcome_probabilities(final)
    payoffs = expected_payoffs(spec, final)
    labels = [spec.matrix.outcome_label(o) for o in spec.matrix.outcomes()]
    columns = ["gamma"] + [f"p_{label}" for label in labels] + ["alice_payoff", "bob_payoff"]
    row = [spec.gamma] + [float(p) for p in probs] + [float(x) for x in payoffs]
    params = {"gamma": spec.gamma, "alice": _angles_param(alice), "bob": _angles_param(bob), "game": options.game}
    return params, columns, [row], {}


@experiment("miracle-curve", "Payoffs of U(theta, 0, 0) against the miracle move")
def _miracle_curve(options, cfg):
    gamma = _gamma(options)
    spec = GameSpec.eisert(prisoners_dilemma(), gamma)
    points = options.points or 21
    rows = []
    for theta in np.linspace(0.0, np.pi, points):
        payoffs = expected_payoffs(spec, run_eisert(spec, [su2(Su2Params(theta)), miracle_move()]))
        rows.append((float(theta), float(payoffs[0]), float(payoffs[1]),
                     (1 - np.sin(theta)) / 2, 3 + 2 * np.sin(theta)))
    columns = ("theta", "alice_payoff", "bob_payoff", "alice_closed_form", "bob_closed_form")
    return {"gamma": gamma, "points": points}, columns, rows, {}


@experiment("critical-gamma", "Entanglement level below which D beats the miracle move")
def _critical_gamma(options, cfg):
    spec = _two_qubit(_load_spec(options, gamma=float(np.pi / 2)))
    gamma_star = critical_gamma(spec, cfg)
    return {"game": options.game}, ("gamma_star", "sin_gamma_star"), [(gamma_star, float(np.sin(gamma_star)))], {}


@experiment("gamma-sweep", "Payoffs of a fixed move pair across entanglement levels")
def _gamma_sweep(options, cfg):
    spec = _two_qubit(_load_spec(options, gamma=float(np.pi / 2)))
    alice = _params(options.alice, Su2Params(np.pi))
    bob = _params(options.bob, Su2Params(np.pi / 2, np.pi / 2, 0.0))
    points = options.points or 21
    gammas = np.linspace(0.0, np.pi / 2, points)
    rows = [
        (row.gamma, row.payoffs[0], row.payoffs[1], entanglement_advantage(spec, row.gamma, cfg))
        for row in gamma_sweep(spec, su2(alice), su2(bob), gammas)
    ]
    params = {"alice": _angles_param(alice), "bob": _angles_param(bob), "points": points, "game": options.game}
    return params, ("gamma", "alice_payoff", "bob_payoff", "miracle_advantage"), rows, {}


def _report_columns(n_players: int) -> List[str]:
    return ([f"payoff_{p}" for p in range(n_players)]
            + [f"gain_{p}" for p in range(n_players)] + ["is_nash"])


def _report_values(report) -> List[Any]:
    return list(report.payoffs) + list(report.max_unilateral_gain) + [report.is_nash]


@experiment("mixed-ne", "Mixed-strategy equilibria of the maximally entangled dilemma")
def _mixed_ne(options, cfg):
    spec = GameSpec.eisert(prisoners_dilemma(), np.pi / 2)
    rng = np.random.default_rng(options.seed)
    members = [("explicit", None)]
    members += [("family", (0.0, 0.0, 0.0))]
    for _ in range(options.points or 2):
        members.append(("family", (rng.uniform(0, np.pi), rng.uniform(-np.pi, np.pi), rng.uniform(-np.pi, np.pi))))
    rows = []
    for label, angles in members:
        profile = eisert_mixed_equilibrium() if angles is None else mixed_ne_family(*angles)
        report = verify_nash(spec, profile, cfg)
        row = [label] + (list(angles) if angles is not None else ["", "", ""])
        rows.append(row + _report_values(report))
    columns = ["profile", "theta", "alpha", "beta"] + _report_columns(2)
    return {"gamma": spec.gamma}, columns, rows, {}


@experiment("restricted-ne", "Symmetric equilibrium among beta = 0 strategies")
def _restricted_ne(options, cfg):
    spec = GameSpec.eisert(prisoners_dilemma(), np.pi / 2)
    report = restricted_ne_search(spec, cfg)
    unrestricted = verify_nash(spec, report.profile, cfg)
    row = list(_shared_move(report).as_tuple()) + _report_values(report) + [max(unrestricted.max_unilateral_gain)]
    columns = ["theta", "alpha", "beta"] + _report_columns(2) + ["full_space_gain"]
    return {"gamma": spec.gamma}, columns, [row], {}


def _shared_move(report) -> Su2Params:
    """SU(2) parameters of player 0's pure move, read back from its matrix."""
    matrix = report.profile[0].components[0][1].matrix
    alpha = float(np.angle(matrix[0, 0])) if abs(matrix[0, 0]) > 1e-12 else 0.0
    theta = float(2 * np.arctan2(abs(matrix[0, 1]), abs(matrix[0, 0])))
    beta = float(np.angle(matrix[0, 1] / 1j)) if abs(matrix[0, 1]) > 1e-12 else 0.0
    return Su2Params.wrapped(theta, alpha, beta)


@experiment("minority", "Classical and quantum payoffs of the minority game")
def _minority(options, cfg):
    n = options.players
    classical = classical_random_payoff(minority_game(n))
    columns = ["players", "classical_payoff"]
    row: List[Any] = [n, float(classical[0])]
    if options.quantum:
        report = minority_quantum_search(n, cfg)
        move = _shared_move(report)
        columns += ["theta", "alpha", "beta", "quantum_payoff", "max_gain", "is_nash"]
        row += list(move.as_tuple()) + [report.payoffs[0], max(report.max_unilateral_gain), report.is_nash]
    return {"players": n, "quantum": options.quantum}, columns, [row], {}


@experiment("best-response", "Bob's best SU(2) reply to a fixed Alice strategy")
def _best_response(options, cfg):
    spec = _two_qubit(_load_spec(options))
    alice = _params(options.alice, Su2Params(0.0))
    reply = best_response(spec, 1, StrategyProfile.pure(su2(alice), identity(2)), cfg)
    row = list(reply.params.as_tuple()) + [reply.payoff, reply.converged]
    params = {"gamma": spec.gamma, "alice": _angles_param(alice), "game": options.game}
    return params, ("theta", "alpha", "beta", "payoff", "converged"), [row], {}


@experiment("verify-ne", "Nash check of a pure strategy pair")
def _verify_ne(options, cfg):
    spec = _two_qubit(_load_spec(options))
    miracle = Su2Params(np.pi / 2, np.pi / 2, 0.0)
    alice = _params(options.alice, miracle)
    bob = _params(options.bob, miracle)
    report = verify_nash(spec, StrategyProfile.pure(su2(alice), su2(bob)), cfg)
    params = {"gamma": spec.gamma, "alice": _angles_param(alice), "bob": _angles_param(bob), "game": options.game}
    return params, _report_columns(2), [_report_values(report)], {}


@experiment("analyze", "Classical analysis of a payoff table")
def _analyze(options, cfg):
    matrix: ClassicalMatrix = _load_spec(options).matrix if options.game else prisoners_dilemma()
    nash = find_pure_nash(matrix)
    pareto = pareto_optimal_outcomes(matrix)
    rows = [
        [matrix.outcome_label(o)] + list(matrix.payoff(o)) + [o in nash, o in pareto]
        for o in matrix.outcomes()
    ]
    columns = (["outcome"] + [f"payoff_{p}" for p in range(matrix.n_players)]
               + ["pure_nash", "pareto_optimal"])
    dominant = [None if m is None else matrix.move_label(p, m)
                for p, m in enumerate(find_dominant_strategies(matrix))]
    extra: Dict[str, Any] = {"dominant_strategies": dominant}
    if matrix.n_players == 2 and matrix.is_zero_sum():
        point = saddle_point(matrix)
        extra["saddle_point"] = None if point is None else matrix.outcome_label(point)
    return {"game": options.game}, columns, rows, extra


@experiment("noise", "Payoffs under random-control CNOT noise on both qubits")
def _noise(options, cfg):
    spec = _two_qubit(_load_spec(options))
    shared = Su2Params(0.0, np.pi / 2, 0.0)
    alice = _params(options.alice, shared)
    bob = _params(options.bob, shared)
    points = options.points or 11
    rows = []
    for p in np.linspace(0.0, 1.0, points):
        ensemble = run_with_bitflip_noise(spec, [su2(alice), su2(bob)], float(p))
        payoffs = ensemble_expected_payoffs(spec, ensemble)
        rows.append((float(p), float(payoffs[0]), float(payoffs[1])))
    params = {"gamma": spec.gamma, "alice": _angles_param(alice), "bob": _angles_param(bob), "points": points}
    return params, ("p", "alice_payoff", "bob_payoff"), rows, {}


@experiment("counter", "Counter-strategy payoffs against random Alice strategies")
def _counter(options, cfg):
    spec = GameSpec.eisert(prisoners_dilemma(), np.pi / 2)
    rng = np.random.default_rng(options.seed)
    points = options.points or 10
    rows = []
    for _ in range(points):
        a = Su2Params(rng.uniform(0, np.pi), rng.uniform(-np.pi, np.pi), rng.uniform(-np.pi, np.pi))
        payoffs = expected_payoffs(spec, run_eisert(spec, [su2(a), counter_strategy(a)]))
        rows.append(a.as_tuple() + (float(payoffs[0]), float(payoffs[1])))
    params = {"points": points}
    return params, ("theta", "alpha", "beta", "alice_payoff", "bob_payoff"), rows, {}
