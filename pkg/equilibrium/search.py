"""Best responses over the SU(2) strategy space.

A grid over (theta, alpha, beta) seeds Nelder-Mead refinement from the best
few grid points. Unconverged refinements are restarted from their best vertex.
"""

import logging
from typing import Callable, List, NamedTuple, Optional

import numpy as np
from scipy.optimize import minimize
from tenacity import retry, retry_if_result, stop_after_attempt

from config.settings import SearchConfig
from exceptions import GameDefinitionError
from protocol.game import GameSpec, StrategyProfile
from protocol.runner import deviation_payoffs
from quantum.operators import Su2Params, su2_matrices

logger = logging.getLogger("equilibrium")

# Maps an (K, 3) array of (theta, alpha, beta) rows to K payoffs.
BatchObjective = Callable[[np.ndarray], np.ndarray]


class BestResponse(NamedTuple):
    params: Su2Params
    payoff: float
    converged: bool


def parameter_grid(cfg: SearchConfig, restrict_beta_zero: bool = False) -> np.ndarray:
    """Rows of (theta, alpha, beta) covering the strategy space."""
    g = cfg.grid_points_per_axis
    thetas = np.linspace(0.0, np.pi, g)
    alphas = np.linspace(-np.pi, np.pi, g)
    betas = np.zeros(1) if restrict_beta_zero else np.linspace(-np.pi, np.pi, g)
    mesh = np.meshgrid(thetas, alphas, betas, indexing="ij")
    return np.stack(mesh, axis=-1).reshape(-1, 3)


def _unconverged(result) -> bool:
    return not result.success


def _last_result(retry_state):
    return retry_state.outcome.result()


def _refine(objective: BatchObjective, start: np.ndarray, step: float, cfg: SearchConfig,
            restrict_beta_zero: bool, rng: np.random.Generator):
    """Nelder-Mead maximisation from `start`; returns (point, value, converged)."""
    n_free = 2 if restrict_beta_zero else 3

    def full(x: np.ndarray) -> np.ndarray:
        return np.array([[x[0], x[1], 0.0]]) if restrict_beta_zero else np.asarray(x)[None, :]

    def loss(x: np.ndarray) -> float:
        return -float(objective(full(x))[0])

    state = {"x": np.asarray(start[:n_free], dtype=float), "step": step}

    @retry(stop=stop_after_attempt(cfg.refine_restarts + 1),
           retry=retry_if_result(_unconverged),
           retry_error_callback=_last_result)
    def run():
        x0, h = state["x"], state["step"]
        signs = rng.choice((-1.0, 1.0), size=n_free)
        simplex = np.vstack([x0] + [x0 + h * signs[i] * e for i, e in enumerate(np.eye(n_free))])
        result = minimize(
            loss, x0, method="Nelder-Mead",
            options={
                "maxiter": cfg.refine_iterations,
                "xatol": cfg.refine_tolerance,
                "fatol": cfg.refine_tolerance,
                "initial_simplex": simplex,
            },
        )
        if not result.success:
            logger.debug(f"Nelder-Mead stopped unconverged at {result.x} ({result.message}); restarting")
        state["x"], state["step"] = result.x, h / 4
        return result

    result = run()
    return full(result.x)[0], -float(result.fun), bool(result.success)


def search_su2(objective: BatchObjective, cfg: Optional[SearchConfig] = None,
               restrict_beta_zero: bool = False) -> List[BestResponse]:
    """Maximise a batched objective over SU(2) parameters.

    Returns one result per start point, best first.
    """
    cfg = cfg or SearchConfig()
    rng = np.random.default_rng(cfg.seed)
    grid = parameter_grid(cfg, restrict_beta_zero)
    values = np.asarray(objective(grid), dtype=float)
    order = np.argsort(-values, kind="stable")[: cfg.n_starts]
    step = np.pi / (cfg.grid_points_per_axis - 1)

    results: List[BestResponse] = []
    for rank, index in enumerate(order):
        point, value, converged = _refine(objective, grid[index], step, cfg, restrict_beta_zero, rng)
        params = Su2Params.canonical(*point)
        payoff = float(objective(np.array([params.as_tuple()]))[0])
        if payoff < values[index]:
            params, payoff = Su2Params.canonical(*grid[index]), float(values[index])
        logger.info(
            f"Start {rank + 1}/{len(order)}: grid {values[index]:.6f} -> refined {payoff:.9f} "
            f"at {params.as_tuple()} (converged={converged})"
        )
        results.append(BestResponse(params, payoff, converged))
    results.sort(key=lambda r: -r.payoff)
    return results


def best_response(spec: GameSpec, player: int, others: StrategyProfile,
                  cfg: Optional[SearchConfig] = None,
                  restrict_beta_zero: bool = False) -> BestResponse:
    """Best pure SU(2) reply of `player` to the other players' strategies.

    The player's own entry in `others` is ignored.
    """
    if spec.dims[player] != 2:
        raise GameDefinitionError(
            f"best responses search SU(2); player {player} has {spec.dims[player]} moves"
        )

    def objective(points: np.ndarray) -> np.ndarray:
        candidates = su2_matrices(points[:, 0], points[:, 1], points[:, 2])
        return deviation_payoffs(spec, others, player, candidates)[:, player]

    return search_su2(objective, cfg, restrict_beta_zero)[0]
