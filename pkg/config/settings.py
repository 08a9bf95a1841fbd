"""Numerical tolerances, search configuration and environment settings."""

import os
from typing import Optional

from dotenv import load_dotenv
from pydantic import BaseModel, ConfigDict, Field

# Normalization of states and probability vectors.
EPS_PROB = 1e-9
# Entrywise |U^dag U - I| bound.
EPS_UNITARY = 1e-9
# Default derivative-free refinement tolerance.
EPS_OPT = 1e-6
# Slack for Nash verification; absorbs optimizer error.
NE_TOLERANCE = 1e-3
# Mixed-strategy weights and ensemble weight totals.
EPS_WEIGHT = 1e-12


class SearchConfig(BaseModel):
    """Controls for grid-seeded best-response searches."""
    model_config = ConfigDict(frozen=True)

    grid_points_per_axis: int = Field(default=25, ge=5)
    refine_iterations: int = Field(default=200, ge=1)
    refine_tolerance: float = Field(default=EPS_OPT, gt=0)
    seed: int = 0
    n_starts: int = Field(default=3, ge=1, description="Independent refinement start points")
    refine_restarts: int = Field(default=2, ge=0, description="Nelder-Mead restarts after an unconverged run")
    ne_tolerance: float = Field(default=NE_TOLERANCE, gt=0)
    max_dynamics_iterations: int = Field(default=50, ge=1)


class Settings(BaseModel):
    """Process-level defaults read from the environment."""
    model_config = ConfigDict(frozen=True)

    log_level: str = "WARNING"
    log_dir: Optional[str] = None
    seed: int = 0


def load_settings() -> Settings:
    """Load settings from an optional .env file and the process environment."""
    load_dotenv()
    return Settings(
        log_level=os.getenv("QGAMES_LOG_LEVEL", "WARNING").upper(),
        log_dir=os.getenv("QGAMES_LOG_DIR") or None,
        seed=int(os.getenv("QGAMES_SEED", "0")),
    )

# Reported in experiment metadata.
VERSION = "1.0.0"
