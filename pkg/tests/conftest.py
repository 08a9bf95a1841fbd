import numpy as np
import pytest

from config.settings import SearchConfig
from games.catalog import prisoners_dilemma
from protocol.game import GameSpec
from quantum.operators import Su2Params


@pytest.fixture
def pd_spec():
    """Maximally entangled prisoners' dilemma."""
    return GameSpec.eisert(prisoners_dilemma(), np.pi / 2)


@pytest.fixture
def cfg():
    return SearchConfig()


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def random_params(rng) -> Su2Params:
    return Su2Params(rng.uniform(0, np.pi), rng.uniform(-np.pi, np.pi), rng.uniform(-np.pi, np.pi))


def random_amps(rng, size: int) -> np.ndarray:
    amps = rng.normal(size=size) + 1j * rng.normal(size=size)
    return amps / np.linalg.norm(amps)


def same_up_to_phase(a: np.ndarray, b: np.ndarray, tol: float = 1e-9) -> bool:
    """True iff a = e^{i phi} b for some phase phi."""
    overlap = np.vdot(a.reshape(-1), b.reshape(-1))
    return abs(abs(overlap) - np.linalg.norm(a) * np.linalg.norm(b)) < tol
