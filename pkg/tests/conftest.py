from functools import lru_cache

import numpy as np
import pytest

from gkpcb.gates import apply_cubic_T
from gkpcb.gkp import LogicalLabel, SqueezingSpec, db_to_delta, grid_for, logical_state

ACCEPTANCE_LINES = []


@lru_cache(maxsize=None)
def state(label: str, db_x: float, db_p: float | None = None, cubic: bool = False):
    """Cached logical state on the default grid for its squeezing."""
    s = SqueezingSpec.from_db(db_x, db_p)
    psi = logical_state(LogicalLabel(label), s, grid_for(s))
    return apply_cubic_T(psi) if cubic else psi


@lru_cache(maxsize=None)
def ratio_state(label: str, db_x: float, ratio: float, cubic: bool = False):
    dx = db_to_delta(db_x)
    s = SqueezingSpec(dx, ratio * dx)
    psi = logical_state(LogicalLabel(label), s, grid_for(s))
    return apply_cubic_T(psi) if cubic else psi


@pytest.fixture
def rng():
    return np.random.default_rng(20201013)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
