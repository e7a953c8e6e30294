import math

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from singosc.ermakov import ErmakovParams
from singosc.factorization import SeedParams, SeedSolution
from singosc.grid import SpatialGrid

settings.register_profile("default", deadline=None, max_examples=40,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

# one line per acceptance criterion, filled by tests/test_acceptance.py
ACCEPTANCE_LINES = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for k in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[k])


@pytest.fixture(scope="session")
def erm_a1c2():
    return ErmakovParams(1.0, 2.0, 0.0)


@pytest.fixture(scope="session")
def erm_a2c1():
    return ErmakovParams(2.0, 1.0, 0.0)


@pytest.fixture(scope="session")
def sol_g2():
    return SeedSolution(SeedParams(3.0, 1.0, 0.25), 2.0)


@pytest.fixture(scope="session")
def sol_g1():
    return SeedSolution(SeedParams(-2.0, 1.0, 0.25), 1.0)


def make_grid(erm, x_min=0.05, h=0.005):
    return SpatialGrid.with_spacing(x_min, 12.0 * math.sqrt(erm.sigma_sq_max), h)


@pytest.fixture(scope="session")
def grid_a1c2(erm_a1c2):
    return make_grid(erm_a1c2)


@pytest.fixture(scope="session")
def grid_a2c1(erm_a2c1):
    return make_grid(erm_a2c1)


def bumps(g, grid, count=8, seed=7):
    rng = np.random.default_rng(seed)
    return [grid.x ** (g + 1) * np.exp(-((grid.x - mu) ** 2)) + 0j for mu in rng.uniform(0.5, 4.0, count)]
