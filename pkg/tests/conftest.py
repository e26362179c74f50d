import numpy as np
import pytest

from duplexchain import ChainConfig, make_qubit

ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def random_qubit(rng):
    return make_qubit(rng.uniform(0.0, np.pi), rng.uniform(0.0, 2 * np.pi))


def random_case(rng, n_max=12, t_max=100.0, h_max=1.5):
    cfg = ChainConfig(int(rng.integers(2, n_max + 1)), 1.0, float(rng.uniform(0.0, h_max)))
    return cfg, random_qubit(rng), random_qubit(rng), float(rng.uniform(0.0, t_max))
