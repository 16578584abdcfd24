import numpy as np
import pytest

from irsdf.config import ScenarioConfig

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def rng():
    return np.random.default_rng(20191015)


@pytest.fixture(scope="session")
def scenario():
    return ScenarioConfig()


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
