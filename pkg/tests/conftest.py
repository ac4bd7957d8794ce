import math

import numpy as np
import pytest

from uniwalk.walk_core import QubitState

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def sym():
    return QubitState.symmetric()


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


H = 1 / math.sqrt(2)
