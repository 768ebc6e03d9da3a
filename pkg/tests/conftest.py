import numpy as np
import pytest

from cosetleak.gf2 import GF2Matrix


@pytest.fixture
def example_A():
    """The 2x3 matrix [[1,0,1],[0,1,1]] used throughout as a worked example."""
    return GF2Matrix.from_rows([[1, 0, 1], [0, 1, 1]])


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def pytest_terminal_summary(terminalreporter):
    from tests import acceptance_log

    if acceptance_log.LINES:
        terminalreporter.section("acceptance criteria")
        for line in acceptance_log.LINES:
            terminalreporter.write_line(line)
