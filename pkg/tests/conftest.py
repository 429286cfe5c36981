import numpy as np
import pytest

from nctorus.algebra import RotationParameter

from .helpers import ACCEPTANCE_LINES, GOLDEN


@pytest.fixture
def golden():
    return RotationParameter.from_float(GOLDEN)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
