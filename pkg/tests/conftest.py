import math

from hypothesis import settings
import numpy as np
import pytest

settings.register_profile("repro", derandomize=True, deadline=None)
settings.load_profile("repro")

PI = math.pi


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import LINES

    if LINES:
        terminalreporter.section("acceptance")
        for line in LINES:
            terminalreporter.write_line(line)
