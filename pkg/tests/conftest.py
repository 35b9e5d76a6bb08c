import math

import numpy as np
import pytest

from phaseloc.gridwave import GridSpec

LOG2 = math.log(2.0)
S_GAUSS = 1 - LOG2                                   # 0.306853
S_PSI0 = 2 * (1 - LOG2)                              # 0.613706
S_OSC1 = -1 + LOG2 + 2 * 0.57721566490153286061      # 0.847579
S_MINUS1 = 2 + math.sqrt(2) * math.log(math.sqrt(2) - 1)        # 0.753550
S_PLUS_I = 2 - 2 / math.sqrt(3) * math.log(math.sqrt(3) + 1)    # 0.839465
# printed to six digits only
S_OSC2 = 1.15934
S_OSC3 = 1.38155


@pytest.fixture(scope="session")
def grid4096():
    return GridSpec(4096)


@pytest.fixture(scope="session")
def grid1m():
    return GridSpec(2 ** 20)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
