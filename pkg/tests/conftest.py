import sys
from pathlib import Path

import numpy as np
import pytest

from dualphillips.model import ModelParams

sys.path.insert(0, str(Path(__file__).parent))

GOLDEN = Path(__file__).parent / "golden"


@pytest.fixture
def fig3_params():
    return ModelParams(alpha=0.5, c=0.5, beta=0.5, gamma=0.5, L1=1.0, B=1.0, A=1.0)


@pytest.fixture
def fig3_grid():
    # 200 points on (1, 2]: 1 + k/200, k = 1..200.
    return 1.0 + np.arange(1, 201) / 200.0


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "LINES", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for n in sorted(lines):
            terminalreporter.write_line(lines[n])
