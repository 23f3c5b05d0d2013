import hypothesis
import numpy as np
import pytest

from picsweep.smatrix import FrequencyGrid
from picsweep.simulate import SweepSpec

hypothesis.settings.register_profile("default", max_examples=100, deadline=None)
hypothesis.settings.register_profile("fast", max_examples=10, deadline=None)
hypothesis.settings.load_profile("default")

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def band_grid() -> FrequencyGrid:
    """101 points uniform in frequency across 1500-1600 nm."""
    return SweepSpec(1500e-9, 1600e-9, 101).grid()


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
