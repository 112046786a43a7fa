import numpy as np
import pytest

from blindbf import UlaGeometry


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def geom16():
    return UlaGeometry(16, 0.5)


def random_complex(rng, *shape):
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
