from functools import lru_cache

import numpy as np
import pytest

from multfree.lie import build_realization


@lru_cache(maxsize=None)
def realization(group: str, rep: str = "std"):
    return build_realization(group, rep)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def random_vector(rng, n):
    return rng.standard_normal(n) + 1j * rng.standard_normal(n)


# one line per acceptance criterion, printed at the end of the session
ACCEPTANCE: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for k in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[k])
