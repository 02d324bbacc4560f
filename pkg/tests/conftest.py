import sys
from functools import lru_cache
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from whittakerpw.fourier import build_cfunctions
from whittakerpw.inversion import calibrate
from whittakerpw.jacquet import JacquetContext

QS = (2, 3, 5)


@lru_cache(maxsize=None)
def context(q):
    return JacquetContext.for_q(q)


@lru_cache(maxsize=None)
def cfunctions(q):
    return build_cfunctions(context(q))


@lru_cache(maxsize=None)
def weight(q):
    return calibrate(context(q), cfunctions(q))


@pytest.fixture(params=QS, ids=lambda q: f"q{q}")
def q(request):
    return request.param


@pytest.fixture
def ctx(q):
    return context(q)


@pytest.fixture
def cf(q):
    return cfunctions(q)


@pytest.fixture
def w(q):
    return weight(q)


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
