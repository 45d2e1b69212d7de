import itertools
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from serialhom import build_cyclic, build_kupisch  # noqa: E402


def cyclic_grid(lo=2, hi=8):
    """Every cyclic algebra A(n, delta) with lo <= n <= hi and delta nonempty."""
    for n in range(lo, hi + 1):
        for m in range(1, n + 1):
            for delta in itertools.combinations(range(1, n + 1), m):
                yield build_cyclic(n, delta)


@pytest.fixture(scope="session")
def A42():
    return build_cyclic(4, {1, 3})


@pytest.fixture(scope="session")
def LOOP():
    """Vertex 1 -> 2 plus a loop at 2, every path of length two is zero."""
    return build_kupisch([2, 2], [2, 2])


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
