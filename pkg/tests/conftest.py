from functools import lru_cache

import pytest

from segre222 import field_from_order
from segre222.orbits import verify_theorems

ACCEPTANCE_LINES = []


@lru_cache(maxsize=None)
def report_for(q, threads=1, backend=None):
    from segre222.kernels import get_backend
    return verify_theorems(field_from_order(q), threads=threads, backend=get_backend(backend))


@pytest.fixture(params=[2, 3, 4, 5, 7, 8, 9, 11, 13, 16], ids=lambda q: f"q{q}")
def any_field(request):
    return field_from_order(request.param)


@pytest.fixture(params=[2, 3, 4, 5, 7], ids=lambda q: f"q{q}")
def small_field(request):
    return field_from_order(request.param)


@pytest.fixture
def acceptance_log():
    return ACCEPTANCE_LINES


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
