import time

import pytest

from remotestate.dynamics import profile_table

ACCEPTANCE_LINES = []


@pytest.fixture(scope="session")
def profiles():
    """Profiles for n = 2..120 with default scan settings, plus sweep wall time."""
    start = time.perf_counter()
    table = profile_table(2, 120)
    elapsed = time.perf_counter() - start
    return {"table": table, "by_n": {p.n: p for p in table}, "elapsed": elapsed}


@pytest.fixture(scope="session")
def r_of(profiles):
    return lambda n: profiles["by_n"][n].r


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for line in ACCEPTANCE_LINES:
        terminalreporter.write_line(line)
