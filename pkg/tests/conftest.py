import functools

import pytest

from singular_traces.phi import construct_phi_p

# filled by test_acceptance, printed at the end of the run
ACCEPTANCE_LINES = {}


@functools.lru_cache(maxsize=None)
def phi_cached(p, qmax):
    return construct_phi_p(p, qmax)


@pytest.fixture(scope="session")
def phi_for():
    return phi_cached


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[n])
