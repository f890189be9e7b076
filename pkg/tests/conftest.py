import functools

import pytest

from ncg.catalog import builtin_catalog, resolve_group

# filled in by test_acceptance; printed once at the end of the run
ACCEPTANCE_LINES = {}


@functools.lru_cache(maxsize=None)
def group(name):
    """Shared, cached construction so expensive memos are reused across tests."""
    return resolve_group(name)


@functools.lru_cache(maxsize=None)
def catalog(max_order):
    return tuple(builtin_catalog(max_order))


@pytest.fixture
def G():
    return group


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[key])
