import pytest

from fcl import base_environment, run
from corpus import IRIS_SOURCE

# Filled by test_acceptance: (criterion number, verdict line).
ACCEPTANCE_LINES = []


@pytest.fixture
def env():
    return base_environment()


@pytest.fixture
def iris_env():
    e = base_environment()
    run(IRIS_SOURCE, e)
    return e


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for _, line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
