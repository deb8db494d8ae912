import pytest
from hypothesis import settings

from klatlas.harness.report import SuiteConfig
from klatlas.harness.suites import table_for

settings.register_profile("default", max_examples=200, deadline=None)
settings.load_profile("default")

ACCEPTANCE_LINES: list[str] = []


def pytest_configure(config):
    config.addinivalue_line("markers", "invariant: a declared module invariant or property")


@pytest.fixture(scope="session")
def table():
    """Dense KL tables shared by every test in the session."""
    return lambda n: table_for(SuiteConfig(n=n))


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
