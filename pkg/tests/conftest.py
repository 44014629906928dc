import pytest

from thetagroups.exactalg import FieldConfig


@pytest.fixture(scope="session")
def Q():
    return FieldConfig.cyclotomic(1)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in sorted(RESULTS):
            terminalreporter.write_line(line)
