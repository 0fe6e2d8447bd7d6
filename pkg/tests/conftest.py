import pytest

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def criterion_log():
    return ACCEPTANCE_LINES


@pytest.fixture(autouse=True)
def _default_tolerances(monkeypatch):
    # verdicts must not depend on the caller's environment
    monkeypatch.delenv("DIFFLAB_TOL", raising=False)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
