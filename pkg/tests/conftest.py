"""Collects the acceptance verdicts and prints them after the run."""
import pytest

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def report():
    def record(criterion: int, passed: bool, detail: str) -> None:
        verdict = "PASS" if passed else "FAIL"
        ACCEPTANCE_LINES.append(f"criterion {criterion:>2} {verdict}  {detail}")

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1])):
            terminalreporter.write_line(line)
