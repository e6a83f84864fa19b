"""Shared fixtures and the acceptance-criteria summary hook."""

import pytest

# One line per acceptance criterion, printed after the test run so the
# verdicts survive pytest's output capture.
_criterion_lines = []


@pytest.fixture(scope="session")
def criterion_log():
    def record(name: str, passed: bool, detail: str):
        verdict = "PASS" if passed else "FAIL"
        _criterion_lines.append(f"{verdict}  {name}: {detail}")
        return passed

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if _criterion_lines:
        terminalreporter.section("acceptance criteria")
        for line in _criterion_lines:
            terminalreporter.write_line(line)
