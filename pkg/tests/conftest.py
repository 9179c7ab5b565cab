"""Shared fixtures and the acceptance summary printed after the run."""

from __future__ import annotations

import pytest

_CRITERIA: dict[int, str] = {}
_NOTES: list[str] = []


@pytest.fixture
def note():
    """Record a line for the end-of-run report."""
    return _NOTES.append


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.failed):
        return
    name = report.nodeid.rsplit("::", 1)[-1]
    if name.startswith("test_criterion_"):
        k = int(name.split("_")[2])
        _CRITERIA[k] = "PASS" if report.passed else "FAIL"


def pytest_terminal_summary(terminalreporter):
    if _CRITERIA:
        terminalreporter.section("acceptance")
        for k in sorted(_CRITERIA):
            terminalreporter.write_line(f"criterion {k}: {_CRITERIA[k]}")
    if _NOTES:
        terminalreporter.section("reported discrepancies")
        for line in _NOTES:
            terminalreporter.write_line(line)
