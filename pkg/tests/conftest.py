"""Pytest wiring: acceptance tests record one result line per criterion;
this hook echoes them in a summary block at the end of the run so they are
visible even though pytest captures test stdout.
"""

from __future__ import annotations

ACCEPTANCE_LINES: list[str] = []


def record_acceptance_line(line: str) -> None:
    ACCEPTANCE_LINES.append(line)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
