"""Shared pytest wiring: the acceptance verdict summary."""

from __future__ import annotations

import sys


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    module = sys.modules.get("test_acceptance")
    if module is None:
        return
    verdicts = getattr(module, "VERDICTS", [])
    if not verdicts:
        return
    terminalreporter.section("acceptance criteria")
    for line in verdicts:
        terminalreporter.write_line(line)
