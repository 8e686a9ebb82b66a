from __future__ import annotations

import re

import pytest

_CRITERION = re.compile(r"test_criterion_(\d+)_(\w+)")


def pytest_configure(config):
    config._criterion_lines = []


def pytest_runtest_logreport(report):
    m = _CRITERION.search(report.nodeid)
    if not m:
        return
    failed_setup = report.when == "setup" and report.failed
    if report.when != "call" and not failed_setup:
        return
    detail = dict(report.user_properties).get("detail", "")
    status = "PASS" if report.passed else "FAIL"
    line = f"criterion {int(m.group(1)):>2} {m.group(2).replace('_', ' ')}: {status}"
    if detail:
        line += f"  [{detail}]"
    pytest_runtest_logreport.lines.append(line)


pytest_runtest_logreport.lines = []


def pytest_terminal_summary(terminalreporter):
    lines = pytest_runtest_logreport.lines
    if not lines:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(lines, key=lambda s: int(s.split()[1])):
        terminalreporter.write_line(line)


@pytest.fixture
def detail(record_property):
    """Attach a one-line summary to the acceptance report."""

    def put(text: str) -> None:
        record_property("detail", text)

    return put
