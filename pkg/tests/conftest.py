"""Shared fixtures and the per-criterion acceptance summary.

Tests tagged ``@pytest.mark.criterion(number, title)`` are grouped; after the
run one PASS/FAIL line per criterion is printed. A criterion passes only if
every test carrying its number ran and passed.
"""
from __future__ import annotations

from collections import defaultdict

import pytest

from subdivlab.corpus import default_corpus

_criteria: dict[int, str] = {}
_outcomes: dict[int, list[str]] = defaultdict(list)
_members: dict[str, int] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion this test gates")


def pytest_collection_modifyitems(session, config, items):
    for item in items:
        mark = item.get_closest_marker("criterion")
        if mark is not None:
            number, title = mark.args
            _criteria[number] = title
            _members[item.nodeid] = number


def pytest_runtest_logreport(report):
    number = _members.get(report.nodeid)
    if number is None:
        return
    if report.when == "call" or report.failed or report.skipped:
        _outcomes[number].append("passed" if report.passed else ("skipped" if report.skipped else "failed"))


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for number in sorted(_criteria):
        results = _outcomes.get(number, [])
        if not results:
            status = "NOT RUN"
        elif all(r == "passed" for r in results):
            status = "PASS"
        else:
            status = "FAIL"
        tr.write_line(f"criterion {number}: {status}  {_criteria[number]} ({len(results)} tests)")


GRID_Q = (1, 2, 3)


@pytest.fixture(scope="session")
def corpus():
    return [(e.name, e.build()) for e in default_corpus()]
