import json
import math

import pytest

from subdivlab import CorpusEntry, run_suite, suite_passed
from subdivlab.corpus import complete
from subdivlab.verify import (
    CELL_CHECKS,
    Cell,
    DEFAULT_TOLERANCES,
    VerificationReport,
    lattice_closed_form_residual,
    lattice_numeric_residual,
    reports_table,
    reports_to_jsonl,
)


@pytest.fixture(scope="module")
def default_reports():
    return run_suite()


def test_default_suite_passes(default_reports):
    assert suite_passed(default_reports)
    cells = [r for r in default_reports if r.check in CELL_CHECKS]
    assert len(cells) == 8 * 3 * len(CELL_CHECKS)
    assert all(r.residual <= r.tolerance for r in default_reports)


def test_reports_carry_documented_tolerances(default_reports):
    for r in default_reports:
        assert r.tolerance == DEFAULT_TOLERANCES[r.check]
        assert r.wall_time >= 0


def test_fewer_q_values_give_fewer_cells():
    reports = run_suite(q_values=(1,), checks=CELL_CHECKS)
    assert len(reports) == 8 * len(CELL_CHECKS)
    assert suite_passed(reports)


def test_empty_corpus():
    assert run_suite([]) == []


def test_disconnected_graph_is_a_failing_build_report():
    corpus = [CorpusEntry("split", 4, [(0, 1), (2, 3)]), ("K3", complete(3))]
    reports = run_suite(corpus, q_values=(1,), checks=["kemeny_transfer"])
    build = [r for r in reports if r.check == "build"]
    assert len(build) == 1 and build[0].graph == "split" and not build[0].passed
    assert "DisconnectedError" in build[0].detail
    assert not suite_passed(reports)
    assert [r.graph for r in reports if r.check == "kemeny_transfer"] == ["K3"]


def test_check_errors_are_recorded_not_raised(monkeypatch):
    def broken(self):
        raise ArithmeticError("boom")

    monkeypatch.setattr(Cell, "foster", broken)
    reports = run_suite([("K3", complete(3))], q_values=(1,), checks=["foster", "kemeny_transfer"])
    assert [r.passed for r in reports] == [False, True]
    assert reports[0].residual == math.inf and "boom" in reports[0].detail


def test_unknown_check_is_rejected():
    with pytest.raises(ValueError):
        run_suite(checks=["nope"])


def test_workers_give_the_same_verdicts():
    serial = run_suite(q_values=(2,), checks=["hitting_transfer", "resistance_transfer"])
    threaded = run_suite(q_values=(2,), checks=["hitting_transfer", "resistance_transfer"], workers=4)
    key = lambda r: (r.graph, r.q, r.check)
    assert [(key(r), r.residual) for r in serial] == [(key(r), r.residual) for r in threaded]


def test_statistical_check_is_flagged():
    reports = run_suite([("K3", complete(3))], q_values=(1,), checks=["mc_hitting"])
    assert reports[0].statistical
    assert reports[0].residual <= 4.0


def test_statistical_failures_do_not_fail_the_suite():
    r = VerificationReport("g", 1, "mc_hitting", 9.0, 4.0, False, 0.0, statistical=True)
    assert suite_passed([r])


def test_lattice_residuals():
    assert lattice_closed_form_residual(2) == 0.0
    assert lattice_numeric_residual(3, 2) < 1e-10


def test_serialization(default_reports):
    lines = reports_to_jsonl(default_reports[:3]).splitlines()
    assert len(lines) == 3
    row = json.loads(lines[0])
    assert set(row) == {"graph", "q", "check", "residual", "tolerance", "passed", "wall_time", "statistical", "detail"}
    bad = VerificationReport("g", None, "build", math.inf, 0.0, False, 0.0)
    assert json.loads(bad.to_json())["residual"] == "inf"
    table = reports_table(default_reports[:2] + [bad])
    assert table.splitlines()[0].split()[:3] == ["graph", "q", "check"]
    assert "FAIL" in table
