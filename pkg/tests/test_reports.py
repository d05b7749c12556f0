import json

import pytest

from symaction.analyze.reports import (
    REPORTS,
    DECOMPOSITION_ROWS,
    CaseResult,
    Report,
    check_example,
    check_decomposition_row,
    verify_exclusions,
    verify_examples,
    verify_decompositions,
)


def test_report_sorts_naturally_and_counts():
    cases = [CaseResult("2.n10", "t", True, "x"), CaseResult("2.n4", "t", False, "y"),
             CaseResult("1", "t", None, "z")]
    r = Report("demo", cases)
    assert [c.id for c in r.cases] == ["1", "2.n4", "2.n10"]
    assert not r.ok
    assert [c.id for c in r.failures] == ["2.n4"]
    assert r.to_text().splitlines()[-1] == "3 cases, 1 failed, 1 external"
    assert json.loads(r.to_json())["cases"][0]["status"] == "external"


def test_external_rows_do_not_fail_a_report():
    r = Report("demo", [CaseResult("a", "t", True, ""), CaseResult("b", "t", None, "")])
    assert r.ok


@pytest.mark.parametrize("row_id,dim", [("6", 14), ("7", 21), ("4", 8)])
def test_table_rows_intersection_dims(row_id, dim):
    row = next(r for r in DECOMPOSITION_ROWS if r.id == row_id)
    res = check_decomposition_row(row, seed=1)
    assert res.passed
    assert res.details["intersection_dim"] == dim
    assert res.details["dimension_count"] == dim


def test_decomposition_report_passes():
    r = verify_decompositions(seed=0)
    assert r.ok and len(r.cases) == 21
    assert all(c.details["ranks"] == [c.details["dim_G"]] * 5 for c in r.cases)


def test_exclusion_report():
    r = verify_exclusions(seed=0)
    assert r.ok
    ids = {c.id: c for c in r.cases}
    for key in ("3-3.n2", "3-3.n3", "2-7.dSO15", "3-7", "7-7.second", "2-3.n3", "2-3.n4", "5-5.g2"):
        assert ids[key].passed
    assert ids["5-5.g2"].details["cohomogeneity"] == 6
    assert sum(c.external for c in r.cases) == 6


def test_example_report():
    r = verify_examples(seed=0)
    assert r.ok and len(r.cases) == 5
    assert all(c.details["cohomogeneity"] == 1 for c in r.cases)


def test_example_check_is_seed_stable():
    a, b = check_example("ex3-spin7-diagonal", 1), check_example("ex3-spin7-diagonal", 2)
    assert a.passed and b.passed
    assert a.summary == b.summary


def test_report_registry_order():
    assert list(REPORTS) == ["table1", "section7", "section9"]
