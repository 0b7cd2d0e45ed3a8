"""The fourteen acceptance criteria, each compared with exact equality.

One PASS/FAIL line per criterion is printed (visible with ``pytest -s``) and
the full report is written next to the package as acceptance_report.json.
"""

import json
from pathlib import Path

import pytest

from hopfcoh.acceptance import DEFAULT_SEED, dumps, report, run_acceptance

REPORT_PATH = Path(__file__).resolve().parent.parent / "acceptance_report.json"


@pytest.fixture(scope="module")
def results():
    res = run_acceptance(DEFAULT_SEED, jobs=1, other_jobs=2)
    print()
    for r in res:
        print(r.line() + f" ({r.seconds:.1f} s)")
    REPORT_PATH.write_text(dumps(report(res, DEFAULT_SEED, timings=True)) + "\n")
    return {r.number: r for r in res}


def test_all_fourteen_ran(results):
    assert sorted(results) == list(range(1, 15))


@pytest.mark.parametrize("number", range(1, 15))
def test_criterion(results, number):
    r = results[number]
    assert r.passed is True, f"{r.line()}: {json.dumps(r.detail, default=str)}"


def test_report_has_no_timings_by_default(results):
    rep = report(list(results.values()), DEFAULT_SEED)
    assert all("seconds" not in c for c in rep["criteria"])
