"""
Checks and the JSON report
"""
import json
import math

import numpy as np
import pytest

from qktlab.services.report import Report, compare


def test_compare_picks_worst_entry():
    check = compare("x", "lhs = rhs", "ref", np.array([1.0, 2.0, 3.0]), np.array([1.0, 2.5, 3.0]), 1e-9)
    assert not check.passed
    assert (check.lhs, check.rhs, check.abs_err) == (2.0, 2.5, 0.5)


def test_compare_broadcasts_scalars():
    check = compare("x", "lhs = 0", "ref", np.zeros((3, 3)), 0.0, 1e-9)
    assert check.passed
    assert check.abs_err == 0.0


def test_report_passes_only_when_every_check_does():
    report = Report("m", "s", 1e-9)
    assert report.passed
    report.extend([compare("b", "", "ref b", 1.0, 1.0, 1e-9), compare("a", "", "ref a", 1.0, 2.0, 1e-9)])
    assert not report.passed
    assert [c.id for c in report.failures()] == ["a"]


def test_each_id_keeps_one_ref():
    report = Report("m", "s", 1e-9)
    report.extend([compare("a", "", "first", 1.0, 1.0, 1e-9)])
    report.extend([compare("a", "", "first", 2.0, 2.0, 1e-9)])
    assert report.references() == {"a": "first"}
    with pytest.raises(ValueError, match="refs"):
        report.extend([compare("a", "", "second", 1.0, 1.0, 1e-9)])
    with pytest.raises(ValueError, match="no ref"):
        report.extend([compare("b", "", "", 1.0, 1.0, 1e-9)])
    assert len(report.checks) == 2


def test_json_is_sorted_and_keeps_full_precision(tmp_path):
    report = Report("m", "s", 1e-9)
    value = 0.1 + 0.2
    report.extend([compare("z", "", "ref z", value, value, 1e-9), compare("a", "", "ref a", math.nan, 0.0, 1e-9)])
    data = json.loads(report.write(tmp_path / "out" / "r.json").read_text(encoding="utf-8"))
    assert [c["id"] for c in data["checks"]] == ["a", "z"]
    assert data["checks"][1]["lhs"] == value
    assert data["checks"][0]["lhs"] is None
    assert data["passed"] is False
