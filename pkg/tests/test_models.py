"""
Builtin models, model files and classification
"""
import dataclasses
import json
from pathlib import Path

import numpy as np
import pytest

from qktlab.services.errors import (
    JacobiViolationError,
    ModelExpectationError,
    ParseError,
    TripleViolationError,
    UnknownModelError,
)
from qktlab.services.models import (
    builtin,
    builtin_names,
    check_expectation,
    file_from_model,
    load,
    save,
    validate,
)
from qktlab.services.quaternionic import standard_triple

DATA = Path(__file__).resolve().parents[1] / "qktlab" / "data"
J1 = standard_triple(2).J1.tolist()
J2 = standard_triple(2).J2.tolist()


def _write(tmp_path, payload, name="model.json"):
    path = tmp_path / name
    path.write_text(json.dumps(payload), encoding="utf-8")
    return path


def test_builtin_registry():
    assert builtin_names() == ["flat8", "hopf8", "solv8"]
    with pytest.raises(UnknownModelError):
        builtin("hopf12")


@pytest.mark.parametrize("name", ["flat8", "hopf8", "solv8"])
def test_save_and_load_builtins(tmp_path, name):
    model = builtin(name)
    loaded = load(save(model, tmp_path / f"{name}.json"))
    assert loaded.name == model.name
    assert loaded.expect == model.expect
    np.testing.assert_array_equal(loaded.L.brackets, model.L.brackets)
    np.testing.assert_array_equal(loaded.Q.J1, model.Q.J1)
    np.testing.assert_array_equal(loaded.Q.J3, model.Q.J3)


def test_saved_file_lists_each_bracket_once(tmp_path):
    mf = file_from_model(builtin("hopf8"))
    assert sorted(mf.brackets) == [(1, 2, 3, 2.0), (1, 3, 2, -2.0), (2, 3, 1, 2.0)]


def test_balanced_hkt_file_loads():
    model = load(DATA / "balanced_hkt8.json")
    assert model.expect == "balanced_hkt"
    assert model.L.dim == 8
    check_expectation(model, validate(model))


def test_non_antisymmetric_brackets_are_rejected(tmp_path):
    path = _write(tmp_path, {"name": "bad", "dim": 8, "brackets": [[0, 1, 2, 1.0], [1, 0, 2, 1.0]],
                             "J1": J1, "J2": J2})
    with pytest.raises(ParseError, match=r"\(1, 0\)"):
        load(path)


@pytest.mark.parametrize("payload", [
    {"name": "dim", "dim": 6, "J1": J1, "J2": J2},
    {"name": "range", "dim": 8, "brackets": [[0, 1, 8, 1.0]], "J1": J1, "J2": J2},
    {"name": "diag", "dim": 8, "brackets": [[2, 2, 1, 1.0]], "J1": J1, "J2": J2},
    {"name": "shape", "dim": 8, "J1": J1[:4], "J2": J2},
    {"name": "extra", "dim": 8, "J1": J1, "J2": J2, "colour": "red"},
    {"name": "repeat", "dim": 8, "brackets": [[0, 1, 2, 1.0], [0, 1, 2, 3.0]], "J1": J1, "J2": J2},
])
def test_invalid_files_raise_parse_error(tmp_path, payload):
    with pytest.raises(ParseError):
        load(_write(tmp_path, payload))


def test_unreadable_json(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{not json", encoding="utf-8")
    with pytest.raises(ParseError):
        load(path)


def test_jacobi_violation(tmp_path):
    path = _write(tmp_path, {"name": "jac", "dim": 8,
                             "brackets": [[0, 1, 2, 1.0], [1, 2, 3, 1.0], [0, 3, 1, 1.0]],
                             "J1": J1, "J2": J2})
    with pytest.raises(JacobiViolationError):
        load(path)


def test_triple_violation(tmp_path):
    with pytest.raises(TripleViolationError):
        load(_write(tmp_path, {"name": "triple", "dim": 8, "J1": J1, "J2": J1}))


def test_metric_is_orthonormalised(tmp_path):
    hopf = builtin("hopf8")
    rng = np.random.default_rng(5)
    U = np.triu(0.3 * rng.normal(size=(8, 8)), k=1) + np.diag(rng.uniform(1.0, 2.0, size=8))
    P = np.linalg.inv(U)
    # hopf8 written in the frame e U^{-1}; loading must undo it
    c = np.einsum("ai,bj,abc,kc->ijk", U, U, hopf.L.brackets, P)
    J1_in, J2_in = P @ hopf.Q.J1 @ U, P @ hopf.Q.J2 @ U
    entries = [[i, j, k, float(c[i, j, k])]
               for i in range(8) for j in range(i + 1, 8) for k in range(8) if abs(c[i, j, k]) > 0]
    path = _write(tmp_path, {"name": "hopf8_skew", "dim": 8, "brackets": entries,
                             "J1": J1_in.tolist(), "J2": J2_in.tolist(), "metric": (U.T @ U).tolist()})
    model = load(path, tol=1e-10)
    np.testing.assert_allclose(model.L.brackets, hopf.L.brackets, atol=1e-10)
    np.testing.assert_allclose(model.Q.J1, hopf.Q.J1, atol=1e-10)
    np.testing.assert_allclose(model.Q.J2, hopf.Q.J2, atol=1e-10)


def test_non_positive_metric(tmp_path):
    metric = np.eye(8)
    metric[0, 0] = -1.0
    with pytest.raises(ParseError):
        load(_write(tmp_path, {"name": "metric", "dim": 8, "J1": J1, "J2": J2, "metric": metric.tolist()}))


@pytest.mark.parametrize("name, label", [
    ("flat8", "hyperkähler"),
    ("hopf8", "HKT, non-balanced"),
    ("solv8", "QKT, non-HKT, instanton"),
    ("balanced_hkt8", "HKT, balanced"),
])
def test_classification(models, name, label):
    validation = validate(models[name])
    assert validation.label == label
    assert all(c.passed for c in validation.checks)
    check_expectation(models[name], validation)


def test_expectation_mismatch(models):
    wrong = dataclasses.replace(models["hopf8"], expect="balanced_hkt")
    with pytest.raises(ModelExpectationError):
        check_expectation(wrong, validate(wrong))


def test_repeated_bracket_entry_is_named(tmp_path):
    path = _write(tmp_path, {"name": "twice", "dim": 8, "brackets": [[0, 1, 2, 1.0], [0, 1, 2, 1.0]],
                             "J1": J1, "J2": J2})
    with pytest.raises(ParseError, match=r"\(0, 1, 2\) listed twice"):
        load(path)
