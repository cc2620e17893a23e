"""
Verification suites end to end on the builtin models
"""
import dataclasses

import numpy as np
import pytest
from scipy.spatial.transform import Rotation

from qktlab.services.config import Config
from qktlab.services.errors import NotHKTError
from qktlab.services.quaternionic import QuaternionicTriple
from qktlab.services.suites import SuiteRunner


def _runner(models, name, **twistor):
    cfg = Config()
    cfg.twistor.n_random_points = 4
    for key, value in twistor.items():
        setattr(cfg.twistor, key, value)
    return SuiteRunner(cfg, models[name])


def _failures(report):
    return [(c.id, c.abs_err) for c in report.failures()]


@pytest.mark.parametrize("name", ["flat8", "hopf8", "solv8", "balanced_hkt8"])
@pytest.mark.parametrize("suite", ["structure", "curvature", "twistor"])
def test_suites_pass(models, name, suite):
    report = _runner(models, name).run(suite)
    assert report.passed, _failures(report)
    assert report.checks


def test_structure_notes_classification(models):
    report = _runner(models, "solv8").run("structure")
    assert "classification: QKT, non-HKT, instanton" in report.notes
    ids = {c.id for c in report.checks}
    assert {"structure.jacobi", "structure.triple", "torsion.pair_trace.J1", "torsion.mixed_pair_trace.J1J2"} <= ids


def test_curvature_suite_contents(models):
    report = _runner(models, "hopf8").run("curvature")
    ids = {c.id for c in report.checks}
    assert {"levi_civita.scal_g", "levi_civita.scal_torsion", "curvature.dT_two_formulas",
            "instanton.dt_is_derivative"} <= ids
    assert all(c.abs_err < 1e-9 for c in report.checks if c.id.startswith("levi_civita."))


def test_riemannian_split_noted_on_solv8(models):
    report = _runner(models, "solv8").run("curvature")
    assert any(note.startswith("curvature: Riemannian curvature does not split") for note in report.notes)


def test_hkt_suite(models):
    report = _runner(models, "hopf8").run("hkt")
    assert report.passed, _failures(report)
    with pytest.raises(NotHKTError):
        _runner(models, "solv8").run("hkt")


def test_all_skips_hkt_on_qkt_model(models):
    report = _runner(models, "solv8").run("all")
    assert report.passed, _failures(report)
    assert any(note.startswith("hkt: skipped") for note in report.notes)
    assert not any(c.id.startswith("twistor.ricci") for c in report.checks)


def test_twistor_suite_on_hkt_model_includes_ricci(models):
    report = _runner(models, "balanced_hkt8", c=0.8).run("twistor")
    assert report.passed, _failures(report)
    assert "twistor.ricci.horizontal" in {c.id for c in report.checks}


def test_unknown_suite(models):
    with pytest.raises(ValueError):
        _runner(models, "flat8").run("spectral")


def test_classify_table(models):
    report = _runner(models, "hopf8").classify()
    assert report.passed, _failures(report)
    assert any(note.startswith("I1 at c = 1: ") and "hermitian" in note for note in report.notes)


def test_reports_are_deterministic(models):
    first = _runner(models, "hopf8", seed=7).run("all").to_dict()
    second = _runner(models, "hopf8", seed=7).run("all").to_dict()
    first.pop("wall_time")
    second.pop("wall_time")
    assert first == second


def _regauged(model, R):
    # J'_a = sum_b R[b, a] J_b for a rotation R of SO(3)
    mats = np.einsum("ba,bij->aij", R, np.stack(list(model.Q)))
    return dataclasses.replace(model, Q=QuaternionicTriple(mats[0], mats[1], mats[2]))


@pytest.mark.parametrize("name", ["flat8", "hopf8", "solv8"])
def test_verdicts_survive_sp1_regauging(models, name):
    base = _runner(models, name, n_random_points=2).run("all")
    base_errors = {c.id: c.abs_err for c in base.checks}
    rng = np.random.default_rng(2024)
    for R in Rotation.random(10, random_state=rng).as_matrix():
        cfg = Config()
        cfg.twistor.n_random_points = 2
        report = SuiteRunner(cfg, _regauged(models[name], R)).run("all")
        assert report.passed == base.passed, _failures(report)
        assert report.notes[0] == base.notes[0]
        errors = {c.id: c.abs_err for c in report.checks}
        assert errors.keys() == base_errors.keys()
        assert max(abs(errors[k] - base_errors[k]) for k in errors) < 1e-10


def test_dT_check_reports_a_wrong_exterior_derivative(models):
    runner = _runner(models, "hopf8")
    b = runner.bundle
    wrong = b.dT.copy()
    for p, sign in zip([(0, 1, 2, 3), (1, 0, 2, 3), (0, 2, 1, 3), (0, 1, 3, 2)], [1, -1, -1, -1]):
        wrong[p] += sign * 1e-3
    runner._bundle = dataclasses.replace(b, dT=wrong)
    check = runner._dT_check()
    assert check.id == "curvature.dT_two_formulas"
    assert not check.passed
    assert check.abs_err == pytest.approx(1e-3)


def test_fiber_curvature_matches_commutator_oracle(models):
    c = 0.8
    report = _runner(models, "hopf8", c=c).run("twistor")
    fiber = next(chk for chk in report.checks if chk.id == "twistor.fiber_curvature")
    assert fiber.passed
    # -16 n c^2 at n = 2
    assert fiber.lhs == pytest.approx(-32.0 * c * c)
    assert "twistor.fiber_curvature_value" not in {chk.id for chk in report.checks}


@pytest.mark.parametrize("name", ["hopf8", "solv8", "balanced_hkt8"])
def test_every_check_id_has_one_ref(models, name):
    report = _runner(models, name).run("all")
    refs = {}
    for check in report.checks:
        assert check.ref
        refs.setdefault(check.id, set()).add(check.ref)
    assert all(len(r) == 1 for r in refs.values())
