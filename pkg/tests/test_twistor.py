"""
Twistor space: points, the structures I_1 and I_2, the tensors F and K and the class table
"""
import numpy as np
import pytest

from qktlab.services.errors import NotHKTError
from qktlab.services.twistor import (
    CLASSES,
    TRACE_CONVENTIONS,
    CurvatureForms,
    TwistorVector,
    complex_structure_matrix,
    f_tensor,
    gray_hervella,
    h_c,
    i_action,
    k_array,
    k_tensor,
    make_point,
    orthonormal_coords,
    pinned_trace_convention,
    point_grid,
    twistor_ricci,
    verify_twistor_theorem,
)

MODELS = ("flat8", "hopf8", "solv8", "balanced_hkt8")
HKT_MODELS = ("flat8", "hopf8", "balanced_hkt8")


def _assert_all_pass(checks):
    failed = [(c.id, c.abs_err) for c in checks if not c.passed]
    assert not failed, failed


@pytest.fixture(scope="module")
def small_grids(models):
    return {name: point_grid(m.Q, n_random=4) for name, m in models.items()}


# --------------------------------------------------------------------------- #
# Points, I_i and h_c
# --------------------------------------------------------------------------- #
def test_point_over_direction(models):
    Q = models["flat8"].Q
    a = np.array([0.6, 0.0, 0.8])
    pt = make_point(Q, a)
    np.testing.assert_allclose(pt.J0, Q.combination(a), atol=1e-12)
    np.testing.assert_allclose(pt.I0 @ pt.J0, pt.K0, atol=1e-12)
    assert pt.dim == 8


def test_gauge_rotates_fiber_basis_only(models):
    Q = models["flat8"].Q
    a = np.array([0.0, 0.0, 1.0])
    plain, turned = make_point(Q, a), make_point(Q, a, gauge=0.7)
    np.testing.assert_allclose(turned.J0, plain.J0, atol=1e-12)
    assert np.max(np.abs(turned.I0 - plain.I0)) > 0.1


def test_point_rejects_non_unit_direction(models):
    with pytest.raises(ValueError):
        make_point(models["flat8"].Q, np.array([2.0, 0.0, 0.0]))


@pytest.mark.parametrize("i", [1, 2])
def test_i_action_matches_matrix_and_squares_to_minus_one(models, rng, i):
    pt = make_point(models["hopf8"].Q, np.array([0.0, 1.0, 0.0]))
    v = TwistorVector(rng.normal(size=2), rng.normal(size=8))
    Iv = i_action(i, pt, v)
    IIv = i_action(i, pt, Iv)
    np.testing.assert_allclose(IIv.vertical, -v.vertical)
    np.testing.assert_allclose(IIv.horizontal, -v.horizontal, atol=1e-12)

    c = 0.8
    M = complex_structure_matrix(i, pt)
    np.testing.assert_allclose(orthonormal_coords(pt, c, Iv), M @ orthonormal_coords(pt, c, v), atol=1e-12)
    np.testing.assert_allclose(M.T @ M, np.eye(10), atol=1e-12)


def test_i_action_rejects_unknown_index(models):
    pt = make_point(models["flat8"].Q, np.array([1.0, 0.0, 0.0]))
    with pytest.raises(ValueError):
        i_action(3, pt, TwistorVector.base(np.ones(8)))


def test_h_c_blocks(models):
    pt = make_point(models["flat8"].Q, np.array([0.0, 1.0, 0.0]))
    fiber = TwistorVector.fiber(1.0, 0.0, 8)
    base = TwistorVector.base(np.eye(8)[3])
    assert h_c(pt, 0.5, fiber, fiber) == pytest.approx(0.25 * 8)
    assert h_c(pt, 0.5, base, base) == pytest.approx(1.0)
    assert h_c(pt, 0.5, fiber, base) == pytest.approx(0.0)
    with pytest.raises(ValueError):
        h_c(pt, 0.0, fiber, fiber)


def test_point_grid_is_seeded(models):
    Q = models["flat8"].Q
    first, second = point_grid(Q, seed=3), point_grid(Q, seed=3)
    assert len(first) == 26
    for p, q in zip(first, second):
        np.testing.assert_array_equal(p.a, q.a)
    np.testing.assert_array_equal(first[0].a, [1.0, 0.0, 0.0])


# --------------------------------------------------------------------------- #
# Curvature of h_c
# --------------------------------------------------------------------------- #
@pytest.mark.parametrize("c", [1.0, 0.5])
def test_fiber_curvature(bundles, c):
    forms = CurvatureForms.from_bundle(bundles["hopf8"])
    pt = make_point(bundles["hopf8"].Q, np.array([0.0, 0.0, 1.0]))
    I0s, K0s = TwistorVector.fiber(1.0, 0.0, 8), TwistorVector.fiber(0.0, 1.0, 8)
    # -16 n c^2 with n = 2
    assert k_tensor(pt, c, forms, I0s, K0s, I0s, K0s) == pytest.approx(-32.0 * c * c)


@pytest.mark.parametrize("i", [1, 2])
def test_f_tensor_is_skew_and_anti_invariant(bundles, rng, i):
    b = bundles["solv8"]
    forms = CurvatureForms.from_bundle(b)
    pt = make_point(b.Q, np.array([0.0, 0.6, 0.8]))
    X, Y, Z = (TwistorVector(rng.normal(size=2), rng.normal(size=8)) for _ in range(3))
    value = f_tensor(i, pt, 0.7, forms, X, Y, Z)
    assert f_tensor(i, pt, 0.7, forms, X, Z, Y) == pytest.approx(-value, abs=1e-10)
    IY, IZ = i_action(i, pt, Y), i_action(i, pt, Z)
    assert f_tensor(i, pt, 0.7, forms, X, IY, IZ) == pytest.approx(-value, abs=1e-10)


@pytest.mark.parametrize("name", MODELS)
def test_twistor_curvature_has_riemann_symmetries(bundles, small_grids, name):
    forms = CurvatureForms.from_bundle(bundles[name])
    for pt in small_grids[name][:3]:
        K = k_array(pt, 1.0, forms)
        np.testing.assert_allclose(K, -np.transpose(K, (1, 0, 2, 3)), atol=1e-10)
        np.testing.assert_allclose(K, -np.transpose(K, (0, 1, 3, 2)), atol=1e-10)
        np.testing.assert_allclose(K, np.transpose(K, (2, 3, 0, 1)), atol=1e-10)


# --------------------------------------------------------------------------- #
# Gray-Hervella classes and the equivalences
# --------------------------------------------------------------------------- #
def test_trace_convention_is_pinned():
    assert pinned_trace_convention() == "t(J0 xi)"
    assert pinned_trace_convention() in TRACE_CONVENTIONS


@pytest.mark.parametrize("name", MODELS)
def test_I1_is_hermitian_and_I2_is_not(bundles, small_grids, name):
    gh1 = gray_hervella(bundles[name], 1, 1.0, small_grids[name])
    gh2 = gray_hervella(bundles[name], 2, 1.0, small_grids[name])
    assert gh1.holds("hermitian")
    assert not gh2.holds("hermitian")
    assert set(gh1.classes) == set(CLASSES)
    _assert_all_pass(gh1.checks + gh2.checks)


@pytest.mark.parametrize("name", MODELS)
def test_twistor_equivalences(bundles, small_grids, name):
    b = bundles[name]
    report = verify_twistor_theorem(b, 1.0, small_grids[name])
    _assert_all_pass(report.checks)
    assert report.flags["I1_hermitian"]
    assert report.flags["I1_semi_kaehler"] == report.flags["balanced"]
    assert report.flags["I2_g1"] == report.flags["special_homothety_at_c"]


def test_twistor_flags_of_builtins(bundles, small_grids):
    flat = verify_twistor_theorem(bundles["flat8"], 1.0, small_grids["flat8"]).flags
    assert flat["balanced"] and flat["torsion_free"] and not flat["I2_g1"]
    hopf = verify_twistor_theorem(bundles["hopf8"], 1.0, small_grids["hopf8"]).flags
    assert not hopf["balanced"] and not hopf["I1_semi_kaehler"]
    solv = verify_twistor_theorem(bundles["solv8"], 1.0, small_grids["solv8"]).flags
    assert not solv["I2_g1"] and not solv["special_homothety_at_c"]


def test_twistor_verdicts_are_gauge_invariant(bundles):
    b = bundles["hopf8"]
    reference = verify_twistor_theorem(b, 1.0, point_grid(b.Q, n_random=2)).flags
    for gauge in np.linspace(0.1, 3.0, 10):
        flags = verify_twistor_theorem(b, 1.0, point_grid(b.Q, n_random=2, gauge=gauge)).flags
        assert flags == reference


def test_twistor_rejects_non_positive_c(bundles):
    with pytest.raises(ValueError):
        gray_hervella(bundles["flat8"], 1, -1.0)


# --------------------------------------------------------------------------- #
# Ricci tensors over HKT bases
# --------------------------------------------------------------------------- #
@pytest.mark.parametrize("name", HKT_MODELS)
@pytest.mark.parametrize("c", [1.0, 0.7])
def test_twistor_ricci_over_hkt(bundles, small_grids, name, c):
    report = twistor_ricci(bundles[name], c, small_grids[name])
    _assert_all_pass(report.checks)
    assert {"twistor.ricci.vertical", "twistor.star_ricci.vertical"} <= {ch.id for ch in report.checks}


def test_einstein_probes_are_skipped_without_einstein_base(bundles, small_grids):
    report = twistor_ricci(bundles["hopf8"], 1.0, small_grids["hopf8"])
    assert report.einstein_c is None
    assert any("Einstein probe skipped" in note for note in report.notes)


def test_twistor_ricci_needs_hkt(bundles, small_grids):
    with pytest.raises(NotHKTError):
        twistor_ricci(bundles["solv8"], 1.0, small_grids["solv8"])
