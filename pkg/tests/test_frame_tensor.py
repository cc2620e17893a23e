"""
Frame tensor helpers: inner products, J pull-backs and the (1,2)+(2,1) projection
"""
import numpy as np
import pytest

from qktlab.services import frame_tensor
from qktlab.services.errors import NotComplexStructureError
from qktlab.services.frame_tensor import (
    antisymmetry_residual,
    endo_inner,
    j_pullback_3form,
    norm_sq_3form,
    three_form_from_params,
    three_form_type_project,
    torsion_pair_trace,
    two_form_inner,
    type_20_part,
    type_operator,
)
from qktlab.services.quaternionic import standard_triple


def _e123(dim):
    T = np.zeros((dim, dim, dim))
    for (i, j, k), s in {(1, 2, 3): 1, (2, 3, 1): 1, (3, 1, 2): 1,
                         (2, 1, 3): -1, (1, 3, 2): -1, (3, 2, 1): -1}.items():
        T[i, j, k] = s
    return T


def test_endo_inner_is_trace_of_product():
    Q = standard_triple(2)
    assert endo_inner(Q.J1, Q.J1) == pytest.approx(8.0)
    assert endo_inner(Q.J1, Q.J2) == pytest.approx(0.0)


def test_endo_inner_rejects_mismatched_shapes():
    with pytest.raises(ValueError):
        endo_inner(np.eye(4), np.eye(8))


def test_two_form_inner_carries_half():
    e01 = np.zeros((4, 4))
    e01[0, 1], e01[1, 0] = 1.0, -1.0
    assert two_form_inner(e01, e01) == pytest.approx(1.0)


def test_norm_of_basic_three_form():
    assert norm_sq_3form(_e123(4)) == pytest.approx(6.0)


def test_j_pullback_needs_complex_structure():
    with pytest.raises(NotComplexStructureError):
        j_pullback_3form(_e123(4), np.eye(4), (True, False, False))


def test_j_pullback_pattern_length():
    J = standard_triple(1).J1
    with pytest.raises(ValueError):
        j_pullback_3form(_e123(4), J, (True, False))


def test_j_pullbacks_sum_to_type_operator():
    Q = standard_triple(2)
    rng = np.random.default_rng(0)
    T = three_form_from_params(rng.normal(size=56), 8)
    parts = [j_pullback_3form(T, Q.J1, p) for p in ((True, True, False), (True, False, True), (False, True, True))]
    np.testing.assert_allclose(sum(parts), type_operator(T, Q.J1), atol=1e-12)
    assert antisymmetry_residual(j_pullback_3form(T, Q.J1, (True, True, True))) < 1e-12


def test_projection_is_idempotent_and_of_type():
    Q = standard_triple(2)
    rng = np.random.default_rng(1)
    T = three_form_type_project(three_form_from_params(rng.normal(size=56), 8), list(Q))
    np.testing.assert_allclose(three_form_type_project(T, list(Q)), T, atol=1e-12)
    for J in Q:
        np.testing.assert_allclose(type_operator(T, J), T, atol=1e-12)
    assert antisymmetry_residual(T) < 1e-12


def test_pair_traces_on_random_projected_forms():
    Q = standard_triple(2)
    rng = np.random.default_rng(7)
    for _ in range(200):
        T = three_form_type_project(three_form_from_params(rng.normal(size=56), 8), list(Q))
        norm = norm_sq_3form(T)
        tol = 1e-10 * (1.0 + norm)
        for b, Jb in enumerate(Q):
            assert abs(torsion_pair_trace(T, Jb, Jb) - norm / 3.0) < tol
            for g, Jg in enumerate(Q):
                if g != b:
                    assert abs(torsion_pair_trace(T, Jg, Jb)) < tol


def test_type_20_part_of_invariant_form_vanishes():
    Q = standard_triple(1)
    omega = Q.J1
    np.testing.assert_allclose(type_20_part(omega, Q.J1), 0.0, atol=1e-15)
    assert np.max(np.abs(type_20_part(Q.J2, Q.J1))) > 0.5


def test_public_names_exclude_projection_internals():
    assert all(callable(getattr(frame_tensor, name)) for name in frame_tensor.__all__)
    assert not {"type_constraint_matrix", "params_from_three_form"} & set(frame_tensor.__all__)
    assert not hasattr(frame_tensor, "type_constraint_matrix")
