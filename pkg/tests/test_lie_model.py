"""
Metric Lie algebras: Jacobi, Koszul, Chevalley-Eilenberg and the codifferential
"""
import numpy as np
import pytest

from qktlab.services.lie_model import (
    MetricLieAlgebra,
    ce_derivative,
    codifferential,
    covariant_derivative,
    jacobi_check,
    levi_civita,
    torsion_of,
)
from qktlab.services.models import brackets_from_entries

SU2 = [(1, 2, 3, 2.0), (2, 3, 1, 2.0), (3, 1, 2, 2.0)]


def test_su2_satisfies_jacobi():
    assert jacobi_check(MetricLieAlgebra(brackets_from_entries(4, SU2))) == pytest.approx(0.0, abs=1e-15)


def test_jacobi_violation_is_detected():
    # [[e1, e2], e0] = -e1 has nothing to cancel it
    L = MetricLieAlgebra(brackets_from_entries(4, [(0, 1, 2, 1.0), (1, 2, 3, 1.0), (0, 3, 1, 1.0)]))
    assert jacobi_check(L) > 0.5


def test_frame_dimension_must_be_quaternionic():
    with pytest.raises(ValueError):
        MetricLieAlgebra(np.zeros((6, 6, 6)))


def test_koszul_on_su2():
    lc = levi_civita(MetricLieAlgebra(brackets_from_entries(4, SU2)))
    assert lc.gamma[1, 2, 3] == pytest.approx(1.0)
    assert lc.metric_residual() < 1e-15


@pytest.mark.parametrize("name", ["flat8", "hopf8", "solv8"])
def test_levi_civita_is_torsion_free(models, name):
    L = models[name].L
    np.testing.assert_allclose(torsion_of(L, levi_civita(L)), 0.0, atol=1e-14)


def test_ce_derivative_of_coframe_on_solv8(models):
    L = models["solv8"].L
    e = np.eye(8)
    np.testing.assert_allclose(ce_derivative(L, e[0]), 0.0, atol=1e-15)
    d1 = ce_derivative(L, e[1])
    # de^1 = -e^0 ^ e^1
    assert d1[0, 1] == pytest.approx(-1.0)
    assert d1[1, 0] == pytest.approx(1.0)


@pytest.mark.parametrize("name", ["hopf8", "solv8", "balanced_hkt8"])
def test_d_squared_vanishes(models, rng, name):
    L = models[name].L
    omega = rng.normal(size=8)
    np.testing.assert_allclose(ce_derivative(L, ce_derivative(L, omega)), 0.0, atol=1e-12)
    beta = rng.normal(size=(8, 8))
    beta = beta - beta.T
    np.testing.assert_allclose(ce_derivative(L, ce_derivative(L, beta)), 0.0, atol=1e-12)


def test_codifferential_of_coframe(models):
    L = models["solv8"].L
    lc = levi_civita(L)
    # nabla_{e_i} e_i = e_0 for i = 1..7
    assert float(codifferential(L, lc, np.eye(8)[0])) == pytest.approx(7.0)
    hopf = models["hopf8"].L
    assert float(codifferential(hopf, levi_civita(hopf), np.eye(8)[0])) == pytest.approx(0.0, abs=1e-15)


def test_flat_covariant_derivative_vanishes(models):
    L = models["flat8"].L
    S = np.arange(64.0).reshape(8, 8)
    np.testing.assert_allclose(covariant_derivative(L, levi_civita(L), S), 0.0)


def test_codifferential_rejects_functions(models):
    L = models["flat8"].L
    with pytest.raises(ValueError):
        codifferential(L, levi_civita(L), np.float64(1.0))
