# Author: RD7
# Purpose: Bismut, HKT and QKT connections as linear feasibility problems
# Created: 2025-10-07

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.linalg import lstsq, null_space

from qktlab.services.errors import (
    AlphaDependentError,
    InfeasibleError,
    NonUniqueTorsionError,
    NotHKTError,
    NotQuaternionicError,
)
from qktlab.services.frame_tensor import (
    check_complex_structure,
    three_form_basis,
    three_form_from_params,
    type_operator,
)
from qktlab.services.lie_model import Connection, MetricLieAlgebra, levi_civita
from qktlab.services.quaternionic import CYCLIC, QuaternionicTriple

__all__ = [
    "TorsionConnection",
    "TypeCheck",
    "bismut",
    "hkt_detect",
    "qkt_find",
    "torsion_one_form",
    "connection_one_forms",
    "torsion_type_check",
    "nabla_endomorphism",
    "quaternionic_residual",
]

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TorsionConnection:
    """
    nabla = nabla^g + 1/2 T with totally skew torsion.

    omegas has shape (3, dim): omegas[a][x] = omega_{a+1}(e_x). None for a
    per-J Bismut connection.
    """

    gamma: np.ndarray
    torsion: np.ndarray
    omegas: np.ndarray | None = None
    residual: float = 0.0
    nullity: int = 0

    @property
    def connection(self) -> Connection:
        return Connection(self.gamma)


@dataclass(frozen=True)
class TypeCheck:
    residuals: tuple[float, float, float]
    tol: float

    @property
    def passed(self) -> bool:
        return max(self.residuals) < self.tol


# --------------------------------------------------------------------------- #
# Public API
# --------------------------------------------------------------------------- #
def nabla_endomorphism(gamma: np.ndarray, J: np.ndarray) -> np.ndarray:
    """(nabla_{e_x} J) as matrices: D_x J - J D_x."""
    D = np.transpose(gamma, (0, 2, 1))
    return np.einsum("xij,jk->xik", D, J) - np.einsum("ij,xjk->xik", J, D)


def bismut(L: MetricLieAlgebra, J: np.ndarray, tol: float = 1e-9) -> TorsionConnection:
    """
    Solve (nabla^g + 1/2 T) J = 0 for a 3-form T.

    Raises InfeasibleError when no skew-torsion connection preserves (g, J).
    A positive nullity is logged and the minimum-norm torsion returned.
    """
    check_complex_structure(J)
    lc = levi_civita(L)
    dim = L.dim
    _, basis = three_form_basis(dim)
    base = nabla_endomorphism(lc.gamma, J).ravel()

    def residual(params: np.ndarray) -> np.ndarray:
        T = three_form_from_params(params, dim)
        return base + nabla_endomorphism(0.5 * T, J).ravel()

    params, res, A = _solve_affine(residual, len(basis))
    if res > tol:
        raise InfeasibleError(f"no skew-torsion connection preserves J, residual {res:.3e}", res)

    nullity = null_space(A).shape[1]
    if nullity:
        logger.warning("Bismut system has a %d-dimensional solution space; minimum-norm torsion used", nullity)

    T = three_form_from_params(params, dim)
    logger.debug("bismut: residual=%.3e nullity=%d", res, nullity)
    return TorsionConnection(lc.gamma + 0.5 * T, T, None, res, nullity)


def hkt_detect(L: MetricLieAlgebra, Q: QuaternionicTriple, tol: float = 1e-9) -> TorsionConnection:
    """Common Bismut connection of J_1, J_2, J_3, or NotHKTError."""
    solved = []
    for J in Q:
        try:
            solved.append(bismut(L, J, tol))
        except InfeasibleError as exc:
            raise NotHKTError(f"a complex structure admits no Bismut connection: {exc}", exc.residual) from exc

    discrepancy = max(
        float(np.max(np.abs(solved[a].torsion - solved[b].torsion)))
        for a, b in ((0, 1), (0, 2), (1, 2))
    )
    logger.debug("hkt_detect: max pairwise torsion discrepancy %.3e", discrepancy)
    if discrepancy > tol:
        raise NotHKTError(f"Bismut torsions differ by {discrepancy:.3e}", discrepancy)

    first = solved[0]
    return TorsionConnection(first.gamma, first.torsion, np.zeros((3, L.dim)), first.residual, first.nullity)


def qkt_find(L: MetricLieAlgebra, Q: QuaternionicTriple, tol: float = 1e-9) -> TorsionConnection:
    """
    Joint solve for a torsion T of type (1,2)+(2,1) w.r.t. each J_alpha and
    1-forms omega_alpha with nabla J_alpha = -omega_beta J_gamma + omega_gamma J_beta.
    """
    lc = levi_civita(L)
    dim = L.dim
    _, basis = three_form_basis(dim)
    n_t = len(basis)
    bases = [nabla_endomorphism(lc.gamma, J) for J in Q]

    def residual(params: np.ndarray) -> np.ndarray:
        T = three_form_from_params(params[:n_t], dim)
        omegas = params[n_t:].reshape(3, dim)
        rows = [
            _quaternionic_rows(bases[a] + nabla_endomorphism(0.5 * T, Q[a]), Q, omegas, a)
            for a in range(3)
        ]
        rows += [(T - type_operator(T, J)).ravel() for J in Q]
        return np.concatenate(rows)

    params, res, A = _solve_affine(residual, n_t + 3 * dim)
    if res > tol:
        raise InfeasibleError(f"model admits no QKT structure, residual {res:.3e}", res)

    kernel = null_space(A)
    torsion_nullity = int(np.linalg.matrix_rank(kernel[:n_t], tol=1e-10)) if kernel.size else 0
    if torsion_nullity:
        raise NonUniqueTorsionError(
            f"QKT torsion is not unique: {torsion_nullity}-dimensional solution space",
            torsion_nullity,
            res,
        )

    T = three_form_from_params(params[:n_t], dim)
    omegas = params[n_t:].reshape(3, dim)
    logger.debug("qkt_find: residual=%.3e kernel=%d", res, kernel.shape[1])
    return TorsionConnection(lc.gamma + 0.5 * T, T, omegas, res, kernel.shape[1])


def torsion_one_form(Q: QuaternionicTriple, T: np.ndarray, tol: float = 1e-9) -> np.ndarray:
    """t(X) = 1/2 sum_i T(J X, e_i, J e_i), required to agree for the three J's."""
    values = [0.5 * np.einsum("px,piq,qi->x", J, T, J) for J in Q]
    spread = max(float(np.max(np.abs(values[0] - v))) for v in values[1:])
    if spread > tol:
        raise AlphaDependentError(f"torsion 1-form depends on J_alpha, spread {spread:.3e}", spread)
    return values[0]


def connection_one_forms(L: MetricLieAlgebra, conn: TorsionConnection, Q: QuaternionicTriple,
                         tol: float = 1e-9) -> np.ndarray:
    """omega_gamma(X) = 1/(4n) sum_i g((nabla_X J_alpha) e_i, J_beta e_i)."""
    omegas = np.zeros((3, L.dim))
    for a, b, c in CYCLIC:
        nabla_j = nabla_endomorphism(conn.gamma, Q[a])
        omegas[c] = np.einsum("xki,ki->x", nabla_j, Q[b]) / L.dim

    res = quaternionic_residual(conn.gamma, Q, omegas)
    if res > tol:
        raise NotQuaternionicError(f"connection does not preserve the quaternionic bundle, residual {res:.3e}", res)
    return omegas


def quaternionic_residual(gamma: np.ndarray, Q: QuaternionicTriple, omegas: np.ndarray) -> float:
    """Max entry of nabla J_alpha + omega_beta J_gamma - omega_gamma J_beta."""
    return max(
        float(np.max(np.abs(_quaternionic_rows(nabla_endomorphism(gamma, Q[a]), Q, omegas, a))))
        for a in range(3)
    )


def torsion_type_check(T: np.ndarray, Q: QuaternionicTriple, tol: float = 1e-12) -> TypeCheck:
    residuals = tuple(float(np.max(np.abs(T - type_operator(T, J)))) for J in Q)
    return TypeCheck(residuals, tol)


# --------------------------------------------------------------------------- #
# Internal helpers
# --------------------------------------------------------------------------- #
def _quaternionic_rows(nabla_j: np.ndarray, Q: QuaternionicTriple, omegas: np.ndarray, a: int) -> np.ndarray:
    _, b, c = CYCLIC[a]
    rows = nabla_j + np.einsum("x,ij->xij", omegas[b], Q[c]) - np.einsum("x,ij->xij", omegas[c], Q[b])
    return rows.ravel()


def _solve_affine(residual: Callable[[np.ndarray], np.ndarray], n_params: int) -> tuple[np.ndarray, float, np.ndarray]:
    """
    Least-squares solve of residual(x) = 0 for an affine residual.

    Returns the minimum-norm solution, its max-abs residual and the linear part A.
    """
    zero = np.zeros(n_params)
    b0 = residual(zero)
    A = np.empty((b0.size, n_params))
    for p in range(n_params):
        unit = zero.copy()
        unit[p] = 1.0
        A[:, p] = residual(unit) - b0
    x, *_ = lstsq(A, -b0)
    res = float(np.max(np.abs(A @ x + b0))) if b0.size else 0.0
    return x, res, A
