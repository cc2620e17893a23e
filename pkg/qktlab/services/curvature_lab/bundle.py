# Author: RD7
# Purpose: Curvature of a torsion connection and of the Levi-Civita connection, Ricci forms and scalar traces
# Created: 2025-10-08

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from qktlab.services.errors import SplitFailsError
from qktlab.services.frame_tensor import norm_sq_3form
from qktlab.services.lie_model import (
    Connection,
    MetricLieAlgebra,
    ce_derivative,
    codifferential,
    covariant_derivative,
    levi_civita,
)
from qktlab.services.quaternionic import CYCLIC, QuaternionicTriple
from qktlab.services.torsion_connection import TorsionConnection, torsion_one_form

__all__ = [
    "ScalarTraces",
    "CurvatureBundle",
    "curvature",
    "ricci_forms",
    "ricci_form_commutator_residual",
    "curvature_split",
    "scalar_invariants",
    "dT_from_connection",
    "build_bundle",
]

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ScalarTraces:
    """Traces of one curvature tensor against the metric and the triple."""

    ric: np.ndarray         # Ric(X, Y) = sum_i R(e_i, X, Y, e_i)
    scal: float
    scal_alpha: np.ndarray  # Scal_a = -sum_i Ric(e_i, J_a e_i)
    table: np.ndarray       # table[a, b] = Scal_{a,b} = -sum_i rho_a(e_i, J_b e_i)

    @property
    def scal_q(self) -> float:
        return float(self.table[0, 0])


@dataclass(frozen=True)
class CurvatureBundle:
    """Everything the identity checks consume, computed once per model."""

    L: MetricLieAlgebra
    Q: QuaternionicTriple
    conn: TorsionConnection
    lc: Connection
    R: np.ndarray
    Rg: np.ndarray
    rho: np.ndarray
    rho_g: np.ndarray
    traces: ScalarTraces
    traces_g: ScalarTraces
    t: np.ndarray
    dt: np.ndarray
    delta_t: float
    dT: np.ndarray
    delta_T: np.ndarray
    nabla_T: np.ndarray
    nabla_t: np.ndarray

    @property
    def n(self) -> int:
        return self.L.n

    @property
    def T(self) -> np.ndarray:
        return self.conn.torsion

    @property
    def t_norm_sq(self) -> float:
        return float(self.t @ self.t)

    @property
    def T_norm_sq(self) -> float:
        return norm_sq_3form(self.T)

    @property
    def scal_q(self) -> float:
        return self.traces.scal_q

    @property
    def scal_gq(self) -> float:
        """Quaternionic *-scalar curvature, the trace of rho^g_1 against J_1."""
        return self.traces_g.scal_q

    @cached_property
    def rho_star(self) -> np.ndarray:
        """*-Ricci tensors rho*_a(X, Y) = rho^g_a(X, J_a Y)."""
        return np.stack([self.rho_g[a] @ J for a, J in enumerate(self.Q)])


# --------------------------------------------------------------------------- #
# Public API
# --------------------------------------------------------------------------- #
def curvature(L: MetricLieAlgebra, conn: Connection) -> np.ndarray:
    """
    R[i, j, k, l] = g(R(e_i, e_j) e_k, e_l) with R = [nabla, nabla] - nabla_[,].
    """
    G = conn.gamma
    c = L.brackets
    return (
        np.einsum("jkm,iml->ijkl", G, G)
        - np.einsum("ikm,jml->ijkl", G, G)
        - np.einsum("ijm,mkl->ijkl", c, G)
    )


def ricci_forms(R: np.ndarray, Q: QuaternionicTriple) -> np.ndarray:
    """rho_a(X, Y) = 1/2 sum_i R(X, Y, e_i, J_a e_i), stacked as (3, dim, dim)."""
    return np.stack([0.5 * np.einsum("xyik,ki->xy", R, J) for J in Q])


def ricci_form_commutator_residual(R: np.ndarray, Q: QuaternionicTriple, rho: np.ndarray) -> float:
    """Max entry of n [R(X,Y), J_a] - rho_c(X,Y) J_b + rho_b(X,Y) J_c over all X, Y and a."""
    n = Q.dim // 4
    M = _endomorphisms(R)
    worst = 0.0
    for a, b, c in CYCLIC:
        J = Q[a]
        lhs = n * (M @ J - J @ M)
        rhs = np.einsum("xy,lk->xylk", rho[c], Q[b]) - np.einsum("xy,lk->xylk", rho[b], Q[c])
        worst = max(worst, float(np.max(np.abs(lhs - rhs))))
    return worst


def curvature_split(R: np.ndarray, Q: QuaternionicTriple, tol: float = 1e-10) -> tuple[np.ndarray, np.ndarray]:
    """
    R = R' + 1/(2n) sum_a rho_a J_a with R' commuting with every J_a.

    Returns (R', sp(1) part) as rank-4 tensors in the layout of R.
    """
    n = Q.dim // 4
    rho = ricci_forms(R, Q)
    # sp1[x, y, k, l] = 1/(2n) sum_a rho_a(x, y) J_a[l, k]
    sp1 = np.einsum("axy,alk->xykl", rho, np.stack(list(Q))) / (2 * n)
    r_prime = R - sp1

    M = _endomorphisms(r_prime)
    residual = max(float(np.max(np.abs(M @ J - J @ M))) for J in Q)
    logger.debug("curvature_split: commutator residual %.3e", residual)
    if residual > tol:
        raise SplitFailsError(f"curvature does not split along sp(n) + sp(1), residual {residual:.3e}", residual)
    return r_prime, sp1


def scalar_invariants(R: np.ndarray, Q: QuaternionicTriple, rho: np.ndarray | None = None) -> ScalarTraces:
    if rho is None:
        rho = ricci_forms(R, Q)
    ric = np.einsum("ixyi->xy", R)
    scal = float(np.trace(ric))
    scal_alpha = np.array([-np.einsum("ik,ki->", ric, J) for J in Q])
    table = np.array([[-np.einsum("ik,ki->", rho[a], J) for J in Q] for a in range(3)])
    return ScalarTraces(ric, scal, scal_alpha, table)


def dT_from_connection(L: MetricLieAlgebra, conn: TorsionConnection) -> np.ndarray:
    """
    dT(X,Y,Z,U) = cyc_XYZ{(nabla_X T)(Y,Z,U) + g(T(X,Y),T(Z,U))} - (nabla_U T)(X,Y,Z)
                  + cyc_XYZ{g(T(X,Y),T(Z,U))}
    """
    T = conn.torsion
    nabla_T = covariant_derivative(L, conn.connection, T)
    quad = np.einsum("xym,zum->xyzu", T, T)
    return _cyclic_xyz(nabla_T) + 2.0 * _cyclic_xyz(quad) - np.einsum("uxyz->xyzu", nabla_T)


def build_bundle(L: MetricLieAlgebra, Q: QuaternionicTriple, conn: TorsionConnection,
                 tol: float = 1e-9) -> CurvatureBundle:
    lc = levi_civita(L)
    nabla = conn.connection

    R = curvature(L, nabla)
    Rg = curvature(L, lc)
    rho = ricci_forms(R, Q)
    rho_g = ricci_forms(Rg, Q)

    T = conn.torsion
    t = torsion_one_form(Q, T, tol)

    bundle = CurvatureBundle(
        L=L,
        Q=Q,
        conn=conn,
        lc=lc,
        R=R,
        Rg=Rg,
        rho=rho,
        rho_g=rho_g,
        traces=scalar_invariants(R, Q, rho),
        traces_g=scalar_invariants(Rg, Q, rho_g),
        t=t,
        dt=ce_derivative(L, t),
        delta_t=float(codifferential(L, lc, t)),
        dT=ce_derivative(L, T),
        delta_T=codifferential(L, lc, T),
        nabla_T=covariant_derivative(L, nabla, T),
        nabla_t=covariant_derivative(L, nabla, t),
    )
    logger.debug(
        "bundle: Scal=%.6g Scal^g=%.6g Scal_Q=%.6g Scal^g_Q=%.6g |t|^2=%.6g |T|^2=%.6g",
        bundle.traces.scal, bundle.traces_g.scal, bundle.scal_q, bundle.scal_gq,
        bundle.t_norm_sq, bundle.T_norm_sq,
    )
    return bundle


# --------------------------------------------------------------------------- #
# Internal helpers
# --------------------------------------------------------------------------- #
def _endomorphisms(R: np.ndarray) -> np.ndarray:
    """M[x, y] is the matrix of R(e_x, e_y): M[x, y][l, k] = R[x, y, k, l]."""
    return np.transpose(R, (0, 1, 3, 2))


def _cyclic_xyz(S: np.ndarray) -> np.ndarray:
    return S + np.einsum("yzxu->xyzu", S) + np.einsum("zxyu->xyzu", S)
