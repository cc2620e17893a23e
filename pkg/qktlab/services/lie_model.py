# Author: RD7
# Purpose: Metric Lie algebras as left-invariant models (Koszul, Chevalley-Eilenberg, codifferential)
# Created: 2025-10-05

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

__all__ = [
    "MetricLieAlgebra",
    "Connection",
    "jacobi_check",
    "levi_civita",
    "ce_derivative",
    "covariant_derivative",
    "codifferential",
    "torsion_of",
]

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class MetricLieAlgebra:
    """
    Structure constants on an orthonormal frame.

    brackets[i, j, k] is the e_k component of [e_i, e_j].
    """

    brackets: np.ndarray

    def __post_init__(self):
        c = np.array(self.brackets, dtype=np.float64)
        if c.ndim != 3 or len(set(c.shape)) != 1:
            raise ValueError(f"brackets must be a cube array, got shape {c.shape}")
        if c.shape[0] % 4:
            raise ValueError(f"frame dimension must be divisible by 4, got {c.shape[0]}")
        c.setflags(write=False)
        object.__setattr__(self, "brackets", c)

    @property
    def dim(self) -> int:
        return self.brackets.shape[0]

    @property
    def n(self) -> int:
        """Quaternionic dimension, dim = 4n."""
        return self.dim // 4

    def bracket(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        return np.einsum("i,j,ijk->k", x, y, self.brackets)


@dataclass(frozen=True)
class Connection:
    """gamma[i, j, k] = g(nabla_{e_i} e_j, e_k)."""

    gamma: np.ndarray

    @property
    def matrices(self) -> np.ndarray:
        """D[x] with nabla_{e_x} e_j = sum_k D[x][k, j] e_k."""
        return np.transpose(self.gamma, (0, 2, 1))

    def metric_residual(self) -> float:
        return float(np.max(np.abs(self.gamma + np.transpose(self.gamma, (0, 2, 1)))))


# --------------------------------------------------------------------------- #
# Public API
# --------------------------------------------------------------------------- #
def jacobi_check(L: MetricLieAlgebra) -> float:
    """Max component of the cyclic sum [[e_i,e_j],e_k] + [[e_j,e_k],e_i] + [[e_k,e_i],e_j]."""
    c = L.brackets
    jac = (
        np.einsum("ijl,lkm->ijkm", c, c)
        + np.einsum("jkl,lim->ijkm", c, c)
        + np.einsum("kil,ljm->ijkm", c, c)
    )
    return float(np.max(np.abs(jac))) if jac.size else 0.0


def levi_civita(L: MetricLieAlgebra) -> Connection:
    """Koszul formula on an orthonormal left-invariant frame."""
    c = L.brackets
    gamma = 0.5 * (c - np.einsum("jki->ijk", c) + np.einsum("kij->ijk", c))
    return Connection(gamma)


def torsion_of(L: MetricLieAlgebra, conn: Connection) -> np.ndarray:
    """T[i,j,k] = g(nabla_i e_j - nabla_j e_i - [e_i,e_j], e_k)."""
    g = conn.gamma
    return g - np.transpose(g, (1, 0, 2)) - L.brackets


def ce_derivative(L: MetricLieAlgebra, omega: np.ndarray) -> np.ndarray:
    """
    Chevalley-Eilenberg differential of an invariant p-form.

    d omega(X_0..X_p) = sum_{i<j} (-1)^(i+j) omega([X_i,X_j], X_0, .., ^i, .., ^j, .., X_p)
    """
    omega = np.asarray(omega, dtype=np.float64)
    dim = L.dim
    p = omega.ndim
    if p == 0:
        return np.zeros(dim)

    # axes of tmp: X_i, X_j, then the remaining arguments in order
    tmp = np.tensordot(L.brackets, omega, axes=([2], [0]))
    out = np.zeros((dim,) * (p + 1))
    for i in range(p + 1):
        for j in range(i + 1, p + 1):
            order = [i, j] + [k for k in range(p + 1) if k not in (i, j)]
            out += (-1) ** (i + j) * np.transpose(tmp, np.argsort(order))
    return out


def covariant_derivative(L: MetricLieAlgebra, conn: Connection, S: np.ndarray) -> np.ndarray:
    """
    (nabla S)[i, j_1..j_r] = -sum_s sum_m gamma[i, j_s, m] S[.. m in slot s ..].

    Invariant tensors have no directional-derivative term.
    """
    S = np.asarray(S, dtype=np.float64)
    r = S.ndim
    dim = conn.gamma.shape[0]
    if r == 0:
        return np.zeros(dim)

    out = np.zeros((dim,) * (r + 1))
    for s in range(r):
        tmp = np.tensordot(conn.gamma, S, axes=([2], [s]))
        order = [0, 1 + s] + [1 + k for k in range(r) if k != s]
        out -= np.transpose(tmp, np.argsort(order))
    return out


def codifferential(L: MetricLieAlgebra, lc: Connection, S: np.ndarray) -> np.ndarray:
    """delta S = -sum_i (nabla^g_{e_i} S)(e_i, ...)."""
    S = np.asarray(S, dtype=np.float64)
    if S.ndim < 1:
        raise ValueError("codifferential needs a form of degree >= 1")
    return -np.trace(covariant_derivative(L, lc, S), axis1=0, axis2=1)
