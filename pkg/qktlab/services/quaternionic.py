# Author: RD7
# Purpose: Quaternionic triples on a frame, Kaehler forms and Sp(1) rotations of the admissible basis
# Created: 2025-10-06

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

import numpy as np
from scipy.spatial.transform import Rotation

from qktlab.services.errors import NotComplexStructureError

__all__ = [
    "CYCLIC",
    "QuaternionicTriple",
    "TripleReport",
    "standard_triple",
    "verify_triple",
    "kaehler_form",
    "sp1_rotate",
]

# (alpha, beta, gamma) cyclic permutations of (1, 2, 3), zero-based
CYCLIC: tuple[tuple[int, int, int], ...] = ((0, 1, 2), (1, 2, 0), (2, 0, 1))


@dataclass(frozen=True)
class QuaternionicTriple:
    J1: np.ndarray
    J2: np.ndarray
    J3: np.ndarray

    def __post_init__(self):
        for name in ("J1", "J2", "J3"):
            m = np.array(getattr(self, name), dtype=np.float64)
            m.setflags(write=False)
            object.__setattr__(self, name, m)

    def __iter__(self) -> Iterator[np.ndarray]:
        return iter((self.J1, self.J2, self.J3))

    def __getitem__(self, alpha: int) -> np.ndarray:
        return (self.J1, self.J2, self.J3)[alpha]

    @property
    def dim(self) -> int:
        return self.J1.shape[0]

    def combination(self, a: np.ndarray) -> np.ndarray:
        """a_1 J_1 + a_2 J_2 + a_3 J_3."""
        return a[0] * self.J1 + a[1] * self.J2 + a[2] * self.J3

    @classmethod
    def from_pair(cls, J1: np.ndarray, J2: np.ndarray) -> QuaternionicTriple:
        J1 = np.asarray(J1, dtype=np.float64)
        J2 = np.asarray(J2, dtype=np.float64)
        return cls(J1, J2, J1 @ J2)


@dataclass(frozen=True)
class TripleReport:
    square: float
    product: float
    anticommute: float
    orthogonality: float
    tol: float

    @property
    def worst(self) -> float:
        return max(self.square, self.product, self.anticommute, self.orthogonality)

    @property
    def passed(self) -> bool:
        return self.worst < self.tol


# --------------------------------------------------------------------------- #
# Public API
# --------------------------------------------------------------------------- #
def standard_triple(n: int) -> QuaternionicTriple:
    """Left multiplication by i, j, k on each quaternion block span{e_4b..e_4b+3}."""
    i_block = np.zeros((4, 4))
    j_block = np.zeros((4, 4))
    # J e_col = sum_row J[row, col] e_row
    i_block[1, 0], i_block[0, 1], i_block[3, 2], i_block[2, 3] = 1, -1, 1, -1
    j_block[2, 0], j_block[3, 1], j_block[0, 2], j_block[1, 3] = 1, -1, -1, 1
    eye = np.eye(n)
    return QuaternionicTriple.from_pair(np.kron(eye, i_block), np.kron(eye, j_block))


def verify_triple(Q: QuaternionicTriple, tol: float = 1e-12) -> TripleReport:
    eye = np.eye(Q.dim)
    square = max(float(np.max(np.abs(J @ J + eye))) for J in Q)
    product = float(np.max(np.abs(Q.J1 @ Q.J2 - Q.J3)))
    anticommute = float(np.max(np.abs(Q.J1 @ Q.J2 + Q.J2 @ Q.J1)))
    orthogonality = max(float(np.max(np.abs(J.T @ J - eye))) for J in Q)
    return TripleReport(square, product, anticommute, orthogonality, tol)


def kaehler_form(J: np.ndarray, metric: np.ndarray | None = None, tol: float = 1e-12) -> np.ndarray:
    """Phi(X, Y) = g(X, JY) as a frame 2-form."""
    J = np.asarray(J, dtype=np.float64)
    g = np.eye(J.shape[0]) if metric is None else np.asarray(metric, dtype=np.float64)
    residual = float(np.max(np.abs(J.T @ g @ J - g)))
    if residual > tol:
        raise NotComplexStructureError(f"J is not g-orthogonal, residual {residual:.3e}", residual)
    return g @ J


def sp1_rotate(Q: QuaternionicTriple, a: np.ndarray, tol: float = 1e-12) -> QuaternionicTriple:
    """
    Admissible triple (J'_1, J'_2, J'_3) with J'_2 = a . J.

    Uses the rotation about e_2 x a taking (0, 1, 0) to a; the antipode
    a = (0, -1, 0) uses the fixed flip J'_1 = J_1, J'_2 = -J_2, J'_3 = -J_3.
    """
    a = np.asarray(a, dtype=np.float64)
    if a.shape != (3,) or abs(float(np.linalg.norm(a)) - 1.0) > tol:
        raise ValueError(f"twistor direction must be a unit 3-vector, got {a}")

    R = _rotation_to(a)
    mats = np.stack(list(Q))
    # J'_alpha = sum_beta R[beta, alpha] J_beta
    rotated = np.einsum("ba,bij->aij", R, mats)
    return QuaternionicTriple(rotated[0], rotated[1], rotated[2])


# --------------------------------------------------------------------------- #
# Internal helpers
# --------------------------------------------------------------------------- #
_E2 = np.array([0.0, 1.0, 0.0])


def _rotation_to(a: np.ndarray) -> np.ndarray:
    axis = np.cross(_E2, a)
    sin = float(np.linalg.norm(axis))
    cos = float(np.dot(_E2, a))
    if sin < 1e-15:
        return np.eye(3) if cos > 0 else np.diag([1.0, -1.0, -1.0])
    angle = np.arctan2(sin, cos)
    return Rotation.from_rotvec(axis / sin * angle).as_matrix()
