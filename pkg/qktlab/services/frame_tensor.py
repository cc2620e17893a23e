# Author: RD7
# Purpose: Dense frame tensors, J-actions on their slots and type decompositions
# Created: 2025-10-05

from __future__ import annotations

from functools import lru_cache
from itertools import combinations, permutations
from typing import Sequence

import numpy as np
from scipy.linalg import null_space

from qktlab.services.errors import NotComplexStructureError

__all__ = [
    "endo_inner",
    "pull_back",
    "j_pullback_3form",
    "type_operator",
    "three_form_type_project",
    "three_form_basis",
    "three_form_from_params",
    "two_form_inner",
    "norm_sq_3form",
    "antisymmetry_residual",
    "torsion_pair_trace",
    "type_20_part",
    "check_complex_structure",
]


# --------------------------------------------------------------------------- #
# Public API
# --------------------------------------------------------------------------- #
def endo_inner(a: np.ndarray, b: np.ndarray) -> float:
    """Return trace(A B^t) for two endomorphisms of the frame."""
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.shape != b.shape or a.ndim != 2:
        raise ValueError(f"endo_inner needs equal square shapes, got {a.shape} and {b.shape}")
    return float(np.einsum("ij,ij->", a, b))


def pull_back(tensor: np.ndarray, J: np.ndarray, slots: Sequence[int]) -> np.ndarray:
    """
    Apply J to the listed argument slots of a frame tensor.

    With J e_j = sum_k J[k, j] e_k the result R satisfies
    R[..., x, ...] = S(..., J e_x, ...) in every slot listed.
    """
    out = np.asarray(tensor, dtype=np.float64)
    for s in slots:
        out = np.moveaxis(np.tensordot(J, out, axes=([0], [s])), 0, s)
    return out


def check_complex_structure(J: np.ndarray, tol: float = 1e-12) -> None:
    """Raise unless J^2 = -id and J is orthogonal."""
    J = np.asarray(J, dtype=np.float64)
    eye = np.eye(J.shape[0])
    square = float(np.max(np.abs(J @ J + eye)))
    ortho = float(np.max(np.abs(J.T @ J - eye)))
    if square > tol:
        raise NotComplexStructureError(f"J^2 + id has residual {square:.3e}", square)
    if ortho > tol:
        raise NotComplexStructureError(f"J is not orthogonal, residual {ortho:.3e}", ortho)


def j_pullback_3form(T: np.ndarray, J: np.ndarray, pattern: Sequence[bool]) -> np.ndarray:
    """
    Return T with J applied to the flagged slots, e.g. pattern (True, True, False)
    gives the tensor (X, Y, Z) -> T(JX, JY, Z).
    """
    J = np.asarray(J, dtype=np.float64)
    if float(np.max(np.abs(J @ J + np.eye(J.shape[0])))) > 1e-12:
        raise NotComplexStructureError("j_pullback_3form needs J^2 = -id")
    if len(pattern) != 3:
        raise ValueError("pattern must flag exactly three slots")
    return pull_back(T, J, [s for s, flag in enumerate(pattern) if flag])


def type_operator(T: np.ndarray, J: np.ndarray) -> np.ndarray:
    """S_J(T)(X,Y,Z) = T(JX,JY,Z) + T(JX,Y,JZ) + T(X,JY,JZ)."""
    return pull_back(T, J, (0, 1)) + pull_back(T, J, (0, 2)) + pull_back(T, J, (1, 2))


@lru_cache(maxsize=8)
def three_form_basis(dim: int) -> tuple[tuple[tuple[int, int, int], ...], np.ndarray]:
    """
    Basis e^i ^ e^j ^ e^k (i < j < k) of the 3-forms as dense tensors.

    The basis tensors are mutually orthogonal with equal norm, so orthogonal
    projections computed on the coefficients are projections of the tensors.
    """
    combos = tuple(combinations(range(dim), 3))
    basis = np.zeros((len(combos), dim, dim, dim))
    for p, triple in enumerate(combos):
        for perm in permutations(range(3)):
            sign = _permutation_sign(perm)
            idx = tuple(triple[q] for q in perm)
            basis[p][idx] = sign
    basis.setflags(write=False)
    return combos, basis


def three_form_from_params(params: np.ndarray, dim: int) -> np.ndarray:
    _, basis = three_form_basis(dim)
    return np.einsum("p,pijk->ijk", np.asarray(params, dtype=np.float64), basis)


def three_form_type_project(T: np.ndarray, Js: Sequence[np.ndarray]) -> np.ndarray:
    """Orthogonal projection of T onto {T : T = S_J(T) for every J in Js}."""
    T = np.asarray(T, dtype=np.float64)
    dim = T.shape[0]
    kernel = _type_kernel(tuple(np.asarray(J, dtype=np.float64).tobytes() for J in Js), dim)
    if kernel.shape[1] == 0:
        return np.zeros_like(T)
    params = _params_from_three_form(T)
    return three_form_from_params(kernel @ (kernel.T @ params), dim)


def two_form_inner(a: np.ndarray, b: np.ndarray) -> float:
    """(a, b) = 1/2 sum_{i,j} a(e_i,e_j) b(e_i,e_j)."""
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.shape != b.shape or a.ndim != 2:
        raise ValueError(f"two_form_inner needs equal 2-form shapes, got {a.shape} and {b.shape}")
    return 0.5 * float(np.einsum("ij,ij->", a, b))


def norm_sq_3form(T: np.ndarray) -> float:
    """Full ordered-index sum of squares."""
    return float(np.einsum("ijk,ijk->", T, T))


def torsion_pair_trace(T: np.ndarray, Ja: np.ndarray, Jb: np.ndarray) -> float:
    """sum_{i,j} g(T(e_i, e_j), T(Ja e_i, Jb e_j)); a third of |T|^2 for Ja = Jb when T has type (1,2)+(2,1)."""
    return float(np.einsum("ijm,pi,qj,pqm->", T, Ja, Jb, T))


def antisymmetry_residual(S: np.ndarray) -> float:
    """Max deviation from full antisymmetry over adjacent transpositions."""
    S = np.asarray(S, dtype=np.float64)
    worst = 0.0
    for s in range(S.ndim - 1):
        worst = max(worst, float(np.max(np.abs(S + np.swapaxes(S, s, s + 1)))))
    return worst


def type_20_part(beta: np.ndarray, J: np.ndarray) -> np.ndarray:
    """The (2,0)+(0,2) part 1/2 (beta(X,Y) - beta(JX,JY)) of a bilinear form."""
    return 0.5 * (beta - J.T @ beta @ J)


# --------------------------------------------------------------------------- #
# Internal helpers
# --------------------------------------------------------------------------- #
def _permutation_sign(perm: Sequence[int]) -> int:
    sign = 1
    p = list(perm)
    for i in range(len(p)):
        for j in range(i + 1, len(p)):
            if p[i] > p[j]:
                sign = -sign
    return sign


def _params_from_three_form(T: np.ndarray) -> np.ndarray:
    combos, _ = three_form_basis(T.shape[0])
    return np.array([T[i, j, k] for i, j, k in combos])


def _type_constraint_matrix(Js: Sequence[np.ndarray], dim: int) -> np.ndarray:
    """
    Rows of the linear system T = S_J(T) for every J in Js, acting on the
    coefficients of T in three_form_basis.
    """
    _, basis = three_form_basis(dim)
    blocks = []
    for J in Js:
        cols = [(b - type_operator(b, J)).ravel() for b in basis]
        blocks.append(np.stack(cols, axis=1))
    return np.vstack(blocks)


@lru_cache(maxsize=32)
def _type_kernel(js_bytes: tuple[bytes, ...], dim: int) -> np.ndarray:
    Js = [np.frombuffer(b, dtype=np.float64).reshape(dim, dim) for b in js_bytes]
    return null_space(_type_constraint_matrix(Js, dim))
