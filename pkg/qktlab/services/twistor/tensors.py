# Author: RD7
# Purpose: Curvature and torsion forms pulled to the frame, and the tensors F_i and K of (Z, h_c, I_i)
# Created: 2025-10-12

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from qktlab.services.curvature_lab.bundle import CurvatureBundle
from qktlab.services.frame_tensor import type_operator
from qktlab.services.lie_model import covariant_derivative
from qktlab.services.twistor.point import TwistorPoint, TwistorVector, orthonormal_coords, require_positive_c

__all__ = [
    "CurvatureForms",
    "f_array",
    "k_array",
    "f_tensor",
    "k_tensor",
]


@dataclass(frozen=True)
class CurvatureForms:
    """
    Omega(xi, eta) = R(xi, eta) and Theta(xi, eta) = T(xi, eta, .) of the QKT
    connection, with their covariant derivatives.

    nabla_R[z, x, y, k, l] = (nabla_z R)(x, y, k, l), nabla_T[z, x, y, w] likewise.
    """

    R: np.ndarray
    T: np.ndarray
    nabla_R: np.ndarray
    nabla_T: np.ndarray

    @classmethod
    def from_bundle(cls, b: CurvatureBundle) -> CurvatureForms:
        nabla_R = covariant_derivative(b.L, b.conn.connection, b.R)
        return cls(b.R, b.T, nabla_R, b.nabla_T)

    @property
    def dim(self) -> int:
        return self.T.shape[0]

    def omega(self, xi: np.ndarray, eta: np.ndarray) -> np.ndarray:
        """Matrix of Omega(xi, eta): out[l, k] = R(xi, eta, e_k, e_l)."""
        return np.einsum("x,y,xykl->lk", xi, eta, self.R)

    def omega_m(self, pt: TwistorPoint, xi: np.ndarray, eta: np.ndarray) -> np.ndarray:
        """Orthogonal projection of Omega(xi, eta) onto m = span{I0, K0}."""
        om = self.omega(xi, eta)
        return sum(float(np.einsum("ij,ij->", A, om)) / self.dim * A for A in pt.m_basis)

    def theta(self, xi: np.ndarray, eta: np.ndarray) -> np.ndarray:
        return np.einsum("x,y,xyz->z", xi, eta, self.T)

    def pairing(self, B: np.ndarray) -> np.ndarray:
        """P[x, y] = (B, Omega(e_x, e_y)); for B = J this is 2 rho_J."""
        return np.einsum("lk,xykl->xy", B, self.R)

    def t1_residuals(self, pt: TwistorPoint) -> tuple[float, float]:
        """
        Torsion conditions at a twistor point: <Theta(xi, eta), zeta> skew in
        (eta, zeta), and of type (1,2)+(2,1) for J0.
        """
        T = self.T
        skew = float(np.max(np.abs(T + np.transpose(T, (0, 2, 1)))))
        typ = float(np.max(np.abs(T - type_operator(T, pt.J0))))
        return skew, typ


# --------------------------------------------------------------------------- #
# Public API
# --------------------------------------------------------------------------- #
def f_array(i: int, pt: TwistorPoint, c: float, forms: CurvatureForms) -> np.ndarray:
    """
    F_i(X, Y, Z) = h_c((D_X I_i) Y, Z) in the h_c-orthonormal basis.

    Slots 0, 1 are the normalised I0*, K0*; slots 2.. the horizontal frame.
    """
    if i not in (1, 2):
        raise ValueError(f"twistor almost complex structure index must be 1 or 2, got {i}")
    require_positive_c(c)
    d = pt.dim
    J0 = pt.J0
    c2 = c * c
    E = _vertical_basis(pt, c)

    P = np.stack([forms.pairing(A) for A in E])
    P_J0A = np.stack([forms.pairing(J0 @ A) for A in E])

    # F(A*, B xi, B eta)
    vhh = np.stack([
        0.5 * c2 * (J0.T @ P[v] + P[v] @ J0) + 2.0 * (E[v] @ J0).T
        for v in range(2)
    ])
    # F(B xi, A*, B eta); I_2 uses (A, J0 Omega) = -(J0 A, Omega)
    sign = 1.0 if i == 1 else -1.0
    hvh = np.stack([0.5 * c2 * (sign * P_J0A[v] + P[v] @ J0) for v in range(2)])

    T = forms.T
    hhh = -0.5 * (np.einsum("xpz,py->xyz", T, J0) + np.einsum("xyp,pz->xyz", T, J0))

    F = np.zeros((d + 2,) * 3)
    V, H = slice(0, 2), slice(2, d + 2)
    F[V, H, H] = vhh
    F[H, V, H] = np.transpose(hvh, (1, 0, 2))
    F[H, H, V] = -np.transpose(hvh, (1, 2, 0))
    F[H, H, H] = hhh
    return F


def k_array(pt: TwistorPoint, c: float, forms: CurvatureForms) -> np.ndarray:
    """
    Riemann tensor K(X, Y, Z, W) = h_c(K(X, Y) Z, W) of h_c in the orthonormal basis.

    Blocks not listed follow from skew-symmetry in each pair, pair symmetry
    and the first Bianchi identity (the V V h h block).
    """
    require_positive_c(c)
    d = pt.dim
    c2 = c * c
    E = _vertical_basis(pt, c)
    R, T = forms.R, forms.T

    # fiber: -c^2 ([A, B], [C, D])
    comm = np.array([[A @ B - B @ A for B in E] for A in E])
    vvvv = -c2 * np.einsum("vwij,pqij->vwpq", comm, comm)

    P = np.stack([forms.pairing(A) for A in E])
    P_comm = np.einsum("vwlk,xykl->vwxy", comm, R)
    # K(A*, B xi, C*, B eta)
    vhvh = (0.5 * c2 * np.einsum("vwxy->vxwy", P_comm)
            - 0.25 * c2 * c2 * np.einsum("wxi,vyi->vxwy", P, P))
    vvhh = np.einsum("vxwy->vwxy", vhvh) - np.einsum("wxvy->vwxy", vhvh)

    # K(B xi, B eta, B zeta, A*); [B eta, B zeta] has horizontal part -B(T(eta, zeta))
    D = np.einsum("vlk,zxykl->xyzv", E, forms.nabla_R)
    W = np.einsum("yzm,vmx->xyzv", T, P) + np.einsum("zxm,vmy->xyzv", T, P)
    hhhv = 0.5 * c2 * D + 0.25 * c2 * W

    # (Omega_m(x, y), Omega_m(z, w)) = c^2 sum_v P_v[x, y] P_v[z, w] for the unit vertical basis
    om = c2 * np.einsum("vxy,vzw->xyzw", P, P)
    TT = np.einsum("abm,cdm->abcd", T, T)
    hhhh = (
        R
        - 0.25 * c2 * np.einsum("xwyz->xyzw", om)
        + 0.25 * c2 * np.einsum("xzyw->xyzw", om)
        + 0.5 * c2 * om
        - 0.25 * np.einsum("xwyz->xyzw", TT)
        + 0.25 * np.einsum("xzyw->xyzw", TT)
        - 0.5 * TT
        - 0.5 * forms.nabla_T
        + 0.5 * np.einsum("yxzw->xyzw", forms.nabla_T)
    )

    K = np.zeros((d + 2,) * 4)
    V, H = slice(0, 2), slice(2, d + 2)
    K[V, V, V, V] = vvvv
    K[V, H, V, H] = vhvh
    K[H, V, V, H] = -np.einsum("vxwy->xvwy", vhvh)
    K[V, H, H, V] = -np.einsum("vxwy->vxyw", vhvh)
    K[H, V, H, V] = np.einsum("vxwy->xvyw", vhvh)
    K[V, V, H, H] = vvhh
    K[H, H, V, V] = np.einsum("vwxy->xyvw", vvhh)
    K[H, H, H, V] = hhhv
    K[H, H, V, H] = -np.einsum("xyzv->xyvz", hhhv)
    K[V, H, H, H] = -np.einsum("xyzv->vzxy", hhhv)
    K[H, V, H, H] = np.einsum("xyzv->zvxy", hhhv)
    K[H, H, H, H] = hhhh
    return K


def f_tensor(i: int, pt: TwistorPoint, c: float, forms: CurvatureForms,
             X: TwistorVector, Y: TwistorVector, Z: TwistorVector) -> float:
    F = f_array(i, pt, c, forms)
    x, y, z = (orthonormal_coords(pt, c, v) for v in (X, Y, Z))
    return float(np.einsum("abc,a,b,c->", F, x, y, z))


def k_tensor(pt: TwistorPoint, c: float, forms: CurvatureForms,
             X: TwistorVector, Y: TwistorVector, Z: TwistorVector, W: TwistorVector) -> float:
    K = k_array(pt, c, forms)
    x, y, z, w = (orthonormal_coords(pt, c, v) for v in (X, Y, Z, W))
    return float(np.einsum("abcd,a,b,c,d->", K, x, y, z, w))


# --------------------------------------------------------------------------- #
# Internal helpers
# --------------------------------------------------------------------------- #
def _vertical_basis(pt: TwistorPoint, c: float) -> np.ndarray:
    s = c * np.sqrt(pt.dim)
    return np.stack([pt.I0 / s, pt.K0 / s])
