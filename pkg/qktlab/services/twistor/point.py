# Author: RD7
# Purpose: Twistor points, tangent vectors of the twistor space, I_1/I_2 and the metrics h_c
# Created: 2025-10-12

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from qktlab.services.frame_tensor import endo_inner
from qktlab.services.quaternionic import QuaternionicTriple, sp1_rotate, verify_triple

__all__ = [
    "TwistorPoint",
    "TwistorVector",
    "make_point",
    "i_action",
    "h_c",
    "point_grid",
    "orthonormal_coords",
    "complex_structure_matrix",
    "require_positive_c",
]

AXES = np.vstack([np.eye(3), -np.eye(3)])


@dataclass(frozen=True)
class TwistorPoint:
    """
    A compatible complex structure J0 = a . J with the adapted basis (I0, J0, K0).

    m = span{I0, K0} is the vertical tangent space over this point.
    """

    a: np.ndarray
    adapted: QuaternionicTriple

    @property
    def J0(self) -> np.ndarray:
        return self.adapted.J2

    @property
    def I0(self) -> np.ndarray:
        return self.adapted.J1

    @property
    def K0(self) -> np.ndarray:
        return self.adapted.J3

    @property
    def m_basis(self) -> tuple[np.ndarray, np.ndarray]:
        return self.I0, self.K0

    @property
    def dim(self) -> int:
        return self.adapted.dim


@dataclass(frozen=True)
class TwistorVector:
    """vertical holds the coefficients of A = a I0 + b K0, horizontal the frame vector xi."""

    vertical: np.ndarray
    horizontal: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "vertical", np.asarray(self.vertical, dtype=np.float64))
        object.__setattr__(self, "horizontal", np.asarray(self.horizontal, dtype=np.float64))

    @classmethod
    def fiber(cls, a: float, b: float, dim: int) -> TwistorVector:
        return cls(np.array([a, b]), np.zeros(dim))

    @classmethod
    def base(cls, xi: np.ndarray) -> TwistorVector:
        xi = np.asarray(xi, dtype=np.float64)
        return cls(np.zeros(2), xi)

    def endomorphism(self, pt: TwistorPoint) -> np.ndarray:
        return self.vertical[0] * pt.I0 + self.vertical[1] * pt.K0


# --------------------------------------------------------------------------- #
# Public API
# --------------------------------------------------------------------------- #
def make_point(Q: QuaternionicTriple, a: np.ndarray, gauge: float = 0.0, tol: float = 1e-12) -> TwistorPoint:
    """
    Twistor point over the direction a.

    gauge rotates (I0, K0) about J0 by that angle; every verdict of the
    twistor checks is independent of it.
    """
    adapted = sp1_rotate(Q, a, tol=max(tol, 1e-10))
    if gauge:
        cos, sin = np.cos(gauge), np.sin(gauge)
        I0 = cos * adapted.J1 + sin * adapted.J3
        K0 = -sin * adapted.J1 + cos * adapted.J3
        adapted = QuaternionicTriple(I0, adapted.J2, K0)

    report = verify_triple(adapted, tol=1e-10)
    if not report.passed:
        raise ValueError(f"adapted basis violates the quaternion relations, residual {report.worst:.3e}")
    return TwistorPoint(np.asarray(a, dtype=np.float64), adapted)


def i_action(i: int, pt: TwistorPoint, v: TwistorVector) -> TwistorVector:
    """
    I_1 A* = (J0 A)*, I_2 A* = -(J0 A)*, I_i B(xi) = B(J0 xi).

    With J0 I0 = -K0 and J0 K0 = I0, I_1 sends (a, b) to (b, -a).
    """
    a, b = v.vertical
    if i == 1:
        vertical = np.array([b, -a])
    elif i == 2:
        vertical = np.array([-b, a])
    else:
        raise ValueError(f"twistor almost complex structure index must be 1 or 2, got {i}")
    return TwistorVector(vertical, pt.J0 @ v.horizontal)


def h_c(pt: TwistorPoint, c: float, v: TwistorVector, w: TwistorVector) -> float:
    """c^2 (A, B) on the fiber, <xi, eta> on the horizontal space, 0 across."""
    require_positive_c(c)
    return c * c * endo_inner(v.endomorphism(pt), w.endomorphism(pt)) + float(v.horizontal @ w.horizontal)


def orthonormal_coords(pt: TwistorPoint, c: float, v: TwistorVector) -> np.ndarray:
    """Coordinates in the h_c-orthonormal basis (I0*/s, K0*/s, e_1..e_4n), s = c sqrt(4n)."""
    require_positive_c(c)
    s = c * np.sqrt(pt.dim)
    return np.concatenate([s * v.vertical, v.horizontal])


def complex_structure_matrix(i: int, pt: TwistorPoint) -> np.ndarray:
    """Matrix of I_i in the orthonormal basis of orthonormal_coords."""
    N = pt.dim + 2
    out = np.zeros((N, N))
    sign = 1.0 if i == 1 else -1.0
    if i not in (1, 2):
        raise ValueError(f"twistor almost complex structure index must be 1 or 2, got {i}")
    # I_1 e_v1 = -e_v2, I_1 e_v2 = e_v1
    out[:2, :2] = sign * np.array([[0.0, 1.0], [-1.0, 0.0]])
    out[2:, 2:] = pt.J0
    return out


def point_grid(Q: QuaternionicTriple, n_random: int = 20, seed: int = 42, gauge: float = 0.0) -> list[TwistorPoint]:
    """The six axis directions followed by n_random seeded unit vectors."""
    rng = np.random.default_rng(seed)
    randoms = rng.normal(size=(n_random, 3))
    randoms /= np.linalg.norm(randoms, axis=1, keepdims=True)
    return [make_point(Q, a, gauge) for a in np.vstack([AXES, randoms])]


def require_positive_c(c: float) -> None:
    if not c > 0:
        raise ValueError(f"metric parameter c must be positive, got {c}")
