# Author: RD7
# Purpose: Pointwise curvature identities of QKT connections, checked on a CurvatureBundle
# Created: 2025-10-09

from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np

from qktlab.services.curvature_lab.bundle import CurvatureBundle
from qktlab.services.errors import DimensionTooSmallError, InconsistentCriteriaError
from qktlab.services.frame_tensor import two_form_inner, type_20_part
from qktlab.services.quaternionic import CYCLIC, kaehler_form
from qktlab.services.report import Check, compare

__all__ = [
    "ScalarGap",
    "InstantonReport",
    "HomothetyFit",
    "verify_torsion_traces",
    "verify_scalar_traces",
    "verify_ricci_form_decomposition",
    "verify_levi_civita_relations",
    "scalar_gap_pointwise",
    "instanton_and_star_ricci",
    "verify_ricci_form_rotation",
    "special_homothety_check",
    "form_trace",
]

logger = logging.getLogger(__name__)


@dataclass
class ScalarGap:
    first: float           # Scal^g - Scal^g_Q - (2/n) Scal_Q
    second: float          # Scal^g - 2 Scal^g_Q - ((2-n)/n) Scal_Q
    first_rhs: float       # -2 delta t + |t|^2
    second_rhs: float      # -delta t + |T|^2 / 12
    balanced: bool
    quaternionic_kaehler: bool
    coclosed: bool
    checks: list[Check] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)


@dataclass
class InstantonReport:
    instanton: bool
    star_ricci: np.ndarray
    criteria: dict[str, bool]
    checks: list[Check] = field(default_factory=list)


@dataclass
class HomothetyFit:
    c_squared: float | None
    constant: float
    residual: float
    degenerate: bool


# --------------------------------------------------------------------------- #
# Public API
# --------------------------------------------------------------------------- #
def form_trace(S: np.ndarray, J: np.ndarray) -> np.ndarray:
    """(X, Y) -> sum_i S(X, Y, e_i, J e_i) for a rank-4 tensor S."""
    return np.einsum("xyik,ki->xy", S, J)


def verify_torsion_traces(b: CurvatureBundle, tol: float = 1e-9) -> list[Check]:
    """Traces of nabla T and of dT against the Kaehler forms."""
    checks = []
    rhs_scalar = -8.0 * b.delta_t + 8.0 * b.t_norm_sq - (4.0 / 3.0) * b.T_norm_sq
    for a, J in enumerate(b.Q, start=1):
        checks.append(compare(
            f"torsion.nabla_trace.J{a}",
            "sum_i (nabla_X T)(J Y, e_i, J e_i) = 2 (nabla_X t) Y",
            "trace of nabla T against a Kaehler form",
            np.einsum("xpik,py,ki->xy", b.nabla_T, J, J),
            2.0 * b.nabla_t,
            tol,
        ))
        checks.append(compare(
            f"torsion.dT_double_trace.J{a}",
            "sum_ij dT(e_j, J e_j, e_i, J e_i) = -8 delta t + 8 |t|^2 - 4/3 |T|^2",
            "double Kaehler trace of dT",
            np.einsum("jpiq,pj,qi->", b.dT, J, J),
            rhs_scalar,
            tol,
        ))
    for a, beta, gamma in CYCLIC:
        checks.append(compare(
            f"torsion.dT_mixed_trace.J{beta + 1}J{gamma + 1}",
            "sum_ij dT(e_j, J_b e_j, e_i, J_c e_i) = 0",
            "mixed Kaehler trace of dT",
            np.einsum("jpiq,pj,qi->", b.dT, b.Q[beta], b.Q[gamma]),
            0.0,
            tol,
        ))
    return checks


def verify_scalar_traces(b: CurvatureBundle, tol: float = 1e-9) -> list[Check]:
    _require_quaternionic_dim(b)
    table = b.traces.table
    checks = [
        compare(
            f"scalar.scal_qq.J{a + 1}J{a + 2}",
            "Scal_{a,a} = Scal_{b,b}",
            "quaternionic scalar curvature is well defined",
            table[a, a],
            table[a + 1, a + 1],
            tol,
        )
        for a in range(2)
    ]
    off = ~np.eye(3, dtype=bool)
    checks.append(compare(
        "scalar.scal_offdiag",
        "Scal_{a,b} = 0 for a != b",
        "mixed Ricci form traces vanish",
        table[off],
        np.zeros(6),
        tol,
    ))
    for a, J in enumerate(b.Q):
        checks.append(compare(
            f"scalar.scal_alpha.J{a + 1}",
            "Scal_a = 1/2 (dt, Phi_a)",
            "Ricci trace against J_a",
            b.traces.scal_alpha[a],
            0.5 * two_form_inner(b.dt, kaehler_form(J)),
            tol,
        ))
    return checks


def verify_ricci_form_decomposition(b: CurvatureBundle, tol: float = 1e-9,
                                    notes: list[str] | None = None) -> list[Check]:
    """
    (n-1) rho_a(X, J_a Y) in terms of Ric, nabla t and Kaehler traces of dT, and the
    difference identity 4(n-1)/n (rho_a(X,J_a Y) - rho_b(X,J_b Y)) = sum_i dT(...)_a - dT(...)_b.
    """
    _require_quaternionic_dim(b)
    n = b.n
    Q = b.Q
    # E[a](X, Y) = sum_i dT(X, J_a Y, e_i, J_a e_i)
    E = [form_trace(b.dT, J) @ J for J in Q]
    # F[a](X, Y) = sum_i dT(e_i, J_a e_i, X, J_a Y)
    F = [np.einsum("ikxz,ki,zy->xy", b.dT, J, J) for J in Q]
    rho_j = [b.rho[a] @ J for a, J in enumerate(Q)]

    checks = []
    for a, beta, gamma in CYCLIC:
        rhs = (
            -n * (n - 1) / (n + 2) * b.traces.ric
            + n * (n - 1) / (n + 2) * b.nabla_t
            + n / (4.0 * (n + 2)) * ((n + 1) * E[a] - E[beta] - E[gamma])
        )
        checks.append(compare(
            f"ricci_form.decomposition.J{a + 1}",
            "(n-1) rho_a(X, J_a Y) = -n(n-1)/(n+2) Ric + n(n-1)/(n+2) nabla t + dT traces",
            "Ricci forms through Ric, nabla t and dT",
            (n - 1) * rho_j[a],
            rhs,
            tol,
        ))

        diff_lhs = rho_j[a] - rho_j[beta]
        diff_rhs = F[a] - F[beta]
        checks.append(compare(
            f"ricci_form.difference.J{a + 1}J{beta + 1}",
            "4(n-1)/n (rho_a(X,J_a Y) - rho_b(X,J_b Y)) = sum_i dT(e_i,J_a e_i,X,J_a Y) - (same for b)",
            "difference of Ricci forms through dT",
            4.0 * (n - 1) / n * diff_lhs,
            diff_rhs,
            tol,
        ))
        if notes is not None:
            printed = float(np.max(np.abs(2.0 * (n - 1) / n * diff_lhs - diff_rhs)))
            if printed > tol:
                notes.append(
                    f"ricci_form.difference.J{a + 1}J{beta + 1}: coefficient 2(n-1)/n leaves residual "
                    f"{printed:.3e}; 4(n-1)/n is used"
                )
    return checks


def verify_levi_civita_relations(b: CurvatureBundle, tol: float = 1e-9) -> list[Check]:
    """R^g, rho^g, Ric^g and the Riemannian scalars in terms of the QKT connection."""
    _require_quaternionic_dim(b)
    n = b.n
    T = b.T
    t = b.t
    nT = b.nabla_T
    quad = np.einsum("abm,cdm->abcd", T, T)  # g(T(a,b), T(c,d))

    rg_rhs = (
        b.R
        - 0.5 * nT
        + 0.5 * np.transpose(nT, (1, 0, 2, 3))
        - 0.5 * quad
        - 0.25 * np.einsum("yzxu->xyzu", quad)
        - 0.25 * np.einsum("zxyu->xyzu", quad)
    )
    checks = [compare(
        "levi_civita.curvature",
        "R^g = R - 1/2 nabla_X T + 1/2 nabla_Y T - quadratic torsion terms",
        "Riemannian curvature from the QKT curvature",
        b.Rg,
        rg_rhs,
        tol,
    )]

    for a, J in enumerate(b.Q):
        rhs = (
            b.rho[a] @ J
            - 0.5 * b.nabla_t
            - 0.5 * np.einsum("ay,bx,ab->xy", J, J, b.nabla_t)
            + 0.5 * np.einsum("m,mk,xzk,zy->xy", t, J, T, J)
            + 0.25 * np.einsum("xim,ay,bi,abm->xy", T, J, J, T)
        )
        checks.append(compare(
            f"levi_civita.ricci_form.J{a + 1}",
            "rho^g_a(X, J_a Y) = rho_a(X, J_a Y) - nabla t terms + t(J_a T(X, J_a Y))/2 + torsion square",
            "Riemannian Ricci forms from the QKT Ricci forms",
            b.rho_g[a] @ J,
            rhs,
            tol,
        ))

    table_g = b.traces_g.table
    scal_q = b.scal_q
    tn = b.t_norm_sq
    Tn = b.T_norm_sq
    dlt = b.delta_t
    for a in range(3):
        checks.append(compare(
            f"levi_civita.scal_gq.J{a + 1}",
            "Scal^g_a = Scal_Q - delta t + |t|^2 - |T|^2/12",
            "quaternionic *-scalar curvature",
            table_g[a, a],
            scal_q - dlt + tn - Tn / 12.0,
            tol,
        ))
    for a, beta, gamma in CYCLIC:
        checks.append(compare(
            f"levi_civita.scal_g_offdiag.J{a + 1}J{beta + 1}",
            "Scal^g_{a,b} = Scal_c",
            "mixed Riemannian Ricci form traces",
            table_g[a, beta],
            b.traces.scal_alpha[gamma],
            tol,
        ))

    checks.append(compare(
        "levi_civita.scal_g",
        "Scal^g = (n+2)/n Scal_Q - 3 delta t + 2|t|^2 - |T|^2/12",
        "Riemannian scalar curvature",
        b.traces_g.scal,
        (n + 2) / n * scal_q - 3 * dlt + 2 * tn - Tn / 12.0,
        tol,
    ))
    checks.append(compare(
        "levi_civita.scal",
        "Scal = (n+2)/n Scal_Q - 3 delta t + 2|t|^2 - |T|^2/3",
        "scalar curvature of the QKT connection",
        b.traces.scal,
        (n + 2) / n * scal_q - 3 * dlt + 2 * tn - Tn / 3.0,
        tol,
    ))
    checks.append(compare(
        "levi_civita.ricci",
        "Ric^g = Ric + 1/2 delta T + 1/4 sum_i g(T(X,e_i), T(Y,e_i))",
        "Riemannian Ricci tensor",
        b.traces_g.ric,
        b.traces.ric + 0.5 * b.delta_T + 0.25 * np.einsum("xim,yim->xy", T, T),
        tol,
    ))
    checks.append(compare(
        "levi_civita.scal_torsion",
        "Scal^g = Scal + |T|^2/4",
        "Riemannian scalar curvature through the torsion norm",
        b.traces_g.scal,
        b.traces.scal + 0.25 * Tn,
        tol,
    ))
    return checks


def scalar_gap_pointwise(b: CurvatureBundle, tol: float = 1e-9) -> ScalarGap:
    """
    Pointwise versions of the two integral scalar inequalities.

    The equality cases (zero gap iff balanced, zero gap iff T = 0) are only
    asserted when delta t = 0.
    """
    _require_quaternionic_dim(b)
    n = b.n
    first = b.traces_g.scal - b.scal_gq - 2.0 / n * b.scal_q
    second = b.traces_g.scal - 2.0 * b.scal_gq - (2.0 - n) / n * b.scal_q
    first_rhs = -2.0 * b.delta_t + b.t_norm_sq
    second_rhs = -b.delta_t + b.T_norm_sq / 12.0

    gap = ScalarGap(
        first=float(first),
        second=float(second),
        first_rhs=float(first_rhs),
        second_rhs=float(second_rhs),
        balanced=bool(np.max(np.abs(b.t)) < tol),
        quaternionic_kaehler=bool(np.max(np.abs(b.T)) < tol),
        coclosed=abs(b.delta_t) < tol,
    )
    gap.checks.append(compare(
        "scalar_gap.balanced",
        "Scal^g - Scal^g_Q - (2/n) Scal_Q = -2 delta t + |t|^2",
        "gap measuring the torsion 1-form",
        first, first_rhs, tol,
    ))
    gap.checks.append(compare(
        "scalar_gap.quaternionic_kaehler",
        "Scal^g - 2 Scal^g_Q - ((2-n)/n) Scal_Q = -delta t + |T|^2/12",
        "gap measuring the torsion 3-form",
        second, second_rhs, tol,
    ))

    printed = -2.0 * b.delta_t + 2.0 * b.t_norm_sq
    if abs(printed - first) > tol:
        gap.notes.append(
            f"scalar_gap.balanced: the variant -2 delta t + 2|t|^2 = {printed:.6g} differs from the gap {first:.6g}"
        )

    if gap.coclosed:
        gap.checks.append(compare(
            "scalar_gap.balanced_equality",
            "first gap vanishes iff t = 0",
            "equality case of the first gap",
            float(abs(first) < tol), float(gap.balanced), 0.5,
        ))
        gap.checks.append(compare(
            "scalar_gap.quaternionic_kaehler_equality",
            "second gap vanishes iff T = 0",
            "equality case of the second gap",
            float(abs(second) < tol), float(gap.quaternionic_kaehler), 0.5,
        ))
    else:
        gap.notes.append(
            f"scalar_gap: delta t = {b.delta_t:.6g} is not zero, equality cases are not asserted"
        )
    return gap


def instanton_and_star_ricci(b: CurvatureBundle, tol: float = 1e-9) -> InstantonReport:
    """
    Instanton type from three criteria: rho_a of type (1,1), rho*_a symmetric,
    dt of type (1,1). Raises InconsistentCriteriaError when they disagree.
    """
    n = b.n
    star = b.rho_star
    by_rho = all(np.max(np.abs(type_20_part(b.rho[a], J))) < tol for a, J in enumerate(b.Q))
    by_star = all(np.max(np.abs(s - s.T)) < tol for s in star)
    by_dt = all(np.max(np.abs(type_20_part(b.dt, J))) < tol for J in b.Q)
    criteria = {"ricci_forms": bool(by_rho), "star_ricci": bool(by_star), "dt": bool(by_dt)}
    logger.debug("instanton criteria %s", criteria)
    if len(set(criteria.values())) > 1:
        raise InconsistentCriteriaError(f"instanton criteria disagree: {criteria}")

    report = InstantonReport(by_rho, star, criteria)
    for a, J in enumerate(b.Q):
        dt_part = b.dt - J.T @ b.dt @ J
        rho_part = b.rho[a] @ J + J.T @ b.rho[a]
        rho_g_part = b.rho_g[a] @ J + J.T @ b.rho_g[a]
        report.checks.append(compare(
            f"instanton.ricci_form_type.J{a + 1}",
            "rho_a(X, J_a Y) + rho_a(J_a X, Y) = -n/2 (dt(X,Y) - dt(J_a X, J_a Y))",
            "(2,0)+(0,2) part of the Ricci form",
            rho_part, -0.5 * n * dt_part, tol,
        ))
        report.checks.append(compare(
            f"instanton.riemannian_ricci_form_type.J{a + 1}",
            "rho^g_a(X, J_a Y) + rho^g_a(J_a X, Y) = -(n+1)/2 (dt(X,Y) - dt(J_a X, J_a Y))",
            "(2,0)+(0,2) part of the Riemannian Ricci form",
            rho_g_part, -0.5 * (n + 1) * dt_part, tol,
        ))
        report.checks.append(compare(
            f"instanton.type_link.J{a + 1}",
            "(2,0)+(0,2) parts: rho^g_a = rho_a - 1/2 dt",
            "Riemannian and QKT Ricci forms share their (2,0)+(0,2) part up to dt",
            rho_g_part, rho_part - 0.5 * dt_part, tol,
        ))

    d_nabla_t = b.nabla_t - b.nabla_t.T
    report.checks.append(compare(
        "instanton.covariant_dt",
        "(nabla_X t)Y - (nabla_Y t)X = dt(X,Y) - t(T(X,Y))",
        "covariant exterior derivative of the torsion 1-form",
        d_nabla_t, b.dt - np.einsum("xym,m->xy", b.T, b.t), tol,
    ))
    return report


def verify_ricci_form_rotation(b: CurvatureBundle, tol: float = 1e-9) -> list[Check]:
    checks = []
    for a, beta, gamma in CYCLIC:
        Jb = b.Q[beta]
        checks.append(compare(
            f"ricci_form.rotation.J{a + 1}J{beta + 1}",
            "rho_a(J_b X, J_b Y) - rho_a(X, Y) = rho_c(J_b X, Y) + rho_c(X, J_b Y)",
            "Ricci forms under the other complex structures",
            Jb.T @ b.rho[a] @ Jb - b.rho[a],
            Jb.T @ b.rho[gamma] + b.rho[gamma] @ Jb,
            tol,
        ))
    return checks


def special_homothety_check(b: CurvatureBundle, tol: float = 1e-8, instanton: bool | None = None) -> HomothetyFit:
    """
    Least-squares fit of rho_a(J_a X, Y) + rho_a(J_c X, J_b Y) = k g(X, Y) over all a.

    c^2 = 1/k is returned when the fit is exact to tol (relative), k > 0 and
    the structure is of instanton type.
    """
    Q = b.Q
    lhs = np.stack([Q[a].T @ b.rho[a] + Q[gamma].T @ b.rho[a] @ Q[beta] for a, beta, gamma in CYCLIC])
    eye = np.eye(Q.dim)
    constant = float(np.einsum("aii->", lhs)) / (3 * Q.dim)
    residual = float(np.max(np.abs(lhs - constant * eye)))
    degenerate = float(np.max(np.abs(lhs))) < tol

    if instanton is None:
        instanton = instanton_and_star_ricci(b).instanton
    accepted = (not degenerate) and constant > 0 and residual <= tol * max(1.0, abs(constant)) and instanton
    c_squared = 1.0 / constant if accepted else None
    logger.debug("special homothety: k=%.6g residual=%.3e accepted=%s", constant, residual, accepted)
    return HomothetyFit(c_squared, constant, residual, degenerate)


# --------------------------------------------------------------------------- #
# Internal helpers
# --------------------------------------------------------------------------- #
def _require_quaternionic_dim(b: CurvatureBundle) -> None:
    if b.n < 2:
        raise DimensionTooSmallError(f"identity needs quaternionic dimension n > 1, got n = {b.n}")
