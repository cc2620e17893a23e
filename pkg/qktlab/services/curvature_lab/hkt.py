# Author: RD7
# Purpose: Checks specific to HKT structures (Lee form, Ricci tensor of the Bismut connection, balanced case)
# Created: 2025-10-10

from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np

from qktlab.services.curvature_lab.bundle import CurvatureBundle
from qktlab.services.curvature_lab.identities import form_trace
from qktlab.services.errors import NotHKTError
from qktlab.services.frame_tensor import type_20_part
from qktlab.services.lie_model import ce_derivative, codifferential, covariant_derivative
from qktlab.services.quaternionic import kaehler_form
from qktlab.services.report import Check, compare
from qktlab.services.torsion_connection import nabla_endomorphism

__all__ = ["HKTSummary", "lee_form", "hkt_suite"]

logger = logging.getLogger(__name__)


@dataclass
class HKTSummary:
    lee: np.ndarray
    balanced: bool
    hyperkaehler: bool
    ricci_symmetric: bool
    balanced_gap: float        # Scal^g - Scal^g_Q
    hyperkaehler_gap: float    # Scal^g - 2 Scal^g_Q
    checks: list[Check] = field(default_factory=list)


# --------------------------------------------------------------------------- #
# Public API
# --------------------------------------------------------------------------- #
def lee_form(b: CurvatureBundle, J: np.ndarray) -> np.ndarray:
    """theta(X) = -(delta Phi)(J X)."""
    delta_phi = codifferential(b.L, b.lc, kaehler_form(J))
    return -J.T @ delta_phi


def hkt_suite(b: CurvatureBundle, tol: float = 1e-9) -> HKTSummary:
    worst = max(float(np.max(np.abs(nabla_endomorphism(b.conn.gamma, J)))) for J in b.Q)
    if worst > tol:
        raise NotHKTError(f"connection does not preserve every J_a, residual {worst:.3e}", worst)

    L, Q = b.L, b.Q
    lees = [lee_form(b, J) for J in Q]
    theta = lees[0]
    d_theta = ce_derivative(L, theta)
    nabla_theta = covariant_derivative(L, b.conn.connection, theta)
    d_nabla_theta = nabla_theta - nabla_theta.T
    ric = b.traces.ric

    checks = [
        compare(f"hkt.lee_forms_agree.J1J{a + 1}", "theta_1 = theta_a", "Lee forms of an HKT structure coincide",
                lees[0], lees[a], tol)
        for a in (1, 2)
    ]
    checks += [
        compare(f"hkt.lee_equals_torsion_form.J{a + 1}", "theta_a = t", "Lee form equals the torsion 1-form",
                lee, b.t, tol)
        for a, lee in enumerate(lees)
    ]
    checks += [
        compare(f"hkt.dtheta_type.J{a + 1}", "d theta is of type (1,1)", "(2,0)+(0,2) part of d theta vanishes",
                type_20_part(d_theta, J), 0.0, tol)
        for a, J in enumerate(Q)
    ]
    checks.append(compare("hkt.ricci_forms_vanish", "rho_a = 0", "Ricci forms of the Bismut connection",
                          b.rho, 0.0, tol))
    checks.append(compare("hkt.scal_q_vanishes", "Scal_Q = 0", "quaternionic scalar curvature of an HKT structure",
                          b.scal_q, 0.0, tol))
    for a, J in enumerate(Q):
        checks.append(compare(
            f"hkt.ricci_tensor.J{a + 1}",
            "Ric(X,Y) = (nabla_X theta) Y + 1/4 sum_i dT(X, J_a Y, e_i, J_a e_i)",
            "Ricci tensor of the Bismut connection",
            ric,
            nabla_theta + 0.25 * (form_trace(b.dT, J) @ J),
            tol,
        ))
    checks.append(compare(
        "hkt.covariant_dtheta",
        "d^nabla theta = d theta - theta(T(X,Y))",
        "covariant exterior derivative of the Lee form",
        d_nabla_theta,
        d_theta - np.einsum("xym,m->xy", b.T, theta),
        tol,
    ))

    ricci_symmetric = bool(np.max(np.abs(ric - ric.T)) < tol)
    checks.append(compare(
        "hkt.ricci_symmetric_iff_dtheta",
        "Ric symmetric iff d^nabla theta = 0",
        "symmetry of the Bismut Ricci tensor",
        float(ricci_symmetric), float(np.max(np.abs(d_nabla_theta)) < tol), 0.5,
    ))

    balanced = bool(np.max(np.abs(theta)) < tol)
    if balanced:
        checks.append(compare("hkt.balanced.ricci_symmetric", "Ric(X,Y) = Ric(Y,X)",
                              "balanced HKT Ricci tensor is symmetric", ric, ric.T, tol))
        checks += [
            compare(f"hkt.balanced.ricci_invariant.J{a + 1}", "Ric(J X, J Y) = Ric(X, Y)",
                    "balanced HKT Ricci tensor is J-invariant", J.T @ ric @ J, ric, tol)
            for a, J in enumerate(Q)
        ]
        checks.append(compare("hkt.balanced.coclosed_torsion", "delta T = 0",
                              "balanced HKT torsion is coclosed", b.delta_T, 0.0, tol))

    scal_g = b.traces_g.scal
    hyperkaehler = abs(scal_g) < tol and abs(b.scal_gq) < tol
    summary = HKTSummary(
        lee=theta,
        balanced=balanced,
        hyperkaehler=bool(hyperkaehler),
        ricci_symmetric=ricci_symmetric,
        balanced_gap=float(scal_g - b.scal_gq),
        hyperkaehler_gap=float(scal_g - 2.0 * b.scal_gq),
        checks=checks,
    )
    logger.debug("hkt: balanced=%s hyperkaehler=%s gaps=(%.6g, %.6g)", balanced, hyperkaehler,
                 summary.balanced_gap, summary.hyperkaehler_gap)
    return summary
