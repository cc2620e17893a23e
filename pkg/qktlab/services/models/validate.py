# Author: RD7
# Purpose: Classify a model as hyperkaehler, HKT or QKT and build its curvature bundle
# Created: 2025-10-14

from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np

from qktlab.services.curvature_lab import CurvatureBundle, build_bundle, instanton_and_star_ricci
from qktlab.services.errors import ModelExpectationError, NotHKTError, QKTLabError
from qktlab.services.lie_model import jacobi_check
from qktlab.services.models.catalog import Model
from qktlab.services.quaternionic import verify_triple
from qktlab.services.report import Check, compare
from qktlab.services.torsion_connection import TorsionConnection, hkt_detect, qkt_find

__all__ = ["Validation", "validate", "model_bundle", "check_expectation"]

logger = logging.getLogger(__name__)

HYPERKAEHLER = "hyperkähler"
HKT_BALANCED = "HKT, balanced"
HKT_NON_BALANCED = "HKT, non-balanced"
QKT_NON_HKT = "QKT, non-HKT"
NONE = "none"

# expectation key of a model file -> accepted classifications
_EXPECTED = {
    "hyperkahler": {HYPERKAEHLER},
    "hkt": {HYPERKAEHLER, HKT_BALANCED, HKT_NON_BALANCED},
    "balanced_hkt": {HKT_BALANCED},
    "qkt": {HYPERKAEHLER, HKT_BALANCED, HKT_NON_BALANCED, QKT_NON_HKT},
}


@dataclass
class Validation:
    name: str
    classification: str
    instanton: bool | None
    hkt: bool
    kernel_dim: int | None = None
    checks: list[Check] = field(default_factory=list)

    @property
    def label(self) -> str:
        if self.classification == QKT_NON_HKT and self.instanton is not None:
            return f"{self.classification}, {'instanton' if self.instanton else 'not instanton'}"
        return self.classification


# --------------------------------------------------------------------------- #
# Public API
# --------------------------------------------------------------------------- #
def model_bundle(model: Model, tol: float = 1e-9) -> CurvatureBundle:
    """Curvature bundle of the unique QKT connection of the model."""
    return build_bundle(model.L, model.Q, qkt_find(model.L, model.Q, tol), tol)


def validate(model: Model, tol: float = 1e-9, structure_tol: float = 1e-12) -> Validation:
    L, Q = model.L, model.Q
    triple = verify_triple(Q, structure_tol)
    checks = [
        compare("structure.jacobi", "[[x,y],z] + [[y,z],x] + [[z,x],y] = 0", "Jacobi identity",
                jacobi_check(L), 0.0, structure_tol),
        compare("structure.triple", "J_a^2 = -1, J_1 J_2 = J_3 = -J_2 J_1, J_a orthogonal",
                "quaternion relations", triple.worst, 0.0, structure_tol),
    ]

    hkt_conn: TorsionConnection | None = None
    try:
        hkt_conn = hkt_detect(L, Q, tol)
    except NotHKTError as exc:
        logger.debug("%s is not HKT: %s", model.name, exc)

    try:
        qkt = qkt_find(L, Q, tol)
    except QKTLabError as exc:
        logger.info("%s admits no QKT structure: %s", model.name, exc)
        return Validation(model.name, NONE, None, False, None, checks)

    b = build_bundle(L, Q, qkt, tol)
    try:
        instanton = instanton_and_star_ricci(b, tol).instanton
    except QKTLabError as exc:
        logger.warning("%s: instanton criteria inconclusive: %s", model.name, exc)
        instanton = None

    if hkt_conn is not None:
        if np.max(np.abs(hkt_conn.torsion)) < tol:
            classification = HYPERKAEHLER
        elif np.max(np.abs(b.t)) < tol:
            classification = HKT_BALANCED
        else:
            classification = HKT_NON_BALANCED
        checks.append(compare("structure.hkt_matches_qkt", "HKT torsion = QKT torsion",
                              "the QKT connection of an HKT model is its Bismut connection",
                              hkt_conn.torsion, qkt.torsion, tol))
    else:
        classification = QKT_NON_HKT

    validation = Validation(model.name, classification, instanton, hkt_conn is not None, qkt.nullity, checks)
    logger.info("%s classified as %s", model.name, validation.label)
    return validation


def check_expectation(model: Model, validation: Validation) -> None:
    if model.expect is None:
        return
    if validation.classification not in _EXPECTED[model.expect]:
        raise ModelExpectationError(
            f"model {model.name} expects {model.expect} but the engine classifies it as {validation.classification}"
        )
