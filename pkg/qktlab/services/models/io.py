# Author: RD7
# Purpose: Load and save model files, orthonormalising non-identity metrics
# Created: 2025-10-14

from __future__ import annotations

import json
import logging
from pathlib import Path

import numpy as np
from pydantic import ValidationError
from scipy.linalg import cholesky

from qktlab.services.errors import JacobiViolationError, ParseError, TripleViolationError
from qktlab.services.lie_model import MetricLieAlgebra, jacobi_check
from qktlab.services.models.catalog import Model
from qktlab.services.models.schema import ModelFile
from qktlab.services.quaternionic import QuaternionicTriple, verify_triple

__all__ = ["load", "save", "model_from_file", "file_from_model", "orthonormalize"]

logger = logging.getLogger(__name__)


# --------------------------------------------------------------------------- #
# Public API
# --------------------------------------------------------------------------- #
def load(path: str | Path, tol: float = 1e-12) -> Model:
    path = Path(path)
    try:
        raw = json.loads(path.read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise ParseError(f"cannot read model file {path}: {exc}") from exc

    try:
        mf = ModelFile.model_validate(raw)
    except ValidationError as exc:
        raise ParseError(f"invalid model file {path}: {exc}") from exc

    model = model_from_file(mf, tol)
    logger.info("loaded model %s (dim %d) from %s", model.name, model.L.dim, path)
    return model


def save(model: Model, path: str | Path) -> Path:
    out = Path(path)
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(file_from_model(model).model_dump_json(indent=2, exclude_none=True) + "\n", encoding="utf-8")
    return out


def model_from_file(mf: ModelFile, tol: float = 1e-12) -> Model:
    """Build the model, orthonormalise it and check Jacobi and the quaternion relations."""
    d = mf.dim
    c = np.zeros((d, d, d))
    for i, j, k, value in mf.brackets:
        c[i, j, k] = value
        c[j, i, k] = -value
    J1 = np.array(mf.J1, dtype=np.float64)
    J2 = np.array(mf.J2, dtype=np.float64)

    if mf.metric is not None:
        c, J1, J2 = orthonormalize(np.array(mf.metric, dtype=np.float64), c, J1, J2)

    L = MetricLieAlgebra(c)
    jac = jacobi_check(L)
    if jac > tol:
        raise JacobiViolationError(f"model {mf.name} violates the Jacobi identity, residual {jac:.3e}", jac)

    Q = QuaternionicTriple.from_pair(J1, J2)
    report = verify_triple(Q, tol)
    if not report.passed:
        raise TripleViolationError(
            f"model {mf.name} violates the quaternion relations: square {report.square:.3e}, "
            f"product {report.product:.3e}, anticommute {report.anticommute:.3e}, "
            f"orthogonality {report.orthogonality:.3e}",
            report.worst,
        )
    return Model(mf.name, L, Q, mf.description, mf.expect)


def file_from_model(model: Model) -> ModelFile:
    c = model.L.brackets
    d = model.L.dim
    entries = [
        (i, j, k, float(c[i, j, k]))
        for i in range(d) for j in range(i + 1, d) for k in range(d)
        if c[i, j, k] != 0
    ]
    return ModelFile(
        name=model.name,
        dim=d,
        brackets=entries,
        J1=model.Q.J1.tolist(),
        J2=model.Q.J2.tolist(),
        description=model.description,
        expect=model.expect,
    )


def orthonormalize(metric: np.ndarray, c: np.ndarray, J1: np.ndarray,
                   J2: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    Pass to the frame f = e U^{-1} with metric = U^t U (Cholesky).

    Structure constants and complex structures are rewritten in the new frame.
    """
    try:
        U = cholesky(metric, lower=False)
    except np.linalg.LinAlgError as exc:
        raise ParseError(f"metric is not symmetric positive definite: {exc}") from exc
    if np.max(np.abs(metric - metric.T)) > 1e-12:
        raise ParseError("metric is not symmetric")

    # f_a = sum_i P[i, a] e_i, P = U^{-1}
    P = np.linalg.inv(U)
    c_new = np.einsum("ia,jb,ijk,ck->abc", P, P, c, U)
    return c_new, U @ J1 @ P, U @ J2 @ P
