# Author: RD7
# Purpose: Verification suites assembled into a Report
# Created: 2025-10-15

from __future__ import annotations

import logging
import time

import numpy as np

from qktlab.services import curvature_lab as cl
from qktlab.services.config import Config
from qktlab.services.errors import NotHKTError, QKTLabError, SplitFailsError
from qktlab.services.frame_tensor import endo_inner, norm_sq_3form, torsion_pair_trace
from qktlab.services.lie_model import ce_derivative
from qktlab.services.models import Model, Validation, validate
from qktlab.services.report import Check, Report, compare
from qktlab.services.torsion_connection import (
    TorsionConnection,
    connection_one_forms,
    hkt_detect,
    qkt_find,
    torsion_type_check,
)
from qktlab.services.twistor import (
    CLASSES,
    CurvatureForms,
    gray_hervella,
    k_array,
    point_grid,
    twistor_ricci,
    verify_twistor_theorem,
)

__all__ = ["SUITES", "SuiteRunner"]

logger = logging.getLogger(__name__)

SUITES = ("structure", "curvature", "hkt", "twistor", "all")


class SuiteRunner:
    """Runs the verification suites of one model with one configuration."""

    def __init__(self, cfg: Config, model: Model):
        self.cfg = cfg
        self.model = model
        self._validation: Validation | None = None
        self._connection: TorsionConnection | None = None
        self._bundle: cl.CurvatureBundle | None = None

    # ------------------------------------------------------------------ #
    # Lazily computed model data
    # ------------------------------------------------------------------ #
    @property
    def tol(self) -> float:
        return self.cfg.tol.check

    @property
    def validation(self) -> Validation:
        if self._validation is None:
            self._validation = validate(self.model, self.cfg.tol.solve, self.cfg.tol.structure)
        return self._validation

    @property
    def connection(self) -> TorsionConnection:
        if self._connection is None:
            self._connection = qkt_find(self.model.L, self.model.Q, self.cfg.tol.solve)
        return self._connection

    @property
    def bundle(self) -> cl.CurvatureBundle:
        if self._bundle is None:
            self._bundle = cl.build_bundle(self.model.L, self.model.Q, self.connection, self.cfg.tol.solve)
        return self._bundle

    # ------------------------------------------------------------------ #
    # Entry point
    # ------------------------------------------------------------------ #
    def run(self, suite: str) -> Report:
        if suite not in SUITES:
            raise ValueError(f"unknown suite {suite!r}, choose from {', '.join(SUITES)}")

        start = time.perf_counter()
        report = Report(self.model.name, suite, self.tol)
        names = SUITES[:-1] if suite == "all" else (suite,)
        for name in names:
            logger.info("running %s suite on %s", name, self.model.name)
            getattr(self, f"_{name}")(report, explicit=suite != "all")
        report.wall_time = time.perf_counter() - start
        logger.info("%s/%s: %d checks, %d failed, %.3fs", self.model.name, suite, len(report.checks),
                    len(report.failures()), report.wall_time)
        return report

    def classify(self) -> Report:
        """Gray-Hervella table of I_1 and I_2 over the point grid, one row per structure."""
        start = time.perf_counter()
        tc = self.cfg.twistor
        grid = point_grid(self.model.Q, tc.n_random_points, tc.seed)
        report = Report(self.model.name, "classify", self.tol)
        forms = CurvatureForms.from_bundle(self.bundle)
        for i in (1, 2):
            table = gray_hervella(self.bundle, i, tc.c, grid, self.tol, forms)
            report.extend(table.checks)
            held = [name for name in CLASSES if table.holds(name)]
            report.notes.append(f"I{i} at c = {tc.c:g}: {', '.join(held) or 'no class'}")
            for name in CLASSES:
                report.notes.append(f"I{i}.{name}: residual {table.residuals[name]:.3e}")
        report.wall_time = time.perf_counter() - start
        return report

    # ------------------------------------------------------------------ #
    # Suites
    # ------------------------------------------------------------------ #
    def _structure(self, report: Report, explicit: bool) -> None:
        tol = self.tol
        v = self.validation
        report.extend(v.checks)
        report.notes.append(f"classification: {v.label}")

        L, Q = self.model.L, self.model.Q
        conn = self.connection
        report.extend([
            compare("connection.qkt_residual", "nabla J_a = -omega_b J_c + omega_c J_b",
                    "least-squares residual of the QKT system", conn.residual, 0.0, self.cfg.tol.solve),
            compare("connection.metric", "g(nabla_X Y, Z) + g(Y, nabla_X Z) = 0",
                    "the connection is metric", conn.connection.metric_residual(), 0.0, tol),
            compare("connection.torsion_type", "T = S_J(T) for every J_a",
                    "torsion of type (1,2)+(2,1)", max(torsion_type_check(conn.torsion, Q, tol).residuals),
                    0.0, self.cfg.tol.structure),
        ])
        omegas = connection_one_forms(L, conn, Q, tol)
        report.extend([compare("connection.one_forms", "omega_a recovered from nabla J",
                               "connection 1-forms are determined by the connection", omegas, conn.omegas, tol)])

        T = conn.torsion
        report.extend([
            compare(f"torsion.pair_trace.J{a + 1}", "sum_ij g(T(e_i,e_j), T(J e_i, J e_j)) = |T|^2/3",
                    "pair trace of a torsion of type (1,2)+(2,1)",
                    torsion_pair_trace(T, J, J), norm_sq_3form(T) / 3.0, tol)
            for a, J in enumerate(Q)
        ])
        report.extend([
            compare(f"torsion.mixed_pair_trace.J{a + 1}J{beta + 1}",
                    "sum_ij g(T(e_i,e_j), T(J_a e_i, J_b e_j)) = 0",
                    "mixed pair trace of a torsion of type (1,2)+(2,1)",
                    torsion_pair_trace(T, Q[a], Q[beta]), 0.0, tol)
            for a in range(3) for beta in range(3) if a != beta
        ])

        if v.hkt:
            solved = hkt_detect(L, Q, self.cfg.tol.solve)
            report.extend([compare("connection.bismut_agree", "Bismut torsions of J_1, J_2, J_3 agree",
                                   "common Bismut connection", solved.torsion, T, tol)])

    def _curvature(self, report: Report, explicit: bool) -> None:
        b = self.bundle
        tol = self.tol
        report.extend(cl.verify_torsion_traces(b, tol))
        report.extend(cl.verify_scalar_traces(b, tol))
        report.extend(cl.verify_ricci_form_decomposition(b, tol, report.notes))
        report.extend(cl.verify_levi_civita_relations(b, tol))
        report.extend(cl.verify_ricci_form_rotation(b, tol))

        report.extend([self._dT_check()])
        report.extend([
            compare("curvature.ricci_form_commutator", "n [R(X,Y), J_a] = rho_c J_b - rho_b J_c",
                    "curvature commutes with the triple up to Ricci forms",
                    cl.ricci_form_commutator_residual(b.R, b.Q, b.rho), 0.0, tol),
        ])
        try:
            cl.curvature_split(b.R, b.Q, tol)
            split_residual = 0.0
        except SplitFailsError as exc:
            split_residual = exc.residual
        report.extend([compare("curvature.split", "[R - 1/(2n) sum_a rho_a J_a, J_b] = 0",
                               "curvature splits along sp(n) + sp(1)", split_residual, 0.0, tol)])
        try:
            cl.curvature_split(b.Rg, b.Q, tol)
            report.notes.append("curvature: the Riemannian curvature also splits along sp(n) + sp(1)")
        except QKTLabError as exc:
            report.notes.append(f"curvature: Riemannian curvature does not split ({exc})")

        gap = cl.scalar_gap_pointwise(b, tol)
        report.extend(gap.checks)
        report.notes.extend(gap.notes)

        inst = cl.instanton_and_star_ricci(b, tol)
        report.extend(inst.checks)
        report.notes.append(f"instanton: {inst.instanton} {inst.criteria}")
        report.extend([compare("instanton.dt_is_derivative", "dt = d(t)", "dt recomputed from the torsion 1-form",
                               ce_derivative(b.L, b.t), b.dt, tol)])

        fit = cl.special_homothety_check(b, self.cfg.tol.homothety, inst.instanton)
        if fit.c_squared is None:
            report.notes.append(f"special homothety: none (best constant {fit.constant:.6g}, residual {fit.residual:.3e})")
        else:
            report.notes.append(f"special homothety: c^2 = {fit.c_squared:.12g}")

    def _dT_check(self) -> Check:
        b = self.bundle
        return compare("curvature.dT_two_formulas",
                       "cyc{nabla_X T(Y,Z,U) + 2 g(T(X,Y),T(Z,U))} - nabla_U T(X,Y,Z) = dT",
                       "exterior derivative of the torsion through a torsion connection",
                       cl.dT_from_connection(b.L, b.conn), b.dT, self.tol)

    def _hkt(self, report: Report, explicit: bool) -> None:
        if not self.validation.hkt:
            if explicit:
                raise NotHKTError(f"model {self.model.name} is not HKT ({self.validation.classification})")
            report.notes.append(f"hkt: skipped, {self.model.name} is {self.validation.classification}")
            return
        summary = cl.hkt_suite(self.bundle, self.tol)
        report.extend(summary.checks)
        report.extend([compare("hkt.classification_agrees", "hyperkaehler flag matches the model classification",
                               "curvature classification", float(summary.hyperkaehler),
                               float(self.validation.classification == "hyperkähler"), 0.5)])
        report.notes.append(
            f"hkt: balanced={summary.balanced} hyperkaehler={summary.hyperkaehler} "
            f"Scal^g - Scal^g_Q = {summary.balanced_gap:.6g}, Scal^g - 2 Scal^g_Q = {summary.hyperkaehler_gap:.6g}"
        )

    def _twistor(self, report: Report, explicit: bool) -> None:
        b = self.bundle
        tol = self.tol
        tc = self.cfg.twistor
        grid = point_grid(b.Q, tc.n_random_points, tc.seed)

        theorem = verify_twistor_theorem(b, tc.c, grid, tol)
        report.extend(theorem.checks)
        report.notes.extend(theorem.notes)
        report.notes.append("twistor flags: " + ", ".join(f"{k}={v}" for k, v in theorem.flags.items()))

        # fiber block against the commutator of the adapted endomorphisms
        forms = CurvatureForms.from_bundle(b)
        c2 = tc.c ** 2
        fiber = []
        for pt in grid:
            s = tc.c * np.sqrt(pt.dim)
            K = k_array(pt, tc.c, forms)
            comm = pt.I0 @ pt.K0 - pt.K0 @ pt.I0
            fiber.append((K[0, 1, 0, 1] * s ** 4, -c2 * endo_inner(comm, comm)))
        lhs, rhs = np.array(fiber).T
        report.extend([compare("twistor.fiber_curvature", "K(I0*,K0*,I0*,K0*) = -c^2 ([I0,K0],[I0,K0])",
                               "curvature of the fiber", lhs, rhs, tol)])

        if self.validation.hkt:
            ricci = twistor_ricci(b, tc.c, grid, tol)
            report.extend(ricci.checks)
            report.notes.extend(ricci.notes)
        else:
            report.notes.append("twistor: Ricci tensors of Z are only evaluated over HKT bases")
