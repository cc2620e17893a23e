# Author: RD7
# Purpose: Gray-Hervella classes of (Z, h_c, I_i), the twistor equivalences and the Ricci tensors of Z over HKT spaces
# Created: 2025-10-13

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable

import numpy as np

from qktlab.services.curvature_lab.bundle import CurvatureBundle
from qktlab.services.curvature_lab.identities import instanton_and_star_ricci, special_homothety_check
from qktlab.services.errors import InconsistentEquivalenceError, NotHKTError
from qktlab.services.frame_tensor import pull_back
from qktlab.services.report import Check, compare
from qktlab.services.torsion_connection import nabla_endomorphism
from qktlab.services.twistor.point import TwistorPoint, complex_structure_matrix, point_grid, require_positive_c
from qktlab.services.twistor.tensors import CurvatureForms, f_array, k_array

__all__ = [
    "CLASSES",
    "TRACE_CONVENTIONS",
    "GrayHervellaReport",
    "TwistorTheoremReport",
    "TwistorRicciReport",
    "class_residuals",
    "gray_hervella",
    "pinned_trace_convention",
    "verify_twistor_theorem",
    "twistor_ricci",
]

logger = logging.getLogger(__name__)

CLASSES = ("kaehler", "hermitian", "g1", "semi_kaehler", "quasi_kaehler", "nearly_kaehler", "almost_kaehler")

# Candidate expressions for the horizontal trace of F, as covectors in xi
TRACE_CONVENTIONS: dict[str, Callable[[np.ndarray, np.ndarray], np.ndarray]] = {
    "t(xi)": lambda t, J0: t,
    "-t(xi)": lambda t, J0: -t,
    "t(J0 xi)": lambda t, J0: J0.T @ t,
    "-t(J0 xi)": lambda t, J0: -J0.T @ t,
}


@dataclass
class GrayHervellaReport:
    """Worst residual of each class condition over the point grid, for one I_i and one c."""

    i: int
    c: float
    residuals: dict[str, float]
    tol: float
    checks: list[Check] = field(default_factory=list)

    @property
    def classes(self) -> dict[str, bool]:
        return {name: r < self.tol for name, r in self.residuals.items()}

    def holds(self, name: str) -> bool:
        return self.residuals[name] < self.tol


@dataclass
class TwistorTheoremReport:
    c: float
    flags: dict[str, bool]
    trace_convention: str
    checks: list[Check] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)


@dataclass
class TwistorRicciReport:
    c: float
    einstein_c: float | None = None
    star_einstein_c: float | None = None
    checks: list[Check] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)


# --------------------------------------------------------------------------- #
# Public API
# --------------------------------------------------------------------------- #
def class_residuals(F: np.ndarray, I: np.ndarray) -> dict[str, np.ndarray]:
    """
    Tensors whose vanishing defines each class, for F(X,Y,Z) = h((D_X I)Y, Z).
    """
    FI = pull_back(F, I, (0, 1))
    swap = np.transpose(F, (1, 0, 2))
    return {
        "kaehler": F,
        "hermitian": F - FI,
        "g1": F + swap - FI - np.transpose(FI, (1, 0, 2)),
        "semi_kaehler": np.einsum("aaz->z", F),
        "quasi_kaehler": F + FI,
        "nearly_kaehler": F + swap,
        "almost_kaehler": F + np.einsum("yzx->xyz", F) + np.einsum("zxy->xyz", F),
    }


def gray_hervella(b: CurvatureBundle, i: int, c: float, grid: list[TwistorPoint] | None = None,
                  tol: float = 1e-9, forms: CurvatureForms | None = None) -> GrayHervellaReport:
    require_positive_c(c)
    grid = grid if grid is not None else point_grid(b.Q)
    forms = forms if forms is not None else CurvatureForms.from_bundle(b)

    worst = dict.fromkeys(CLASSES, 0.0)
    compat, skew, typ = [], [], []
    for pt in grid:
        F = f_array(i, pt, c, forms)
        I = complex_structure_matrix(i, pt)
        for name, tensor in class_residuals(F, I).items():
            worst[name] = max(worst[name], float(np.max(np.abs(tensor))))
        # F(X, I Y, I Z) = -F(X, Y, Z)
        compat.append(pull_back(F, I, (1, 2)) + F)
        s, t = forms.t1_residuals(pt)
        skew.append(s)
        typ.append(t)

    report = GrayHervellaReport(i, c, worst, tol)
    report.checks.append(compare(
        f"twistor.I{i}.f_compatibility", "F(X, I Y, I Z) = -F(X, Y, Z)",
        "D I anticommutes with I", np.stack(compat), 0.0, tol,
    ))
    report.checks.append(compare(
        f"twistor.I{i}.torsion_skew", "<Theta(xi,eta),zeta> = -<Theta(xi,zeta),eta>",
        "torsion form is skew in its last two slots", np.array(skew), 0.0, tol,
    ))
    report.checks.append(compare(
        f"twistor.I{i}.torsion_type", "Theta of type (1,2)+(2,1) for J0",
        "torsion type at every twistor point", np.array(typ), 0.0, tol,
    ))
    logger.debug("gray_hervella I%d c=%.4g: %s", i, c, {k: f"{v:.3e}" for k, v in worst.items()})
    return report


@lru_cache(maxsize=None)
def pinned_trace_convention(c: float = 1.0) -> str:
    """
    Pick the expression for tr F(B xi) that reproduces the horizontal trace
    on hopf8, the builtin with non-zero torsion 1-form.
    """
    # deferred: the model catalog builds on the curvature lab
    from qktlab.services.models import builtin, model_bundle

    b = model_bundle(builtin("hopf8"))
    forms = CurvatureForms.from_bundle(b)
    grid = point_grid(b.Q, n_random=4)
    errors = dict.fromkeys(TRACE_CONVENTIONS, 0.0)
    for pt in grid:
        tr = np.einsum("aaz->z", f_array(1, pt, c, forms))[2:]
        for name, expr in TRACE_CONVENTIONS.items():
            errors[name] = max(errors[name], float(np.max(np.abs(tr - expr(b.t, pt.J0)))))
    name = min(errors, key=errors.get)
    logger.info("trace convention pinned on hopf8: tr F(B xi) = %s (residual %.3e)", name, errors[name])
    return name


def verify_twistor_theorem(b: CurvatureBundle, c: float, grid: list[TwistorPoint] | None = None,
                           tol: float = 1e-9) -> TwistorTheoremReport:
    """
    Evaluate the equivalences between the classes of I_1, I_2 and the base geometry.

    Raises InconsistentEquivalenceError when two sides of an equivalence disagree.
    """
    require_positive_c(c)
    grid = grid if grid is not None else point_grid(b.Q)
    forms = CurvatureForms.from_bundle(b)
    gh1 = gray_hervella(b, 1, c, grid, tol, forms)
    gh2 = gray_hervella(b, 2, c, grid, tol, forms)
    convention = pinned_trace_convention()
    torsion_free = bool(np.max(np.abs(b.T)) < tol)
    balanced = bool(np.max(np.abs(b.t)) < tol)

    checks = gh1.checks + gh2.checks
    notes = [f"twistor: tr F(B xi) = {convention}, pinned on hopf8"]

    checks.append(compare("twistor.I1.hermitian", "F_1(X,Y,Z) = F_1(I_1 X, I_1 Y, Z)",
                          "I_1 is integrable over a QKT space", gh1.residuals["hermitian"], 0.0, tol))

    witness, expected, trace_err = [], [], []
    ricci_condition_err = 0.0
    for pt in grid:
        F2 = f_array(2, pt, c, forms)
        H2 = class_residuals(F2, complex_structure_matrix(2, pt))["hermitian"]
        witness.append(H2[:2, 2:, 2:] - np.transpose(H2[2:, :2, 2:], (1, 0, 2)))
        s = c * np.sqrt(pt.dim)
        expected.append(np.stack([4.0 * (A / s @ pt.J0).T for A in pt.m_basis]))

        tr = np.einsum("aaz->z", f_array(1, pt, c, forms))
        trace_err.append(np.concatenate([tr[:2], tr[2:] - TRACE_CONVENTIONS[convention](b.t, pt.J0)]))

        ricci_condition_err = max(ricci_condition_err, _ricci_twistor_residual(forms, pt, c))

    checks.append(compare(
        "twistor.I2.non_integrability_witness",
        "H_2(A*, B xi, B eta) - H_2(B xi, A*, B eta) = 4 <A J0 xi, eta>",
        "I_2 is never integrable",
        np.stack(witness), np.stack(expected), tol,
    ))
    checks.append(compare(
        "twistor.I2.witness_nonzero", "<A J0 xi, eta> does not vanish identically",
        "the witness is a non-zero tensor",
        float(max(np.max(np.abs(e)) for e in expected) > tol), 1.0, 0.5,
    ))
    checks.append(compare(
        "twistor.trace", f"tr F(A*) = 0, tr F(B xi) = {convention}",
        "trace of F against the torsion 1-form",
        np.stack(trace_err), 0.0, tol,
    ))

    fit = special_homothety_check(b, tol=max(tol, 1e-8))
    instanton = instanton_and_star_ricci(b, tol).instanton
    k = fit.constant
    homothety_at_c = bool(instanton and not fit.degenerate and fit.residual <= tol * max(1.0, abs(k))
                and abs(k - 1.0 / (c * c)) <= tol * max(1.0, abs(k)))
    flags = {
        "I1_hermitian": gh1.holds("hermitian"),
        "I2_g1": gh2.holds("g1"),
        "ricci_form_twistor_condition": ricci_condition_err < tol,
        "special_homothety_at_c": homothety_at_c,
        "I1_semi_kaehler": gh1.holds("semi_kaehler"),
        "I2_semi_kaehler": gh2.holds("semi_kaehler"),
        "balanced": balanced,
        "I1_kaehler": gh1.holds("kaehler"),
        "I2_quasi_kaehler": gh2.holds("quasi_kaehler"),
        "I2_nearly_kaehler": gh2.holds("nearly_kaehler"),
        "I2_almost_kaehler": gh2.holds("almost_kaehler"),
        "torsion_free": torsion_free,
    }
    logger.debug("twistor flags at c=%.4g: %s", c, flags)

    if not flags["I2_g1"] == flags["ricci_form_twistor_condition"] == flags["special_homothety_at_c"]:
        raise InconsistentEquivalenceError(
            "G1 for I_2, the Ricci form condition and the special homothety condition disagree: "
            f"{flags['I2_g1']}, {flags['ricci_form_twistor_condition']}, {flags['special_homothety_at_c']}"
        )
    if not flags["I1_semi_kaehler"] == flags["I2_semi_kaehler"] == balanced:
        raise InconsistentEquivalenceError(
            f"semi-Kaehler flags {flags['I1_semi_kaehler']}, {flags['I2_semi_kaehler']} against balanced {balanced}"
        )
    strong = [name for name in ("I1_kaehler", "I2_quasi_kaehler", "I2_nearly_kaehler", "I2_almost_kaehler")
              if flags[name]]
    if strong and not torsion_free:
        raise InconsistentEquivalenceError(f"{', '.join(strong)} with non-zero torsion")

    checks.append(compare("twistor.g1_equivalence", "I_2 in G1 iff special homothety at c",
                          "G1 twistor condition", float(flags["I2_g1"]), float(homothety_at_c), 0.5))
    checks.append(compare("twistor.semi_kaehler_equivalence", "I_i semi-Kaehler iff t = 0",
                          "semi-Kaehler twistor condition", float(flags["I1_semi_kaehler"]), float(balanced), 0.5))

    if fit.c_squared is not None:
        c_h = float(np.sqrt(fit.c_squared))
        gh = gray_hervella(b, 2, c_h, grid, tol, forms)
        checks.append(compare("twistor.I2.g1_at_homothety", "psi_2 = 0 at c^2 = 1/k",
                              "G1 at the special homothety constant", gh.residuals["g1"], 0.0, tol))
        notes.append(f"twistor: special homothety c^2 = {fit.c_squared:.12g}")
    else:
        notes.append("twistor: no special homothety constant, G1 is not expected at any c")

    return TwistorTheoremReport(c, flags, convention, checks, notes)


def twistor_ricci(b: CurvatureBundle, c: float, grid: list[TwistorPoint] | None = None,
                  tol: float = 1e-9) -> TwistorRicciReport:
    """
    Ricci and *-Ricci tensors of (Z, h_c) over an HKT base, from traces of K.

    Vertical Ric is 1/(n c^2) h_c, the mixed block vanishes and the horizontal
    block is Ric^g; the horizontal *-Ricci block is rho*_{J0} and the vertical
    one is -1/(n c^2) h_c with the sign convention of rho*.
    """
    require_positive_c(c)
    worst = max(float(np.max(np.abs(nabla_endomorphism(b.conn.gamma, J)))) for J in b.Q)
    worst = max(worst, float(np.max(np.abs(b.rho))))
    if worst > tol:
        raise NotHKTError(f"twistor Ricci formulas need an HKT base, residual {worst:.3e}", worst)

    grid = grid if grid is not None else point_grid(b.Q)
    forms = CurvatureForms.from_bundle(b)
    n = b.n
    report = TwistorRicciReport(c)

    ric_v, ric_m, ric_h, pair = [], [], [], []
    star_sym, star_inv, star_h, star_v, star_m = [], [], [], [], []
    for pt in grid:
        K = k_array(pt, c, forms)
        ric, stars = _ricci_pair(K, pt)
        pair.append(K - np.einsum("abcd->cdab", K))
        ric_v.append(ric[:2, :2])
        ric_m.append(ric[:2, 2:])
        ric_h.append(ric[2:, 2:])
        rho_g = 0.5 * np.einsum("xyik,ki->xy", b.Rg, pt.J0)
        for i, star in stars.items():
            I = complex_structure_matrix(i, pt)
            star_sym.append(star - star.T)
            star_inv.append(I.T @ star @ I - star)
            star_h.append(star[2:, 2:] - rho_g @ pt.J0)
            star_v.append(star[:2, :2])
            star_m.append(star[:2, 2:])

    report.checks += [
        compare("twistor.k_pair_symmetry", "K(X,Y,Z,W) = K(Z,W,X,Y)", "pair symmetry of the twistor curvature",
                np.stack(pair), 0.0, tol),
        compare("twistor.ricci.vertical", "Ric(A*, B*) = 1/(n c^2) h_c(A*, B*)", "vertical Ricci block",
                np.stack(ric_v), np.eye(2) / (n * c * c), tol),
        compare("twistor.ricci.mixed", "Ric(A*, B xi) = 0", "mixed Ricci block", np.stack(ric_m), 0.0, tol),
        compare("twistor.ricci.horizontal", "Ric(B xi, B eta) = Ric^g(xi, eta)", "horizontal Ricci block",
                np.stack(ric_h), b.traces_g.ric, tol),
        compare("twistor.star_ricci.symmetric", "rho*(X, Y) = rho*(Y, X)", "twistor *-Ricci is symmetric",
                np.stack(star_sym), 0.0, tol),
        compare("twistor.star_ricci.invariant", "rho*(I X, I Y) = rho*(X, Y)", "twistor *-Ricci is I_i-invariant",
                np.stack(star_inv), 0.0, tol),
        compare("twistor.star_ricci.horizontal", "rho*(B xi, B eta) = rho*_{J0}(xi, eta)",
                "horizontal *-Ricci block", np.stack(star_h), 0.0, tol),
        compare("twistor.star_ricci.vertical", "rho*(A*, B*) = -1/(n c^2) h_c(A*, B*)",
                "vertical *-Ricci block", np.stack(star_v), -np.eye(2) / (n * c * c), tol),
        compare("twistor.star_ricci.mixed", "rho*(A*, B xi) = 0", "mixed *-Ricci block",
                np.stack(star_m), 0.0, tol),
    ]

    _einstein_probes(b, grid, forms, report, tol)
    return report


# --------------------------------------------------------------------------- #
# Internal helpers
# --------------------------------------------------------------------------- #
def _ricci_pair(K: np.ndarray, pt: TwistorPoint) -> tuple[np.ndarray, dict[int, np.ndarray]]:
    """Ric(X, Y) = sum_a K(E_a, X, Y, E_a), rho*_i(X, Y) = -sum_a K(E_a, X, I Y, I E_a)."""
    ric = np.einsum("axya->xy", K)
    stars = {}
    for i in (1, 2):
        I = complex_structure_matrix(i, pt)
        stars[i] = -np.einsum("axpq,py,qa->xy", K, I, I)
    return ric, stars


def _ricci_twistor_residual(forms: CurvatureForms, pt: TwistorPoint, c: float) -> float:
    """
    c^2 (rho_{I0}(J0 xi, eta) + rho_{I0}(xi, J0 eta)) = -<K0 xi, eta> and
    c^2 (rho_{K0}(J0 xi, eta) + rho_{K0}(xi, J0 eta)) = <I0 xi, eta>.
    """
    J0 = pt.J0
    rho_I = 0.5 * forms.pairing(pt.I0)
    rho_K = 0.5 * forms.pairing(pt.K0)
    c2 = c * c
    first = c2 * (J0.T @ rho_I + rho_I @ J0) + pt.K0.T
    second = c2 * (J0.T @ rho_K + rho_K @ J0) - pt.I0.T
    return float(max(np.max(np.abs(first)), np.max(np.abs(second))))


def _einstein_probes(b: CurvatureBundle, grid: list[TwistorPoint], forms: CurvatureForms,
                     report: TwistorRicciReport, tol: float) -> None:
    dim = b.Q.dim
    eye = np.eye(dim)
    scal_g = b.traces_g.scal
    if np.max(np.abs(b.traces_g.ric - scal_g / dim * eye)) < tol and scal_g > tol:
        c_e = float(np.sqrt(4.0 / scal_g))
        report.einstein_c = c_e
        rics = [_ricci_pair(k_array(pt, c_e, forms), pt)[0] for pt in grid]
        report.checks.append(compare(
            "twistor.einstein_probe", "Ric_Z = Scal^g/(4n) h_c at c^2 = 4/Scal^g",
            "twistor space of an Einstein HKT base", np.stack(rics), scal_g / dim * np.eye(dim + 2), tol,
        ))
    else:
        report.notes.append("twistor: base is not Einstein with positive scalar curvature, Einstein probe skipped")

    scal_gq = b.scal_gq
    star_einstein = all(np.max(np.abs(s - np.trace(s) / dim * eye)) < tol for s in b.rho_star)
    if star_einstein and scal_gq > tol:
        c_s = float(np.sqrt(4.0 / scal_gq))
        report.star_einstein_c = c_s
        stars = [_ricci_pair(k_array(pt, c_s, forms), pt)[1][1] for pt in grid]
        report.checks.append(compare(
            "twistor.star_einstein_probe", "rho*_Z = -Scal^g_Q/(4n) h_c at c^2 = 4/Scal^g_Q",
            "twistor space of a *-Einstein HKT base", np.stack(stars), -scal_gq / dim * np.eye(dim + 2), tol,
        ))
    else:
        report.notes.append("twistor: base is not *-Einstein with positive Scal^g_Q, *-Einstein probe skipped")
