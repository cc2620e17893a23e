"""Curvature of QKT connections and the identities relating it to the Riemannian curvature."""

from .bundle import (
    CurvatureBundle,
    ScalarTraces,
    build_bundle,
    curvature,
    curvature_split,
    dT_from_connection,
    ricci_form_commutator_residual,
    ricci_forms,
    scalar_invariants,
)
from .hkt import HKTSummary, hkt_suite, lee_form
from .identities import (
    HomothetyFit,
    InstantonReport,
    ScalarGap,
    form_trace,
    instanton_and_star_ricci,
    scalar_gap_pointwise,
    special_homothety_check,
    verify_levi_civita_relations,
    verify_ricci_form_decomposition,
    verify_ricci_form_rotation,
    verify_scalar_traces,
    verify_torsion_traces,
)

__all__ = [
    "CurvatureBundle",
    "ScalarTraces",
    "build_bundle",
    "curvature",
    "curvature_split",
    "dT_from_connection",
    "ricci_form_commutator_residual",
    "ricci_forms",
    "scalar_invariants",
    "HKTSummary",
    "hkt_suite",
    "lee_form",
    "HomothetyFit",
    "InstantonReport",
    "ScalarGap",
    "form_trace",
    "instanton_and_star_ricci",
    "scalar_gap_pointwise",
    "special_homothety_check",
    "verify_levi_civita_relations",
    "verify_ricci_form_decomposition",
    "verify_ricci_form_rotation",
    "verify_scalar_traces",
    "verify_torsion_traces",
]
