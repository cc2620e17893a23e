"""Twistor space of a QKT manifold: the metrics h_c, the structures I_1, I_2 and their curvature."""

from .classes import (
    CLASSES,
    TRACE_CONVENTIONS,
    GrayHervellaReport,
    TwistorRicciReport,
    TwistorTheoremReport,
    class_residuals,
    gray_hervella,
    pinned_trace_convention,
    twistor_ricci,
    verify_twistor_theorem,
)
from .point import (
    TwistorPoint,
    TwistorVector,
    complex_structure_matrix,
    h_c,
    i_action,
    make_point,
    orthonormal_coords,
    point_grid,
)
from .tensors import CurvatureForms, f_array, f_tensor, k_array, k_tensor

__all__ = [
    "CLASSES",
    "TRACE_CONVENTIONS",
    "GrayHervellaReport",
    "TwistorRicciReport",
    "TwistorTheoremReport",
    "class_residuals",
    "gray_hervella",
    "pinned_trace_convention",
    "twistor_ricci",
    "verify_twistor_theorem",
    "TwistorPoint",
    "TwistorVector",
    "complex_structure_matrix",
    "h_c",
    "i_action",
    "make_point",
    "orthonormal_coords",
    "point_grid",
    "CurvatureForms",
    "f_array",
    "f_tensor",
    "k_array",
    "k_tensor",
]
