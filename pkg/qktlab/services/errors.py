# Author: RD7
# Purpose: Exception types raised by the workbench services
# Created: 2025-10-04

from __future__ import annotations


class QKTLabError(Exception):
    """Base class; carries the residual that triggered the failure when there is one."""

    def __init__(self, message: str, residual: float | None = None):
        super().__init__(message)
        self.residual = residual


# --------------------------------------------------------------------------- #
# Input data
# --------------------------------------------------------------------------- #
class ParseError(QKTLabError, ValueError):
    pass


class JacobiViolationError(QKTLabError, ValueError):
    pass


class TripleViolationError(QKTLabError, ValueError):
    pass


class NotComplexStructureError(QKTLabError, ValueError):
    """J is not orthogonal or does not square to -id."""


class DimensionTooSmallError(QKTLabError, ValueError):
    pass


class UnknownModelError(QKTLabError, ValueError):
    pass


class ModelExpectationError(QKTLabError, ValueError):
    """A model file declared a classification the engine does not confirm."""


# --------------------------------------------------------------------------- #
# Connection solvers
# --------------------------------------------------------------------------- #
class InfeasibleError(QKTLabError, RuntimeError):
    pass


class NonUniqueError(QKTLabError, RuntimeError):
    def __init__(self, message: str, nullity: int, residual: float | None = None):
        super().__init__(message, residual)
        self.nullity = nullity


class NonUniqueTorsionError(NonUniqueError):
    pass


class NotHKTError(QKTLabError, RuntimeError):
    pass


class AlphaDependentError(QKTLabError, RuntimeError):
    pass


class NotQuaternionicError(QKTLabError, RuntimeError):
    pass


# --------------------------------------------------------------------------- #
# Curvature and twistor verification
# --------------------------------------------------------------------------- #
class SplitFailsError(QKTLabError, RuntimeError):
    pass


class InconsistentCriteriaError(QKTLabError, RuntimeError):
    pass


class InconsistentEquivalenceError(QKTLabError, RuntimeError):
    pass
