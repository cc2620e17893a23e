# Author: RD7
# Purpose: Configuration settings for the QKT workbench
# Created: 2025-10-03

from __future__ import annotations

from dataclasses import dataclass, field

# Note: The source of truth for configurable default values is in the argument parser
#       The source of truth for non-configurable default values is in the dataclass definitions


@dataclass(slots=True)
class ToleranceCfg:
    # absolute error accepted by the identity checks
    check           : float = 1e-9

    # Jacobi identity and quaternion relations of the input data
    structure       : float = 1e-12

    # least-squares residual accepted by the connection solvers
    solve           : float = 1e-9

    # relative residual of the best-fit constant in the special homothety test
    homothety       : float = 1e-8


@dataclass(slots=True)
class TwistorCfg:
    c               : float = 1.0
    seed            : int = 42

    # the 6 axis points are always included
    n_random_points : int = 20


@dataclass(slots=True)
class RunCfg:
    command         : str | None = None
    model           : str | None = None
    suite           : str = "all"
    out             : str | None = None
    debug           : bool = False


@dataclass(slots=True)
class Config:
    tol     : ToleranceCfg = field(default_factory=ToleranceCfg)
    twistor : TwistorCfg = field(default_factory=TwistorCfg)
    run     : RunCfg = field(default_factory=RunCfg)
