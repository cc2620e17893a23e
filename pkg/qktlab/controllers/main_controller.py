# Author: RD7
# Purpose: Main controller for the QKT workbench command line
# Created: 2025-10-16

import logging
from pathlib import Path
from typing import Callable

from qktlab.services.config import Config
from qktlab.services.errors import QKTLabError, UnknownModelError
from qktlab.services.models import Model, builtin, builtin_names, check_expectation, load, validate
from qktlab.services.report import Report
from qktlab.services.suites import SuiteRunner

logger = logging.getLogger(__name__)

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_ERROR = 2


def build_config(args):
    cfg = Config()

    # run settings
    cfg.run.command = args.command
    cfg.run.model = getattr(args, "model", None)
    cfg.run.suite = getattr(args, "suite", cfg.run.suite)
    cfg.run.out = getattr(args, "out", None)
    cfg.run.debug = args.debug

    # tolerance of the identity checks
    if getattr(args, "tol", None) is not None:
        cfg.tol.check = args.tol

    # twistor settings
    if getattr(args, "c", None) is not None:
        cfg.twistor.c = args.c
    if getattr(args, "seed", None) is not None:
        cfg.twistor.seed = args.seed

    return cfg


def resolve_model(name: str, cfg: Config) -> Model:
    """Built-in name first, then a model file path; file expectations are enforced."""
    if name in builtin_names():
        return builtin(name)

    path = Path(name)
    if not path.is_file():
        raise UnknownModelError(
            f"unknown model {name!r}: not a built-in ({', '.join(builtin_names())}) and not a file"
        )
    model = load(path, cfg.tol.structure)
    check_expectation(model, validate(model, cfg.tol.solve, cfg.tol.structure))
    return model


def MainController(args, echo: Callable[[str], None] = print) -> int:
    # Build configuration from command line arguments
    cfg = build_config(args)

    try:
        if cfg.run.command == "list":
            for name in builtin_names():
                v = validate(builtin(name), cfg.tol.solve, cfg.tol.structure)
                echo(f"{name:<8} {v.label}")
            return EXIT_PASS

        model = resolve_model(cfg.run.model, cfg)
        runner = SuiteRunner(cfg, model)
        if cfg.run.command == "classify":
            report = runner.classify()
        else:
            report = runner.run(cfg.run.suite)
    except (QKTLabError, ValueError) as exc:
        logger.debug("run aborted", exc_info=True)
        echo(f"error: {exc}")
        return EXIT_ERROR

    _emit(report, cfg, echo)
    return EXIT_PASS if report.passed else EXIT_FAIL


def _emit(report: Report, cfg: Config, echo: Callable[[str], None]) -> None:
    if cfg.run.out:
        path = report.write(cfg.run.out)
        logger.info("report written to %s", path)
    else:
        echo(report.to_json())

    for check in report.failures():
        echo(f"FAIL {check.id}: lhs={check.lhs!r} rhs={check.rhs!r} abs_err={check.abs_err:.3e}")
    echo(f"{report.model}/{report.suite}: {len(report.checks) - len(report.failures())}/{len(report.checks)} checks passed")
