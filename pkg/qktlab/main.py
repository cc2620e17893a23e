import argparse
import logging
import sys

from qktlab.controllers.main_controller import MainController
from qktlab.services.suites import SUITES


def parse_args(argv=None):
    p = argparse.ArgumentParser(
        prog="qktlab",
        description="Numerical checks of QKT and HKT identities on left-invariant metric Lie algebras",
    )

    # Note: defaults here are the source of truth for default values

    # show residuals, ranks and solver details
    p.add_argument('--debug',
                   default=False,
                   action='store_true',
                   help='Log at DEBUG level')

    sub = p.add_subparsers(dest="command", required=True)

    # built-in models with their classification
    sub.add_parser('list', help='List the built-in models and classify them')

    verify = sub.add_parser('verify', help='Run a verification suite and emit a JSON report')
    classify = sub.add_parser('classify', help='Gray-Hervella table of I1 and I2 on the twistor space')

    for cmd in (verify, classify):
        # built-in name or path to a JSON model file
        cmd.add_argument('--model',
                         required=True,
                         help='Built-in model name or model file path')

        # absolute tolerance of each identity check
        cmd.add_argument('--tol',
                         type=float,
                         default=1e-9,
                         help='Tolerance of the identity checks')

        # homothety parameter of the twistor metric h_c
        cmd.add_argument('--c',
                         type=float,
                         default=1.0,
                         help='Twistor metric parameter c > 0')

        # seeds the random twistor points
        cmd.add_argument('--seed',
                         type=int,
                         default=42,
                         help='Seed of the twistor point grid')

        cmd.add_argument('--out',
                         default=None,
                         help='Write the JSON report here instead of stdout')

    verify.add_argument('--suite',
                        choices=SUITES,
                        default="all",
                        help='Which identities to check')

    return p.parse_args(argv)


def main(argv=None) -> int:
    args = parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.debug else logging.WARNING,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )
    return MainController(args)


if __name__ == "__main__":
    sys.exit(main())
