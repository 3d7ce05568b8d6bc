# Copyright (C) 2021 Canonical Ltd
#
# This program is free software: you can redistribute it and/or modify
# it under the terms of the GNU General Public License version 3 as
# published by the Free Software Foundation.
#
# This program is distributed in the hope that it will be useful,
# but WITHOUT ANY WARRANTY; without even the implied warranty of
# MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
# GNU General Public License for more details.
#
# You should have received a copy of the GNU General Public License
# along with this program.  If not, see <http://www.gnu.org/licenses/>.

"""Command line entry point ``kgnr``."""
import argparse
import logging
import pathlib
import sys
from typing import List, Optional

from kgnr import __version__
from kgnr.errors import (
    AcceptanceError,
    ConfigurationError,
    GuardViolationError,
    KGNRError,
    UnsupportedRegimeError,
)
from kgnr.harness import (
    CHECKS,
    EXPERIMENTS,
    emit_outputs,
    load_config,
    run_acceptance,
    run_experiment,
    verify,
)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_GUARD = 2
EXIT_ACCEPTANCE = 3


def _configure_logging(*, verbose: bool, quiet: bool) -> None:
    level = logging.DEBUG if verbose else logging.WARNING if quiet else logging.INFO
    handler = logging.StreamHandler()
    handler.setFormatter(logging.Formatter("%(asctime)s %(levelname)s %(name)s: %(message)s"))
    package_logger = logging.getLogger("kgnr")
    package_logger.handlers = [handler]
    package_logger.setLevel(level)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kgnr",
        description="Non-relativistic limit convergence studies for Klein-Gordon equations.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    verbosity = parser.add_mutually_exclusive_group()
    verbosity.add_argument("-v", "--verbose", action="store_true", help="Log debug detail")
    verbosity.add_argument("-q", "--quiet", action="store_true", help="Log warnings only")

    commands = parser.add_subparsers(dest="command", required=True)

    run = commands.add_parser("run", help="Run the experiment described by a config file")
    run.add_argument("config", type=pathlib.Path, help="JSON (or YAML) experiment document")
    run.add_argument(
        "--output-dir",
        type=pathlib.Path,
        default=None,
        help="Directory for results.csv, results.json and plot.gp (overrides the config)",
    )

    commands.add_parser("list-experiments", help="List the supported experiments")

    check = commands.add_parser("verify", help="Run the acceptance suite")
    check.add_argument(
        "--check",
        dest="checks",
        action="append",
        choices=list(CHECKS),
        help="Run only the named check (repeatable)",
    )
    return parser


def _run(args: argparse.Namespace) -> int:
    config = load_config(args.config)
    table = run_experiment(config)
    emit_outputs(table, config, output_dir=args.output_dir)
    for quantity in table.quantities():
        order = table.slope_of(quantity)
        if order is not None:
            print(f"{quantity}: order {order:.3f}")
    return EXIT_OK


def _list_experiments() -> int:
    for kind, experiment in EXPERIMENTS.items():
        print(f"{kind.value}: {experiment.describe()}")
    return EXIT_OK


def _verify(args: argparse.Namespace) -> int:
    results = run_acceptance(args.checks)
    for result in results:
        status = "PASS" if result.passed else "FAIL"
        print(f"{status} {result.name} ({result.runtime_s:.1f}s): {result.detail}")
    verify(results)
    return EXIT_OK


def main(argv: Optional[List[str]] = None) -> int:
    """Entry point.

    :returns: 0 on success, 1 on configuration errors, 2 on reference guard
        violations, 3 on acceptance failures.
    """
    args = _build_parser().parse_args(argv)
    _configure_logging(verbose=args.verbose, quiet=args.quiet)

    try:
        if args.command == "run":
            return _run(args)
        if args.command == "list-experiments":
            return _list_experiments()
        return _verify(args)
    except GuardViolationError as error:
        logger.error("%s", error.reason)
        return EXIT_GUARD
    except AcceptanceError as error:
        logger.error("%s", error.reason)
        return EXIT_ACCEPTANCE
    except (ConfigurationError, UnsupportedRegimeError) as error:
        logger.error("%s", error.reason)
        return EXIT_CONFIG
    except KGNRError as error:
        logger.error("%r", error)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
