"""Entry point for the ``rademacher`` command line.

Parses the subcommand, merges flags with the ``--config`` file and the
environment, configures logging, opens the optional store and runs the
command's async handler.  Library errors become exit codes here and nowhere
else:

    2  usage or domain error
    3  precision could not be certified after the last escalation
    4  certification mismatch or a failed verification check

Run with ``python -m rademacher.main partitions --r 24 --n 1``.
"""

from __future__ import annotations

import argparse
import asyncio
import logging
import sys
from typing import Optional, Sequence

from .commands import EXIT_CERTIFICATION, EXIT_PRECISION, EXIT_USAGE, CommandOutcome
from .commands import coeff, kloosterman, partitions, verify
from .config import RunOptions, resolve_options, settings
from .db import open_store
from .exceptions import CertificationError, DomainError, PrecisionError
from .kloosterman import known_multipliers, seed_multipliers
from .repo import add_reports, load_multipliers, save_multipliers

logger = logging.getLogger(__name__)

LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"


def build_parser() -> argparse.ArgumentParser:
    # every flag defaults to None so that --config and the environment can fill it
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--bits", type=int, help="working precision in bits (default 128)")
    common.add_argument("--c-max", type=int, help="fixed truncation of every sum over c")
    common.add_argument("--threads", type=int, help="worker processes for batches (default 1)")
    common.add_argument("--config", help="key=value file mirroring the flags")
    common.add_argument("--db", help="SQLAlchemy URL of the result store")
    common.add_argument("--log-level", help="DEBUG, INFO, WARNING or ERROR")
    common.add_argument("--json", action="store_true", default=None, help="one JSON object per line")
    common.add_argument("--csv", action="store_true", default=None, help="CSV output")
    common.add_argument("--terms", action="store_true", default=None, help="include the per-c term table")

    parser = argparse.ArgumentParser(
        prog="rademacher",
        description="r-color partition numbers from Poincare-series coefficients.",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)
    for command in (partitions, kloosterman, coeff, verify):
        command.register(subparsers, common)
    return parser


def configure_logging(level: str) -> None:
    logging.basicConfig(level=getattr(logging, level), format=LOG_FORMAT, stream=sys.stderr, force=True)


async def run(args: argparse.Namespace, options: RunOptions) -> CommandOutcome:
    """Run the command, seeding and saving the multiplier cache when a store is configured."""
    if not options.database_url:
        return await args.handler(args, options)

    Session = open_store(options.database_url)
    with Session() as db:
        seeded = seed_multipliers(load_multipliers(db))
    logger.info("loaded %d multiplier exponents from the store", seeded)

    outcome = await args.handler(args, options)

    with Session() as db:
        saved = save_multipliers(db, known_multipliers())
        stored = add_reports(db, outcome.reports)
    logger.info("stored %d new multiplier exponents and %d reports", saved, stored)
    return outcome


async def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse has already printed the usage message
        return int(exc.code or 0)

    try:
        options = resolve_options(args, settings)
        configure_logging(options.log_level)
        logger.info("%s started at %d bits", args.command, options.ctx.bits)
        outcome = await run(args, options)
    except DomainError as exc:
        print(f"rademacher: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except PrecisionError as exc:
        logger.error("%s", exc)
        print(f"rademacher: precision failure: {exc}", file=sys.stderr)
        return EXIT_PRECISION
    except CertificationError as exc:
        logger.error("%s", exc)
        print(f"rademacher: certification failure: {exc}", file=sys.stderr)
        return EXIT_CERTIFICATION
    logger.info("%s finished with exit code %d", args.command, outcome.code)
    return outcome.code


def cli() -> None:
    sys.exit(asyncio.run(main()))


if __name__ == "__main__":
    cli()
