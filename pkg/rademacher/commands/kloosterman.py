"""``kloosterman``: one generalized Kloosterman sum A(m, n; c)."""

from __future__ import annotations

import argparse
import logging
import time

from ..config import RunOptions
from ..kloosterman import RationalIndex24, kloosterman_sum
from ..records import KloostermanRecord
from . import CommandOutcome, elapsed_ms, require

logger = logging.getLogger(__name__)


def register(subparsers, common: argparse.ArgumentParser) -> None:
    parser = subparsers.add_parser(
        "kloosterman",
        parents=[common],
        help="evaluate A(m, n; c) for m = m24/24, n = n24/24",
    )
    parser.add_argument("--m24", type=int, help="24 m")
    parser.add_argument("--n24", type=int, help="24 n")
    parser.add_argument("--c", type=int, help="modulus c >= 1")
    parser.set_defaults(handler=handle)


async def handle(args: argparse.Namespace, options: RunOptions) -> CommandOutcome:
    m24, n24, c = require(args, "m24"), require(args, "n24"), require(args, "c")
    start = time.perf_counter()
    value = kloosterman_sum(RationalIndex24(m24), RationalIndex24(n24), c, options.ctx)
    record = KloostermanRecord.from_value(
        f"kloosterman --m24 {m24} --n24 {n24} --c {c}", m24, n24, value, options.ctx.bits, elapsed_ms(start)
    )
    logger.info("A(%d/24, %d/24; %d) over %d residues", m24, n24, c, value.term_count)
    print(record.to_json() if options.json else record.to_text())
    return CommandOutcome()
