"""``coeff``: a raw Fourier coefficient of a Poincare series."""

from __future__ import annotations

import argparse
import logging
import sys
import time

from ..config import RunOptions
from ..kloosterman import RationalIndex24
from ..poincare import WeightIndexPair, poincare_coefficient
from ..records import CoefficientRecord, term_rows, write_terms_csv
from . import CommandOutcome, elapsed_ms, require

logger = logging.getLogger(__name__)


def register(subparsers, common: argparse.ArgumentParser) -> None:
    parser = subparsers.add_parser(
        "coeff",
        parents=[common],
        help="coefficient of q^(n24/24) in P_(two_k/2, m24/24)",
    )
    parser.add_argument("--two-k", type=int, help="twice the weight, >= 5")
    parser.add_argument("--m24", type=int, help="24 m")
    parser.add_argument("--n24", type=int, help="24 n, > 0 and congruent to m24 mod 24")
    parser.set_defaults(handler=handle)


async def handle(args: argparse.Namespace, options: RunOptions) -> CommandOutcome:
    two_k, m24, n24 = require(args, "two_k"), require(args, "m24"), require(args, "n24")
    pair = WeightIndexPair(two_k, RationalIndex24(m24))
    start = time.perf_counter()
    result = poincare_coefficient(pair, RationalIndex24(n24), options.ctx, c_max=options.c_max, keep_terms=options.terms)
    cmd = f"coeff --two-k {two_k} --m24 {m24} --n24 {n24}"
    record = CoefficientRecord.from_result(cmd, two_k, m24, n24, result, options.ctx.bits, elapsed_ms(start))
    logger.info("%s summed to c = %d", cmd, result.c_max)

    if options.csv and result.terms is not None:
        write_terms_csv(result.terms, options.ctx.bits, sys.stdout)
    elif options.json:
        print(record.to_json())
    else:
        print(record.to_text())
        for row in term_rows(result.terms or (), options.ctx.bits):
            print(f"  c = {row['c']}: {row['term_re']} + {row['term_im']}i  partial {row['partial_re']}")
    return CommandOutcome()
