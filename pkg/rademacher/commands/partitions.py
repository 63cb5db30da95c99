"""``partitions``: p_r(n) analytically, exactly, or both with certification.

Batches (``--n-max``) are evaluated in order with ``--threads 1``; with more
threads each (r, n) runs in its own worker process, because mpmath keeps its
working precision in process-global state.
"""

from __future__ import annotations

import argparse
import asyncio
import csv
import logging
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import List, Optional, Tuple

from ..config import RunOptions
from ..exact import p_r_exact_table
from ..exceptions import DomainError
from ..partitions import METHOD_CLASSICAL, METHOD_POINCARE, PartitionRequest, p1_classical, p_r_analytic
from ..precision import PrecisionContext
from ..records import TERM_FIELDS, ReportRecord, term_rows, write_records_csv
from . import EXIT_CERTIFICATION, CommandOutcome, elapsed_ms, require

logger = logging.getLogger(__name__)

MODES = ("analytic", "exact", "both")
METHODS = (METHOD_POINCARE, METHOD_CLASSICAL)


@dataclass(frozen=True)
class Evaluation:
    """A record plus its per-c rows (strings only, so it crosses process boundaries)."""

    record: ReportRecord
    rows: Tuple[dict, ...] = ()


def register(subparsers, common: argparse.ArgumentParser) -> None:
    parser = subparsers.add_parser("partitions", parents=[common], help="r-color partition numbers p_r(n)")
    parser.add_argument("--r", type=int, help="number of colors, 1..24")
    parser.add_argument("--n", type=int, help="single n >= 0")
    parser.add_argument("--n-max", type=int, help="sweep n = 1..n_max instead of a single n")
    parser.add_argument("--mode", choices=MODES, help="analytic (default), exact, or both (certified)")
    parser.add_argument("--method", choices=METHODS, help="poincare (default) or the r = 1 sinh-kernel series")
    parser.set_defaults(handler=handle)


def evaluate(
    r: int,
    n: int,
    mode: str,
    method: str,
    ctx: PrecisionContext,
    c_max: Optional[int],
    keep_terms: bool,
) -> Evaluation:
    """One (r, n); a top-level function so that worker processes can run it."""
    cmd = f"partitions --r {r} --n {n} --mode {mode} --method {method}"
    start = time.perf_counter()
    if mode == "exact":
        return Evaluation(ReportRecord.exact(cmd, r, n, p_r_exact_table(r, n)[n], elapsed_ms(start)))
    certify = mode == "both"
    if method == METHOD_CLASSICAL:
        count = p1_classical(n, ctx, certify=certify, c_max=c_max, keep_terms=keep_terms)
    else:
        count = p_r_analytic(PartitionRequest(r, n, ctx), certify=certify, c_max=c_max, keep_terms=keep_terms)
    record = ReportRecord.from_count(cmd, count, elapsed_ms(start))
    rows = tuple(term_rows(count.terms, count.bits)) if count.terms else ()
    return Evaluation(record, rows)


def _targets(args: argparse.Namespace) -> List[int]:
    n, n_max = getattr(args, "n", None), getattr(args, "n_max", None)
    if n is not None and n_max is not None:
        raise DomainError("give either --n or --n-max, not both")
    if n_max is not None:
        if n_max < 1:
            raise DomainError(f"--n-max must be >= 1, got {n_max}")
        return list(range(1, n_max + 1))
    if n is None:
        raise DomainError("--n or --n-max is required")
    if n < 0:
        raise DomainError(f"--n must be >= 0, got {n}")
    return [n]


def _choice(args: argparse.Namespace, name: str, choices: Tuple[str, ...], default: str) -> str:
    # config-file values bypass argparse's own choices check
    value = getattr(args, name, None) or default
    if value not in choices:
        raise DomainError(f"--{name} must be one of {', '.join(choices)}, got {value!r}")
    return value


async def _run_batch(
    r: int, targets: List[int], mode: str, method: str, options: RunOptions
) -> List[Evaluation]:
    jobs = [(r, n, mode, method, options.ctx, options.c_max, options.terms) for n in targets]
    if options.threads == 1 or len(jobs) == 1:
        return [evaluate(*job) for job in jobs]
    loop = asyncio.get_running_loop()
    with ProcessPoolExecutor(max_workers=options.threads) as pool:
        return list(await asyncio.gather(*(loop.run_in_executor(pool, evaluate, *job) for job in jobs)))


def _emit(evaluations: List[Evaluation], options: RunOptions) -> None:
    records = [e.record for e in evaluations]
    if options.csv and options.terms:
        writer = csv.DictWriter(sys.stdout, fieldnames=["r", "n", *TERM_FIELDS])
        writer.writeheader()
        for e in evaluations:
            for row in e.rows:
                writer.writerow({"r": e.record.r, "n": e.record.n, **row})
    elif options.csv:
        write_records_csv(records, sys.stdout)
    elif options.json:
        for record in records:
            print(record.to_json())
    else:
        for e in evaluations:
            print(e.record.to_text())
            for row in e.rows:
                print(f"  c = {row['c']}: {row['term_re']}  partial {row['partial_re']}")


async def handle(args: argparse.Namespace, options: RunOptions) -> CommandOutcome:
    r = require(args, "r")
    if not 1 <= r <= 24:
        raise DomainError(f"--r must lie in [1, 24], got {r}")
    targets = _targets(args)
    mode = _choice(args, "mode", MODES, "analytic")
    method = _choice(args, "method", METHODS, METHOD_POINCARE)
    if method == METHOD_CLASSICAL and r != 1:
        raise DomainError("the sinh-kernel series only covers r = 1")

    logger.info("partitions r = %d, %d value(s), mode %s, method %s", r, len(targets), mode, method)
    evaluations = await _run_batch(r, targets, mode, method, options)
    _emit(evaluations, options)

    records = [e.record for e in evaluations]
    failures = [rec.n for rec in records if rec.certified is False]
    if failures:
        logger.warning("certification failed for r = %d at n = %s", r, failures)
        return CommandOutcome(EXIT_CERTIFICATION, records)
    return CommandOutcome(reports=records)
