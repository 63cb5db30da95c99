"""``verify``: run the self-verification suites and report pass/fail counts."""

from __future__ import annotations

import argparse
import json
import logging

from ..config import RunOptions
from ..suites import SUITES, run_suite
from . import EXIT_CERTIFICATION, CommandOutcome

logger = logging.getLogger(__name__)


def register(subparsers, common: argparse.ArgumentParser) -> None:
    parser = subparsers.add_parser("verify", parents=[common], help="run the self-verification suites")
    parser.add_argument("suite", choices=SUITES + ("all",), help="suite to run")
    parser.add_argument("--quick", action="store_true", default=None, help="reduced ranges")
    parser.set_defaults(handler=handle)


async def handle(args: argparse.Namespace, options: RunOptions) -> CommandOutcome:
    results = run_suite(args.suite, options.ctx, quick=bool(args.quick))
    for result in results:
        if options.json:
            print(json.dumps({"suite": result.suite, "check": result.name, "passed": result.passed, "detail": result.detail}))
        else:
            status = "PASS" if result.passed else "FAIL"
            print(f"{status} [{result.suite}] {result.name}" + (f"  ({result.detail})" if result.detail else ""))
    failed = sum(1 for result in results if not result.passed)
    passed = len(results) - failed
    print(json.dumps({"passed": passed, "failed": failed}) if options.json else f"{passed} passed, {failed} failed")
    if failed:
        logger.warning("%d verification check(s) failed", failed)
        return CommandOutcome(EXIT_CERTIFICATION)
    return CommandOutcome()
