"""Subcommands of the ``rademacher`` command line.

One module per subcommand, each exposing ``register(subparsers, common)``
which adds its parser and binds an async ``handle(args, options)`` returning a
:class:`CommandOutcome`.  The entry point in :mod:`rademacher.main` owns
logging, the store and the translation of errors into exit codes.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import List

from ..exceptions import DomainError
from ..records import ReportRecord

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_PRECISION = 3
EXIT_CERTIFICATION = 4


@dataclass
class CommandOutcome:
    """Exit code plus the records the store should keep."""

    code: int = EXIT_OK
    reports: List[ReportRecord] = field(default_factory=list)


def require(args, name: str):
    """Return ``args.<name>``, which may come from the flag or the config file."""
    value = getattr(args, name, None)
    if value is None:
        raise DomainError(f"--{name.replace('_', '-')} is required")
    return value


def elapsed_ms(start: float) -> float:
    return (time.perf_counter() - start) * 1000.0
