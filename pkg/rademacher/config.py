"""Configuration for the rademacher command-line tool.

Environment variables are loaded from a ``.env`` file via python-dotenv and
collected in a single ``settings`` instance.  A run can additionally name a
key=value file with ``--config``; its keys are the long flag names without
the leading dashes (``c-max`` and ``c_max`` both work).  Precedence is

    command-line flag > --config file > environment / .env > built-in default

Examples
--------

A ``.env`` file in the working directory::

    RADEMACHER_BITS=192
    RADEMACHER_DATABASE_URL=sqlite:///rademacher.sqlite
    RADEMACHER_LOG_LEVEL=INFO

and a run configuration passed as ``--config sweep.cfg``::

    r=12
    n-max=60
    mode=both
"""

from __future__ import annotations

import argparse
import logging
import os
from dataclasses import dataclass, field
from typing import Callable, Dict, Optional

from dotenv import dotenv_values, load_dotenv

from .exceptions import DomainError
from .precision import PrecisionContext

# Load .env at import time so that ``settings`` sees it wherever it is imported.
load_dotenv()

LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR")


def _env_int(name: str, default: Optional[int]) -> Optional[int]:
    """Read an integer variable; empty or malformed values fall back to ``default``."""
    raw = os.getenv(name, "").strip()
    if not raw:
        return default
    try:
        return int(raw)
    except ValueError:
        # ignore malformed values
        return default


@dataclass
class Settings:
    """Environment-level defaults."""

    BITS: int = field(default_factory=lambda: _env_int("RADEMACHER_BITS", 128))
    C_MAX: Optional[int] = field(default_factory=lambda: _env_int("RADEMACHER_C_MAX", None))
    C_MAX_CAP: int = field(default_factory=lambda: _env_int("RADEMACHER_C_MAX_CAP", 10**6))
    THREADS: int = field(default_factory=lambda: _env_int("RADEMACHER_THREADS", 1))
    DATABASE_URL: str = field(default_factory=lambda: os.getenv("RADEMACHER_DATABASE_URL", "").strip())
    LOG_LEVEL: str = field(default_factory=lambda: os.getenv("RADEMACHER_LOG_LEVEL", "WARNING").strip().upper())


settings = Settings()


def _parse_bool(raw: str) -> bool:
    lowered = raw.strip().lower()
    if lowered in ("1", "true", "yes", "on"):
        return True
    if lowered in ("0", "false", "no", "off"):
        return False
    raise ValueError(f"not a boolean: {raw!r}")


# how config-file strings become argument values; anything else stays a string
CONVERTERS: Dict[str, Callable[[str], object]] = {
    "bits": int,
    "c_max": int,
    "threads": int,
    "r": int,
    "n": int,
    "n_max": int,
    "m24": int,
    "n24": int,
    "c": int,
    "two_k": int,
    "json": _parse_bool,
    "csv": _parse_bool,
    "terms": _parse_bool,
    "quick": _parse_bool,
}

# keys that only steer the parser itself
_RESERVED = {"command", "handler", "config"}


def load_config_file(path: str) -> Dict[str, str]:
    """Read a key=value file with ``dotenv_values``; keys are normalised to argument names."""
    if not os.path.isfile(path):
        raise DomainError(f"config file {path!r} does not exist")
    values = dotenv_values(path)
    out: Dict[str, str] = {}
    for key, value in values.items():
        name = key.strip().lstrip("-").replace("-", "_").lower()
        if value is None:
            raise DomainError(f"config key {key!r} has no value")
        out[name] = value
    return out


def apply_config(args: argparse.Namespace, values: Dict[str, str]) -> argparse.Namespace:
    """Fill every argument left unset on the command line from ``values``."""
    known = set(vars(args)) - _RESERVED
    for name, raw in values.items():
        if name not in known:
            raise DomainError(f"unknown config key {name!r}")
        if getattr(args, name) is not None:
            continue
        convert = CONVERTERS.get(name, str)
        try:
            setattr(args, name, convert(raw))
        except ValueError as exc:
            raise DomainError(f"config key {name!r}: {exc}") from exc
    return args


@dataclass(frozen=True)
class RunOptions:
    """Everything a command needs besides its own arguments."""

    ctx: PrecisionContext
    c_max: Optional[int]
    threads: int
    database_url: str
    log_level: str
    json: bool
    csv: bool
    terms: bool


def resolve_options(args: argparse.Namespace, env: Optional[Settings] = None) -> RunOptions:
    """Merge the parsed flags, the ``--config`` file and the environment."""
    env = env or settings
    if getattr(args, "config", None):
        apply_config(args, load_config_file(args.config))

    def pick(name: str, fallback):
        value = getattr(args, name, None)
        return fallback if value is None else value

    bits = pick("bits", env.BITS)
    c_max = pick("c_max", env.C_MAX)
    threads = pick("threads", env.THREADS)
    log_level = str(pick("log_level", env.LOG_LEVEL)).upper()
    if log_level not in LOG_LEVELS:
        raise DomainError(f"log level must be one of {', '.join(LOG_LEVELS)}, got {log_level!r}")
    if c_max is not None and c_max < 1:
        raise DomainError(f"--c-max must be positive, got {c_max}")
    if threads < 1:
        raise DomainError(f"--threads must be positive, got {threads}")
    ctx = PrecisionContext(bits=bits, c_max_cap=env.C_MAX_CAP)
    logging.getLogger(__name__).debug("resolved context %s", ctx)
    return RunOptions(
        ctx=ctx,
        c_max=c_max,
        threads=threads,
        database_url=pick("db", env.DATABASE_URL) or "",
        log_level=log_level,
        json=bool(pick("json", False)),
        csv=bool(pick("csv", False)),
        terms=bool(pick("terms", False)),
    )
