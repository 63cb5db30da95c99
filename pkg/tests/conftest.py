from __future__ import annotations

import pytest

from rademacher import kloosterman
from rademacher.precision import PrecisionContext, default_context


@pytest.fixture
def ctx() -> PrecisionContext:
    return default_context()


@pytest.fixture
def empty_multiplier_cache(monkeypatch):
    """Isolate tests that seed or inspect the multiplier memo."""
    monkeypatch.setattr(kloosterman, "_multipliers", {})
    return kloosterman._multipliers


def partitions_of(n: int, largest: int | None = None):
    """Brute-force enumeration of the partitions of ``n`` into parts <= ``largest``."""
    if largest is None:
        largest = n
    if n == 0:
        yield ()
        return
    for part in range(min(n, largest), 0, -1):
        for rest in partitions_of(n - part, part):
            yield (part,) + rest
