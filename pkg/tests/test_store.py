from __future__ import annotations

import pytest

from rademacher import kloosterman
from rademacher.db import open_store
from rademacher.kloosterman import known_multipliers, multiplier_exponent, seed_multipliers
from rademacher.records import ReportRecord
from rademacher.repo import add_reports, list_reports, load_multipliers, save_multipliers


@pytest.fixture
def Session(tmp_path):
    return open_store(f"sqlite:///{tmp_path / 'store.sqlite'}")


def test_multipliers_are_inserted_once(Session):
    with Session() as db:
        assert save_multipliers(db, {(2, 1): 22, (3, 1): 5}) == 2
        # stored exponents win
        assert save_multipliers(db, {(2, 1): 0, (5, 2): 30}) == 1
        assert load_multipliers(db) == [(2, 1, 22), (3, 1, 5), (5, 2, 6)]


def test_store_round_trip_seeds_the_memo(Session, ctx, empty_multiplier_cache):
    exponent = multiplier_exponent(7, 3, ctx)
    with Session() as db:
        save_multipliers(db, known_multipliers())
    kloosterman._multipliers.clear()
    with Session() as db:
        assert seed_multipliers(load_multipliers(db)) == 1
    assert known_multipliers() == {(7, 3): exponent}


def test_reports(Session):
    records = [
        ReportRecord.exact("partitions --r 2 --n 2", 2, 2, 5, 0.5),
        ReportRecord("partitions --r 1 --n 4", 1, 4, "4.98", "0.0", "5", "0.02", 32, True, "3.000"),
    ]
    with Session() as db:
        assert add_reports(db, records) == 2
        assert list_reports(db) == records
        assert list_reports(db, r=1) == records[1:]
        assert list_reports(db, r=24) == []
