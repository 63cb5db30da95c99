"""Repository layer for the result store.

All database access goes through these functions so that the commands stay
focused on computation.
"""

from __future__ import annotations

from typing import Iterable, List, Mapping, Optional, Tuple

from sqlalchemy import select
from sqlalchemy.orm import Session

from .models import EtaMultiplier, Report
from .records import ReportRecord


def load_multipliers(db: Session) -> List[Tuple[int, int, int]]:
    """Return every cached (c, d, exponent) triple ordered by (c, d)."""
    rows = db.execute(select(EtaMultiplier.c, EtaMultiplier.d, EtaMultiplier.exponent).order_by(EtaMultiplier.c, EtaMultiplier.d))
    return [(c, d, exponent) for c, d, exponent in rows.all()]


def save_multipliers(db: Session, exponents: Mapping[Tuple[int, int], int]) -> int:
    """Insert the (c, d) -> exponent pairs that are not stored yet.

    Stored exponents are never overwritten.  Returns the number of new rows.
    """
    existing = {(c, d) for c, d in db.execute(select(EtaMultiplier.c, EtaMultiplier.d)).all()}
    added = 0
    for (c, d), exponent in exponents.items():
        if (c, d) in existing:
            continue
        db.add(EtaMultiplier(c=c, d=d, exponent=exponent % 24))
        added += 1
    db.commit()
    return added


def add_reports(db: Session, records: Iterable[ReportRecord]) -> int:
    """Store ``records`` and return how many were written."""
    count = 0
    for record in records:
        db.add(
            Report(
                cmd=record.cmd,
                r=record.r,
                n=record.n,
                analytic_re=record.analytic_re,
                analytic_im=record.analytic_im,
                rounded=record.rounded,
                margin=record.margin,
                c_max=record.c_max,
                certified=record.certified,
                ms=record.ms,
            )
        )
        count += 1
    db.commit()
    return count


def list_reports(db: Session, r: Optional[int] = None) -> List[ReportRecord]:
    """Stored records in insertion order, optionally only those for ``r`` colors."""
    query = select(Report).order_by(Report.id)
    if r is not None:
        query = query.where(Report.r == r)
    return [
        ReportRecord(
            cmd=row.cmd,
            r=row.r,
            n=row.n,
            analytic_re=row.analytic_re,
            analytic_im=row.analytic_im,
            rounded=row.rounded,
            margin=row.margin,
            c_max=row.c_max,
            certified=row.certified,
            ms=row.ms,
        )
        for row in db.scalars(query)
    ]
