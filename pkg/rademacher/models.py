"""SQLAlchemy ORM models for the optional result store.

Declarative mapping in the SQLAlchemy 2.0 style.  Two entities:

* :class:`EtaMultiplier` caches snapped eta-multiplier exponents by bottom
  row; snapping is the expensive part of every Kloosterman sum with a
  fractional first index, and the exponent depends on (c, d) alone.
* :class:`Report` keeps every emitted ``partitions`` record.
"""

from __future__ import annotations

from datetime import datetime
from typing import Optional

from sqlalchemy import BigInteger, Boolean, DateTime, Integer, String, Text, func
from sqlalchemy.orm import DeclarativeBase, Mapped, mapped_column


class Base(DeclarativeBase):
    """Base class for declarative models."""
    pass


class EtaMultiplier(Base):
    """v_eta([a b; c d]) = exp(2 pi i exponent / 24) for the completion with a in [0, c).

    Attributes
    ----------
    c, d : int
        Bottom row, c >= 1 and gcd(c, d) = 1.
    exponent : int
        Exponent mod 24.
    """

    __tablename__ = "eta_multipliers"

    c: Mapped[int] = mapped_column(BigInteger, primary_key=True)
    d: Mapped[int] = mapped_column(BigInteger, primary_key=True)
    exponent: Mapped[int] = mapped_column(Integer)


class Report(Base):
    """One ``partitions`` result; numeric columns hold decimal strings."""

    __tablename__ = "reports"

    id: Mapped[int] = mapped_column(primary_key=True, autoincrement=True)
    cmd: Mapped[str] = mapped_column(String(255))
    r: Mapped[int] = mapped_column(Integer)
    n: Mapped[int] = mapped_column(Integer)
    # Optional[...] rather than "|" unions, for Python 3.9
    analytic_re: Mapped[Optional[str]] = mapped_column(Text, nullable=True)
    analytic_im: Mapped[Optional[str]] = mapped_column(Text, nullable=True)
    rounded: Mapped[str] = mapped_column(Text)
    margin: Mapped[Optional[str]] = mapped_column(String(32), nullable=True)
    c_max: Mapped[Optional[int]] = mapped_column(Integer, nullable=True)
    certified: Mapped[Optional[bool]] = mapped_column(Boolean, nullable=True)
    ms: Mapped[str] = mapped_column(String(32))
    created_at: Mapped[datetime] = mapped_column(DateTime(timezone=True), server_default=func.now())
