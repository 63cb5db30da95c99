"""Database connection setup for the optional result store.

The store is off unless ``--db`` or ``RADEMACHER_DATABASE_URL`` names a
database; any SQLAlchemy URL works (``sqlite:///rademacher.sqlite`` is the
usual choice).  The engine pings the database before each checkout so that
stale connections are replaced transparently.
"""

from __future__ import annotations

import logging

from sqlalchemy import create_engine
from sqlalchemy.orm import Session, sessionmaker

from .models import Base

logger = logging.getLogger(__name__)


def open_store(url: str) -> sessionmaker[Session]:
    """Create the engine and the schema (if missing) and return a session factory.

    ``expire_on_commit=False`` keeps loaded rows usable after the commit.
    """
    engine = create_engine(url, echo=False, pool_pre_ping=True)
    # create_all only adds missing tables; swap for migrations if the schema ever changes
    Base.metadata.create_all(engine)
    logger.info("opened store %s", engine.url.render_as_string(hide_password=True))
    return sessionmaker(engine, expire_on_commit=False)
