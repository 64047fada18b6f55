"""Engine and sessions of the campaign checkpoint store."""

import logging
from collections.abc import AsyncGenerator
from contextlib import asynccontextmanager

from sqlalchemy.ext.asyncio import (
    AsyncEngine,
    AsyncSession,
    async_sessionmaker,
    create_async_engine,
)
from sqlalchemy.orm import DeclarativeBase
from sqlalchemy.pool import StaticPool

from regular_graph_library.config import get_settings

logger = logging.getLogger(__name__)


class Base(DeclarativeBase):
    """Declarative base of the checkpoint tables."""


_engine: AsyncEngine | None = None
_sessions: async_sessionmaker[AsyncSession] | None = None


def _open_engine(url: str, echo: bool) -> AsyncEngine:
    if url.startswith("sqlite"):
        # One shared connection, so an in-memory store survives between sessions.
        return create_async_engine(
            url,
            echo=echo,
            poolclass=StaticPool,
            connect_args={"check_same_thread": False},
        )
    return create_async_engine(url, echo=echo)


@asynccontextmanager
async def get_session() -> AsyncGenerator[AsyncSession, None]:
    """Session that commits on exit and rolls back if the body raises.

    Raises:
        RuntimeError: The store was not opened with :func:`init_database`.
    """
    if _sessions is None:
        raise RuntimeError("checkpoint store is not open")
    async with _sessions() as session:
        try:
            yield session
            await session.commit()
        except Exception:
            await session.rollback()
            raise


async def init_database() -> None:
    """Open the store named by ``DATABASE_URL`` and create missing tables."""
    global _engine, _sessions
    if _engine is not None:
        return
    settings = get_settings()
    _engine = _open_engine(settings.database_url, settings.debug)
    _sessions = async_sessionmaker(_engine, expire_on_commit=False)

    from regular_graph_library.db import models  # noqa: F401

    async with _engine.begin() as conn:
        await conn.run_sync(Base.metadata.create_all)
    logger.info("Checkpoint store open at %s", settings.database_url.rsplit("@", 1)[-1])


async def close_database() -> None:
    """Dispose of the engine; a later :func:`init_database` reopens it."""
    global _engine, _sessions
    if _engine is None:
        return
    await _engine.dispose()
    _engine = None
    _sessions = None
    logger.info("Checkpoint store closed")
