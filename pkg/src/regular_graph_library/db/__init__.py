"""Checkpoint store: async SQLAlchemy sessions and the checkpoint table.

SQLite through aiosqlite is the default store.
"""

from regular_graph_library.db.base import Base, close_database, get_session, init_database
from regular_graph_library.db.models import CampaignCheckpointModel

__all__ = [
    "Base",
    "CampaignCheckpointModel",
    "close_database",
    "get_session",
    "init_database",
]
