"""SQLAlchemy ORM models for campaign checkpoints."""

from datetime import datetime
from typing import Any

from sqlalchemy import JSON, TIMESTAMP, BigInteger, Integer, String, func
from sqlalchemy.orm import Mapped, mapped_column

from regular_graph_library.db.base import Base


class CampaignCheckpointModel(Base):
    """Graphs produced by one completed (config, n, source, run) campaign task."""

    __tablename__ = "campaign_checkpoints"

    id: Mapped[str] = mapped_column(String(128), primary_key=True)
    config_digest: Mapped[str] = mapped_column(String(32), nullable=False, index=True)
    n: Mapped[int] = mapped_column(Integer, nullable=False)
    k: Mapped[int] = mapped_column(Integer, nullable=False)
    source: Mapped[str] = mapped_column(String(16), nullable=False)
    run_index: Mapped[int] = mapped_column(Integer, nullable=False)
    seed: Mapped[int] = mapped_column(BigInteger, nullable=False)
    graph_count: Mapped[int] = mapped_column(Integer, nullable=False, default=0)
    # [[graph6, chi], ...] in generation order
    graphs: Mapped[list[Any]] = mapped_column(JSON, nullable=False, default=list)
    created_at: Mapped[datetime] = mapped_column(
        TIMESTAMP(timezone=True),
        server_default=func.now(),
    )
    metadata_: Mapped[dict[str, Any]] = mapped_column(
        "metadata",
        JSON,
        default=dict,
    )
