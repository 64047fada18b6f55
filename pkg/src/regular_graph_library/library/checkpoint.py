"""Repository for campaign checkpoints."""

import logging

from sqlalchemy import delete, select

from regular_graph_library.db import CampaignCheckpointModel, get_session
from regular_graph_library.library.campaigns import CampaignOutput, CampaignTask

logger = logging.getLogger(__name__)


def checkpoint_id(config_digest: str, task: CampaignTask) -> str:
    """Primary key of a task's checkpoint row."""
    return f"{config_digest}:{task.n}:{task.kind.value}:{task.run_index}"


class CheckpointRepository:
    """Stores the output of completed campaign tasks so builds can resume."""

    async def get(self, config_digest: str, task: CampaignTask) -> CampaignOutput | None:
        """Load a completed task's graphs.

        Args:
            config_digest: Digest of the run configuration.
            task: The campaign task.

        Returns:
            ``[(graph6, chi), ...]`` if the task completed before, None otherwise.
        """
        async with get_session() as session:
            model = await session.get(CampaignCheckpointModel, checkpoint_id(config_digest, task))
            if model is None:
                return None
            return [(str(line), float(chi)) for line, chi in model.graphs]

    async def save(
        self, config_digest: str, task: CampaignTask, graphs: CampaignOutput
    ) -> None:
        """Record a completed task, replacing any earlier row for it."""
        async with get_session() as session:
            model = CampaignCheckpointModel(
                id=checkpoint_id(config_digest, task),
                config_digest=config_digest,
                n=task.n,
                k=task.k,
                source=task.source.value,
                run_index=task.run_index,
                seed=task.seed,
                graph_count=len(graphs),
                graphs=[[line, chi] for line, chi in graphs],
                metadata_={"draws": task.draws},
            )
            await session.merge(model)
            logger.debug(
                "Checkpointed n=%d task=%s run=%d (%d graphs)",
                task.n,
                task.kind.value,
                task.run_index,
                len(graphs),
            )

    async def count(self, config_digest: str) -> int:
        """Number of completed tasks stored for a configuration."""
        async with get_session() as session:
            result = await session.execute(
                select(CampaignCheckpointModel.id).where(
                    CampaignCheckpointModel.config_digest == config_digest
                )
            )
            return len(result.scalars().all())

    async def clear(self, config_digest: str) -> None:
        """Delete every checkpoint of a configuration."""
        async with get_session() as session:
            await session.execute(
                delete(CampaignCheckpointModel).where(
                    CampaignCheckpointModel.config_digest == config_digest
                )
            )
            logger.info("Cleared checkpoints for config %s", config_digest)


# Global repository instance
_checkpoint_repo: CheckpointRepository | None = None


def get_checkpoint_repository() -> CheckpointRepository:
    """Get the global checkpoint repository instance."""
    global _checkpoint_repo
    if _checkpoint_repo is None:
        _checkpoint_repo = CheckpointRepository()
    return _checkpoint_repo
