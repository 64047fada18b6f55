"""Pytest configuration and fixtures."""

import os
from itertools import combinations

import pytest
import pytest_asyncio

# Set test environment variables before importing application modules
os.environ["DATABASE_URL"] = "sqlite+aiosqlite:///:memory:"
os.environ["LOG_FORMAT"] = "text"
os.environ["LOG_LEVEL"] = "DEBUG"
os.environ["CHECKPOINT_ENABLED"] = "false"
os.environ["OTEL_ENABLED"] = "false"
os.environ["WORKERS"] = "1"


def circulant(n: int, offsets: tuple[int, ...], k: int | None = None):
    """Circulant graph C_n(offsets); 2*len(offsets)-regular for small offsets."""
    from regular_graph_library.core import Graph, normalize_edge

    edges = {normalize_edge(v, (v + d) % n) for v in range(n) for d in offsets}
    return Graph(n=n, k=k if k is not None else 2 * len(offsets), edges=frozenset(edges))


@pytest.fixture
def test_settings():
    """Provide test settings."""
    from regular_graph_library.config import Settings

    return Settings(
        database_url="sqlite+aiosqlite:///:memory:",
        log_format="text",
        checkpoint_enabled=False,
        debug=True,
    )


@pytest.fixture
def k5():
    """Complete graph on five vertices (4-regular)."""
    from regular_graph_library.core import Graph

    return Graph.from_edges(5, 4, combinations(range(5), 2))


@pytest.fixture
def cave_chain_10():
    """Cave chain of two 4-regular caves."""
    from regular_graph_library.generators import CaveChainSpec, cave_chain

    return cave_chain(CaveChainSpec(10, 4))


@pytest.fixture
def c10_12():
    """Circulant C10(1, 2): 4-regular, connected, vertex-transitive."""
    return circulant(10, (1, 2))


@pytest.fixture
def make_circulant():
    """Factory for circulant graphs."""
    return circulant


@pytest.fixture
def small_run_config(tmp_path):
    """Desk-sized run configuration for pipeline tests."""
    from regular_graph_library.library import RunConfig

    return RunConfig(
        n_values=[10],
        k=4,
        target_per_bin=50,
        batch_cap=5,
        abort_limit=50,
        max_steps=2_000,
        wm_draws=60,
        wm_shards=3,
        cc_runs=3,
        batch_size=5,
        draws=200,
        max_draws=400,
        null_draws=500,
        exhaustive_max_n=0,
        seed=7,
        output_dir=tmp_path / "library",
    )


@pytest_asyncio.fixture
async def db_session():
    """Initialize database for tests.

    Creates all tables and yields, then cleans up after.
    """
    from regular_graph_library.db import close_database, init_database

    await init_database()
    yield
    await close_database()
