"""Maximum-clustering cave-chain construction."""

import logging

from regular_graph_library.core import Graph, InvalidSpecError
from regular_graph_library.generators.models import CaveChainSpec

logger = logging.getLogger(__name__)


def cave_chain(spec: CaveChainSpec) -> Graph:
    """Build the cave chain for ``spec``.

    Cave ``i`` occupies vertices ``i(k+1) .. i(k+1)+k``. Its first vertex
    ``a_i`` and last vertex ``b_i`` lose their mutual edge, and ``a_i`` is
    wired to ``b_{i+1 mod m}``, closing the caves into a ring. Every vertex
    keeps degree k and the average clustering is ``1 - 6/(k(k+1))``.

    Raises:
        InvalidSpecError: If ``n`` is not a multiple of ``k+1`` or the ring
            would have fewer than two caves.
    """
    n, k = spec.n, spec.k
    if k < 2 or n % (k + 1) != 0 or spec.caves < 2:
        raise InvalidSpecError(
            "cave chain needs n = m(k+1) with m >= 2 and k >= 2",
            {"n": n, "k": k},
        )
    m = spec.caves
    size = k + 1
    edges: list[tuple[int, int]] = []
    for cave in range(m):
        base = cave * size
        first, last = base, base + k
        for u in range(base, base + size):
            for v in range(u + 1, base + size):
                if (u, v) != (first, last):
                    edges.append((u, v))
        next_last = ((cave + 1) % m) * size + k
        edges.append((first, next_last))
    logger.debug("Built cave chain n=%d k=%d with %d caves", n, k, m)
    return Graph.from_edges(n, k, edges)
