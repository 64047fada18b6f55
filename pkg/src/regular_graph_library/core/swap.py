"""Degree-preserving edge swap: proposal, enumeration and application."""

from collections.abc import Iterator
from dataclasses import dataclass
from enum import Enum

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from regular_graph_library.core.graph import Graph, degree_check, is_connected, normalize_edge


class X4Rule(str, Enum):
    """How the fourth vertex of a swap is drawn relative to ``x3``.

    ``ALTER`` draws x4 among the neighbours of x3, so the edge ``{x3, x4}``
    exists and the swap preserves every degree. ``LITERAL`` draws x4 among
    the vertices not adjacent to x3; the edge ``{x3, x4}`` is then absent and
    the swap always fails the degree check.
    """

    ALTER = "alter"
    LITERAL = "literal"


class RejectionReason(str, Enum):
    """Why a proposed swap did not produce a new graph."""

    NO_CANDIDATES = "no_candidates"
    SELF_LOOP = "self_loop"
    DUPLICATE_EDGE = "duplicate_edge"
    DEGREE = "degree"
    DISCONNECTED = "disconnected"
    ISOMORPHIC = "isomorphic"


class SwapRejection(BaseModel):
    """A rejected proposal or a failed candidate draw."""

    model_config = ConfigDict(frozen=True)

    reason: RejectionReason = Field(..., description="Rejection class")
    detail: str = Field(default="", description="Human-readable context")


@dataclass(frozen=True)
class SwapProposal:
    """Four vertices defining the rewiring ``{x1x2, x3x4} -> {x1x3, x2x4}``."""

    x1: int
    x2: int
    x3: int
    x4: int

    def satisfies(self, g: Graph, rule: X4Rule = X4Rule.ALTER) -> bool:
        """Check the selection constraints against ``g``."""
        x1, x2, x3, x4 = self.x1, self.x2, self.x3, self.x4
        if not g.has_edge(x1, x2):
            return False
        if x3 in (x1, x2) or g.has_edge(x3, x1) or g.has_edge(x3, x2):
            return False
        if x4 == x2:
            return False
        if rule is X4Rule.ALTER:
            return g.has_edge(x3, x4)
        return not g.has_edge(x3, x4)


def _third_candidates(g: Graph, x1: int, x2: int) -> np.ndarray:
    allowed = ~(g.adjacency[x1] | g.adjacency[x2])
    allowed[x1] = allowed[x2] = False
    return np.flatnonzero(allowed)


def _fourth_candidates(g: Graph, x2: int, x3: int, rule: X4Rule) -> np.ndarray:
    if rule is X4Rule.ALTER:
        allowed = g.adjacency[x3].copy()
    else:
        allowed = ~g.adjacency[x3]
    allowed[x2] = False
    return np.flatnonzero(allowed)


def propose_swap(
    g: Graph,
    rng: np.random.Generator,
    rule: X4Rule = X4Rule.ALTER,
) -> SwapProposal | SwapRejection:
    """Draw a swap proposal, each vertex uniformly from its candidate set.

    Args:
        g: Current graph.
        rng: Random generator; the draw is deterministic under a seeded one.
        rule: Selection rule for x4.

    Returns:
        The proposal, or a ``no_candidates`` rejection when a candidate set
        is empty.
    """
    x1 = int(rng.integers(g.n))
    first = g.neighbors[x1]
    if not first:
        return SwapRejection(reason=RejectionReason.NO_CANDIDATES, detail=f"x1={x1} is isolated")
    x2 = first[int(rng.integers(len(first)))]

    third = _third_candidates(g, x1, x2)
    if third.size == 0:
        return SwapRejection(
            reason=RejectionReason.NO_CANDIDATES,
            detail=f"no vertex outside the neighbourhoods of {x1} and {x2}",
        )
    x3 = int(third[int(rng.integers(third.size))])

    fourth = _fourth_candidates(g, x2, x3, rule)
    if fourth.size == 0:
        return SwapRejection(reason=RejectionReason.NO_CANDIDATES, detail=f"no x4 for x3={x3}")
    x4 = int(fourth[int(rng.integers(fourth.size))])
    return SwapProposal(x1=x1, x2=x2, x3=x3, x4=x4)


def enumerate_proposals(g: Graph, rule: X4Rule = X4Rule.ALTER) -> Iterator[SwapProposal]:
    """Yield every proposal the selection rules admit, in vertex order."""
    for x1 in range(g.n):
        for x2 in g.neighbors[x1]:
            for x3 in _third_candidates(g, x1, x2).tolist():
                for x4 in _fourth_candidates(g, x2, x3, rule).tolist():
                    yield SwapProposal(x1=x1, x2=x2, x3=x3, x4=x4)


def apply_swap(g: Graph, p: SwapProposal) -> Graph | SwapRejection:
    """Rewire ``{x1x2, x3x4}`` into ``{x1x3, x2x4}``.

    Removals of absent edges are no-ops. Checks run in the order self-loop,
    duplicate edge, degree, connectivity. The input graph is never modified.

    Args:
        g: Graph to rewire.
        p: Proposal, not required to satisfy the selection rules.

    Returns:
        The rewired graph, or the first failed check.
    """
    if p.x1 == p.x3 or p.x2 == p.x4:
        return SwapRejection(reason=RejectionReason.SELF_LOOP, detail=str(p))

    edges = set(g.edges)
    edges.discard(normalize_edge(p.x1, p.x2))
    edges.discard(normalize_edge(p.x3, p.x4))
    created = (normalize_edge(p.x1, p.x3), normalize_edge(p.x2, p.x4))
    if created[0] == created[1] or created[0] in edges or created[1] in edges:
        return SwapRejection(reason=RejectionReason.DUPLICATE_EDGE, detail=str(p))
    edges.update(created)

    result = Graph(n=g.n, k=g.k, edges=frozenset(edges))
    if not degree_check(result):
        return SwapRejection(reason=RejectionReason.DEGREE, detail=str(p))
    if not is_connected(result):
        return SwapRejection(reason=RejectionReason.DISCONNECTED, detail=str(p))
    return result
