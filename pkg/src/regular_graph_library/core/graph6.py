"""graph6 text codec for :class:`Graph`."""

import networkx as nx

from regular_graph_library.core.errors import MalformedGraph6Error, MalformedGraphError
from regular_graph_library.core.graph import Graph, normalize_edge

_MIN_BYTE = 63
_MAX_BYTE = 126


def graph6_encode(g: Graph) -> str:
    """Encode a graph as a single graph6 line without header or newline.

    Vertices are written in id order, so the string depends on the labeling.
    """
    return nx.to_graph6_bytes(g.to_networkx(), header=False).decode("ascii").strip()


def graph6_decode(line: str, k: int | None = None) -> Graph:
    """Decode a graph6 line.

    Args:
        line: The graph6 text, optionally with the ``>>graph6<<`` header and
            surrounding whitespace.
        k: Nominal degree. Defaults to the degree of vertex 0.

    Returns:
        The decoded graph.

    Raises:
        MalformedGraph6Error: On an empty line, a byte outside 63..126 or a
            length that does not match the declared vertex count.
    """
    text = line.strip()
    if text.startswith(">>graph6<<"):
        text = text[len(">>graph6<<") :]
    if not text:
        raise MalformedGraph6Error("empty graph6 line")
    bad = [c for c in text if not _MIN_BYTE <= ord(c) <= _MAX_BYTE]
    if bad:
        raise MalformedGraph6Error(
            "graph6 byte out of range", {"line": line.strip(), "byte": ord(bad[0])}
        )
    try:
        decoded = nx.from_graph6_bytes(text.encode("ascii"))
    except (nx.NetworkXError, ValueError, IndexError) as e:
        raise MalformedGraph6Error(str(e), {"line": line.strip()}) from e

    n = decoded.number_of_nodes()
    if n == 0:
        raise MalformedGraph6Error("graph6 line declares no vertices", {"line": line.strip()})
    degree = decoded.degree(0) if k is None else k
    try:
        return Graph(
            n=n,
            k=degree,
            edges=frozenset(normalize_edge(u, v) for u, v in decoded.edges()),
        )
    except MalformedGraphError as e:
        raise MalformedGraph6Error(e.message, {"line": line.strip()}) from e
