"""
Graph construction and combinatorial invariants: validation, girth,
diameter, subdivision and embedded path counts.
"""
import logging
import math
from collections import deque
from typing import Iterable, Optional, Sequence

import networkx as nx
import numpy as np
from scipy.sparse import csgraph

from .types import Graph
from ...lib.errors import GraphError, ParameterError, SizeError

logger = logging.getLogger(__name__)

# Largest count accepted by count_embedded_paths (signed 64-bit accumulator)
PATH_COUNT_LIMIT = 2**63 - 1

# Rows per chunk when scanning BFS distances on large graphs
_DISTANCE_CHUNK = 256


def validate_graph(
    raw_edges: Iterable[Sequence],
    vertex_count: Optional[int] = None,
    edge_lengths: Optional[Sequence[float]] = None,
    multigraph: bool = False,
    allow_loops: bool = False,
    name: str = "",
) -> Graph:
    """
    Build a Graph from a raw edge list.

    Args:
        raw_edges: Iterable of (u, v) pairs, 0-indexed
        vertex_count: Number of vertices; defaults to max label + 1
        edge_lengths: Optional positive length per edge
        multigraph: Allow parallel edges
        allow_loops: Allow self-loops
        name: Optional label carried into reports

    Returns:
        Graph with connectivity verified and degrees computed

    Raises:
        GraphError: If the list is empty, disconnected, has duplicates or loops
    """
    edges = []
    for item in raw_edges:
        if len(item) != 2:
            raise GraphError(f"edge {item!r} must be a pair of vertices")
        u, v = int(item[0]), int(item[1])
        if u < 0 or v < 0:
            raise GraphError(f"negative vertex label in edge ({u}, {v})")
        edges.append((u, v))

    if not edges:
        raise GraphError("empty edge list")

    n = vertex_count if vertex_count is not None else max(max(e) for e in edges) + 1
    graph = Graph(
        vertex_count=n,
        edges=tuple(edges),
        edge_lengths=tuple(edge_lengths) if edge_lengths is not None else (),
        multigraph=multigraph,
        allow_loops=allow_loops,
        name=name,
    )
    logger.debug("validated graph %s: %d vertices, %d edges", name or "<anon>", n, len(edges))
    return graph


def from_networkx(g: nx.Graph, name: str = "") -> Graph:
    """Relabel a networkx graph to 0..n-1 (sorted node order) and validate it."""
    nodes = sorted(g.nodes())
    index = {node: i for i, node in enumerate(nodes)}
    edges = [(index[u], index[v]) for u, v in g.edges()]
    return validate_graph(edges, vertex_count=len(nodes), multigraph=g.is_multigraph(), name=name)


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ParameterError(f"cycle needs at least 3 vertices, got {n}")
    return validate_graph([(i, (i + 1) % n) for i in range(n)], name=f"cycle:{n}")


def path_graph(n: int) -> Graph:
    if n < 2:
        raise ParameterError(f"path needs at least 2 vertices, got {n}")
    return validate_graph([(i, i + 1) for i in range(n - 1)], name=f"path:{n}")


def star_graph(leaves: int) -> Graph:
    """K_{1,leaves} with center 0."""
    if leaves < 1:
        raise ParameterError(f"star needs at least one leaf, got {leaves}")
    return validate_graph([(0, i) for i in range(1, leaves + 1)], name=f"star:{leaves}")


def complete_graph(n: int) -> Graph:
    if n < 2:
        raise ParameterError(f"complete graph needs at least 2 vertices, got {n}")
    edges = [(u, v) for u in range(n) for v in range(u + 1, n)]
    return validate_graph(edges, name=f"k{n}")


def petersen_graph() -> Graph:
    return from_networkx(nx.petersen_graph(), name="petersen")


def hop_distances(G: Graph, indices: Optional[Sequence[int]] = None) -> np.ndarray:
    """
    BFS hop distances.

    Args:
        G: Graph
        indices: Source vertices (all vertices when None)

    Returns:
        Integer matrix with one row per source
    """
    dist = csgraph.shortest_path(
        G.adjacency_matrix, method="D", unweighted=True, directed=False, indices=indices
    )
    return np.rint(dist).astype(np.int64)


def _girth(G: Graph) -> float:
    """Shortest cycle length by BFS from every vertex, pruned by the best so far."""
    best = math.inf
    for e, (u, v) in enumerate(G.edges):
        if u == v:
            return 1
    if G.multigraph:
        seen = set()
        for u, v in G.edges:
            key = (min(u, v), max(u, v))
            if key in seen:
                return 2
            seen.add(key)

    for root in range(G.vertex_count):
        dist = {root: 0}
        parent_edge = {root: -1}
        queue = deque([root])
        while queue:
            x = queue.popleft()
            if 2 * dist[x] >= best:
                break
            for y, e in G.adjacency[x]:
                if e == parent_edge[x]:
                    continue
                if y in dist:
                    best = min(best, dist[x] + dist[y] + 1)
                else:
                    dist[y] = dist[x] + 1
                    parent_edge[y] = e
                    queue.append(y)
    return best


def _diameter(G: Graph) -> int:
    diameter = 0
    n = G.vertex_count
    for start in range(0, n, _DISTANCE_CHUNK):
        rows = hop_distances(G, indices=list(range(start, min(n, start + _DISTANCE_CHUNK))))
        diameter = max(diameter, int(rows.max()))
    return diameter


def girth_and_diameter(G: Graph) -> tuple[float, int]:
    """
    Girth and diameter of a graph.

    Returns:
        (girth, diameter); girth is math.inf for forests
    """
    girth = _girth(G)
    diameter = _diameter(G)
    logger.debug("girth=%s diameter=%d on %d vertices", girth, diameter, G.vertex_count)
    return girth, diameter


def subdivide(G: Graph, j: int) -> Graph:
    """
    Replace every edge by a path of j edges.

    New vertices for edge e are numbered n + e*(j-1) + t, t = 0..j-2, in the
    direction of the edge's orientation. Sub-edges get length/j so the metric
    graph is unchanged.

    Raises:
        ParameterError: If j < 1
    """
    if j < 1:
        raise ParameterError(f"subdivision factor must be >= 1, got {j}")
    if j == 1:
        return G

    n = G.vertex_count
    edges: list[tuple[int, int]] = []
    lengths: list[float] = []
    for e, (u, v) in enumerate(G.edges):
        chain = [u] + [n + e * (j - 1) + t for t in range(j - 1)] + [v]
        for a, b in zip(chain, chain[1:]):
            edges.append((a, b))
            lengths.append(G.edge_lengths[e] / j)

    name = f"{G.name}/sub{j}" if G.name else ""
    return Graph(
        vertex_count=n + (j - 1) * G.edge_count,
        edges=tuple(edges),
        edge_lengths=tuple(lengths),
        multigraph=G.multigraph,
        allow_loops=G.allow_loops,
        name=name,
    )


def count_embedded_paths(G: Graph, L: int, limit: int = PATH_COUNT_LIMIT) -> int:
    """
    Count simple paths with 1 <= length < L, up to reversal.

    Parallel edges give distinct paths.

    Raises:
        ParameterError: If L < 1
        SizeError: If the count exceeds the accumulator limit
    """
    if L < 1:
        raise ParameterError(f"path length bound must be >= 1, got {L}")

    directed = 0
    max_len = L - 1

    def extend(x: int, depth: int, on_path: set) -> int:
        found = 0
        if depth == max_len:
            return 0
        for y, _ in G.adjacency[x]:
            if y in on_path:
                continue
            found += 1
            on_path.add(y)
            found += extend(y, depth + 1, on_path)
            on_path.discard(y)
        return found

    for root in range(G.vertex_count):
        directed += extend(root, 0, {root})
        if directed // 2 > limit:
            raise SizeError(f"embedded path count exceeds accumulator limit {limit}")

    return directed // 2
