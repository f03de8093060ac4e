"""Type definitions for the graph domain."""
from dataclasses import dataclass, field
from functools import cached_property
from typing import Optional

import networkx as nx
import numpy as np
from scipy import sparse

from ...lib.errors import GraphError, ParameterError

# Row sums and detailed balance are checked to this tolerance
KERNEL_TOL = 1e-12


@dataclass(frozen=True)
class Graph:
    """
    Finite connected graph, optionally a multigraph, with edge lengths.

    Vertices are 0..vertex_count-1. Each edge is an ordered pair whose order
    fixes the orientation used by labellings and tree offsets.
    """
    vertex_count: int
    edges: tuple[tuple[int, int], ...]
    edge_lengths: tuple[float, ...] = ()
    multigraph: bool = False
    allow_loops: bool = False
    name: str = ""

    def __post_init__(self):
        edges = tuple((int(u), int(v)) for u, v in self.edges)
        object.__setattr__(self, "edges", edges)
        if not self.edge_lengths:
            object.__setattr__(self, "edge_lengths", (1.0,) * len(edges))
        else:
            object.__setattr__(self, "edge_lengths", tuple(float(x) for x in self.edge_lengths))
        self._check()

    def _check(self) -> None:
        if self.vertex_count < 1:
            raise GraphError(f"vertex_count must be positive, got {self.vertex_count}")
        if not self.edges:
            raise GraphError("empty edge list")
        if len(self.edge_lengths) != len(self.edges):
            raise GraphError(
                f"{len(self.edge_lengths)} edge lengths given for {len(self.edges)} edges"
            )

        seen = set()
        for e, (u, v) in enumerate(self.edges):
            if not (0 <= u < self.vertex_count and 0 <= v < self.vertex_count):
                raise GraphError(f"edge {e} = ({u}, {v}) has an endpoint outside 0..{self.vertex_count - 1}")
            if u == v and not self.allow_loops:
                raise GraphError(f"self-loop at vertex {u} (edge {e})")
            if self.edge_lengths[e] <= 0:
                raise GraphError(f"edge {e} has non-positive length {self.edge_lengths[e]}")
            key = (min(u, v), max(u, v))
            if key in seen and not self.multigraph:
                raise GraphError(f"duplicate edge {key}; pass multigraph=True to allow parallel edges")
            seen.add(key)

        components = list(nx.connected_components(self.to_networkx()))
        if len(components) > 1:
            reps = sorted(min(c) for c in components)
            raise GraphError(
                f"graph is disconnected: {len(components)} components, "
                f"represented by vertices {reps}",
                components=reps,
            )

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    @cached_property
    def degrees(self) -> np.ndarray:
        deg = np.zeros(self.vertex_count, dtype=np.int64)
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return deg

    @cached_property
    def adjacency(self) -> tuple[tuple[tuple[int, int], ...], ...]:
        """Per vertex, the (neighbor, edge id) pairs in edge order."""
        adj: list[list[tuple[int, int]]] = [[] for _ in range(self.vertex_count)]
        for e, (u, v) in enumerate(self.edges):
            adj[u].append((v, e))
            if u != v:
                adj[v].append((u, e))
            else:
                adj[u].append((u, e))
        return tuple(tuple(row) for row in adj)

    @cached_property
    def adjacency_matrix(self) -> sparse.csr_matrix:
        """Adjacency with edge multiplicities (a loop contributes 2)."""
        rows, cols = [], []
        for u, v in self.edges:
            rows.extend((u, v))
            cols.extend((v, u))
        data = np.ones(len(rows))
        n = self.vertex_count
        return sparse.csr_matrix((data, (rows, cols)), shape=(n, n))

    @property
    def directed_edges(self) -> list[tuple[int, int, int]]:
        """All (u, v, edge id) orientations, forward orientations first."""
        forward = [(u, v, e) for e, (u, v) in enumerate(self.edges)]
        backward = [(v, u, e) for e, (u, v) in enumerate(self.edges)]
        return forward + backward

    def to_networkx(self) -> nx.Graph:
        g = nx.MultiGraph() if self.multigraph or self.allow_loops else nx.Graph()
        g.add_nodes_from(range(self.vertex_count))
        for e, (u, v) in enumerate(self.edges):
            g.add_edge(u, v, length=self.edge_lengths[e], id=e)
        return g

    def with_lengths(self, length: float) -> "Graph":
        """Same combinatorics, every edge set to the given length."""
        return Graph(
            vertex_count=self.vertex_count,
            edges=self.edges,
            edge_lengths=(float(length),) * self.edge_count,
            multigraph=self.multigraph,
            allow_loops=self.allow_loops,
            name=self.name,
        )

    def to_dict(self) -> dict:
        """Convert to dictionary for serialization."""
        data = {
            "n": self.vertex_count,
            "edges": [list(e) for e in self.edges],
        }
        if any(x != 1.0 for x in self.edge_lengths):
            data["lengths"] = list(self.edge_lengths)
        if self.multigraph:
            data["multigraph"] = True
        if self.name:
            data["name"] = self.name
        return data


@dataclass(frozen=True, eq=False)
class VertexMeasure:
    """Probability measure on the vertices of a graph."""
    weights: np.ndarray

    def __post_init__(self):
        w = np.asarray(self.weights, dtype=float)
        if np.any(w < 0):
            raise ParameterError("vertex measure has negative weights")
        if abs(w.sum() - 1.0) > KERNEL_TOL:
            raise ParameterError(f"vertex measure sums to {w.sum()!r}, not 1")
        object.__setattr__(self, "weights", w)

    def __getitem__(self, u: int) -> float:
        return float(self.weights[u])

    def to_dict(self) -> dict:
        return {"weights": self.weights.tolist()}


@dataclass(frozen=True, eq=False)
class WalkKernel:
    """
    Markov kernel on a finite state set stored as a sparse row-stochastic
    matrix, optionally symmetric with respect to a stationary measure.
    """
    matrix: sparse.csr_matrix
    stationary: Optional[np.ndarray] = None
    steps: int = 1
    states: Optional[tuple] = field(default=None)

    def __post_init__(self):
        m = sparse.csr_matrix(self.matrix, dtype=float)
        object.__setattr__(self, "matrix", m)
        if m.shape[0] != m.shape[1]:
            raise ParameterError(f"kernel matrix must be square, got {m.shape}")

        rows = np.asarray(m.sum(axis=1)).ravel()
        worst = float(np.max(np.abs(rows - 1.0)))
        if worst > KERNEL_TOL:
            raise ParameterError(f"kernel rows must sum to 1 (max deviation {worst:.3e})")

        if self.stationary is not None:
            nu = np.asarray(self.stationary, dtype=float)
            object.__setattr__(self, "stationary", nu)
            flow = sparse.diags(nu) @ m
            asym = abs(flow - flow.T)
            defect = float(asym.max()) if asym.nnz else 0.0
            if defect > KERNEL_TOL:
                raise ParameterError(f"kernel is not symmetric w.r.t. its measure (defect {defect:.3e})")

    @property
    def size(self) -> int:
        return self.matrix.shape[0]

    def to_dense(self) -> np.ndarray:
        return self.matrix.toarray()

    def row(self, u: int) -> dict[int, float]:
        """Support of k(u, .) as a dict."""
        start, end = self.matrix.indptr[u], self.matrix.indptr[u + 1]
        cols = self.matrix.indices[start:end]
        vals = self.matrix.data[start:end]
        return {int(c): float(x) for c, x in zip(cols, vals) if x != 0.0}

    def to_dict(self) -> dict:
        return {
            "steps": self.steps,
            "rows": [self.row(u) for u in range(self.size)],
        }
