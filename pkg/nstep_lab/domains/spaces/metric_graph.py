"""
Shortest paths between arbitrary positions (vertices or edge points) of a
metric graph. Shared by metric trees (points) and graph cones (directions).
"""
import math
from dataclasses import dataclass
from functools import cached_property
from typing import Optional

import numpy as np
from scipy import sparse
from scipy.sparse import csgraph

from .types import Locus
from ...lib.errors import ParameterError, SpaceMismatchError

# Offsets this close to an endpoint snap to the vertex
SNAP = 1e-12

Segment = tuple[int, float, float]


@dataclass(frozen=True)
class MetricGraph:
    """Edge-length graph; may be disconnected (then distances are infinite)."""
    vertex_count: int
    edges: tuple[tuple[int, int], ...] = ()
    lengths: tuple[float, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "edges", tuple((int(u), int(v)) for u, v in self.edges))
        object.__setattr__(self, "lengths", tuple(float(x) for x in self.lengths))
        if len(self.edges) != len(self.lengths):
            raise ParameterError(f"{len(self.lengths)} lengths for {len(self.edges)} edges")
        if self.vertex_count < 1:
            raise ParameterError("metric graph needs at least one vertex")
        for e, (u, v) in enumerate(self.edges):
            if u == v:
                raise ParameterError(f"metric graph edge {e} is a loop")
            if self.lengths[e] <= 0:
                raise ParameterError(f"metric graph edge {e} has non-positive length")

    @cached_property
    def incident(self) -> tuple[tuple[int, ...], ...]:
        """Incident edge ids per vertex, in edge order."""
        inc: list[list[int]] = [[] for _ in range(self.vertex_count)]
        for e, (u, v) in enumerate(self.edges):
            inc[u].append(e)
            inc[v].append(e)
        return tuple(tuple(x) for x in inc)

    @cached_property
    def _shortest_edge(self) -> dict[tuple[int, int], int]:
        best: dict[tuple[int, int], int] = {}
        for e, (u, v) in enumerate(self.edges):
            key = (min(u, v), max(u, v))
            if key not in best or self.lengths[e] < self.lengths[best[key]]:
                best[key] = e
        return best

    @cached_property
    def _paths(self) -> tuple[np.ndarray, np.ndarray]:
        n = self.vertex_count
        if not self.edges:
            dist = np.full((n, n), np.inf)
            np.fill_diagonal(dist, 0.0)
            return dist, np.full((n, n), -9999, dtype=np.int64)
        rows, cols, data = [], [], []
        for (u, v), e in self._shortest_edge.items():
            rows.append(u)
            cols.append(v)
            data.append(self.lengths[e])
        weights = sparse.csr_matrix((data, (rows, cols)), shape=(n, n))
        dist, pred = csgraph.dijkstra(weights, directed=False, return_predecessors=True)
        return dist, pred

    @property
    def vertex_distances(self) -> np.ndarray:
        return self._paths[0]

    def locus(self, edge: int, offset: float) -> Locus:
        """Canonical position at the given offset along an edge."""
        if not 0 <= edge < len(self.edges):
            raise ParameterError(f"edge id {edge} out of range")
        length = self.lengths[edge]
        if offset < -SNAP or offset > length + SNAP:
            raise ParameterError(f"offset {offset} outside [0, {length}] on edge {edge}")
        if offset <= SNAP:
            return Locus(vertex=self.edges[edge][0])
        if offset >= length - SNAP:
            return Locus(vertex=self.edges[edge][1])
        return Locus(edge=edge, offset=float(offset))

    def check(self, x: Locus) -> None:
        if not isinstance(x, Locus):
            raise SpaceMismatchError(f"expected a graph position, got {type(x).__name__}")
        if x.is_vertex:
            if not 0 <= x.vertex < self.vertex_count:
                raise SpaceMismatchError(f"vertex {x.vertex} not in graph")
        else:
            if x.edge is None or not 0 <= x.edge < len(self.edges):
                raise SpaceMismatchError(f"edge {x.edge} not in graph")
            if not 0 < x.offset < self.lengths[x.edge]:
                raise SpaceMismatchError(f"offset {x.offset} not inside edge {x.edge}")

    def _anchors(self, x: Locus) -> list[tuple[int, float, Optional[Segment]]]:
        """(vertex, cost, segment from x to that vertex) for each exit of x."""
        if x.is_vertex:
            return [(x.vertex, 0.0, None)]
        a, b = self.edges[x.edge]
        length = self.lengths[x.edge]
        return [
            (a, x.offset, (x.edge, x.offset, 0.0)),
            (b, length - x.offset, (x.edge, x.offset, length)),
        ]

    def distance(self, x: Locus, y: Locus) -> float:
        return self._route(x, y)[0]

    def _route(self, x: Locus, y: Locus):
        best = math.inf
        choice = None
        if not x.is_vertex and not y.is_vertex and x.edge == y.edge:
            best = abs(x.offset - y.offset)
            choice = "direct"
        if x == y:
            return 0.0, "direct"
        dist = self.vertex_distances
        for va, ca, sa in self._anchors(x):
            for vb, cb, sb in self._anchors(y):
                total = ca + dist[va, vb] + cb
                if total < best:
                    best = total
                    choice = (va, sa, vb, sb)
        return float(best), choice

    def _vertex_path(self, src: int, dst: int) -> list[Segment]:
        pred = self._paths[1]
        chain = [dst]
        while chain[-1] != src:
            prev = int(pred[src, chain[-1]])
            if prev < 0:
                raise ParameterError(f"no path from vertex {src} to {dst}")
            chain.append(prev)
        chain.reverse()
        segments = []
        for u, v in zip(chain, chain[1:]):
            e = self._shortest_edge[(min(u, v), max(u, v))]
            length = self.lengths[e]
            segments.append((e, 0.0, length) if self.edges[e] == (u, v) else (e, length, 0.0))
        return segments

    def path(self, x: Locus, y: Locus) -> tuple[float, list[Segment]]:
        """
        Shortest path from x to y as (edge, from offset, to offset) segments.

        Returns:
            (length, segments); segments is empty when x == y or no path exists
        """
        length, choice = self._route(x, y)
        if choice is None:
            return length, []
        if choice == "direct":
            if x == y:
                return 0.0, []
            return length, [(x.edge, x.offset, y.offset)]
        va, sa, vb, sb = choice
        segments: list[Segment] = []
        if sa is not None:
            segments.append(sa)
        if va != vb:
            segments.extend(self._vertex_path(va, vb))
        if sb is not None:
            e, off, end = sb
            segments.append((e, end, off))
        return length, segments

    def walk(self, start: Locus, segments: list[Segment], t: float) -> Locus:
        """Position at arc length t along the segments from start."""
        if not segments or t <= 0:
            return start
        remaining = t
        for e, s0, s1 in segments:
            seg = abs(s1 - s0)
            if remaining <= seg:
                return self.locus(e, s0 + math.copysign(remaining, s1 - s0))
            remaining -= seg
        e, _, s1 = segments[-1]
        return self.locus(e, s1)

    def first_segment(self, x: Locus, y: Locus) -> Optional[Segment]:
        _, segments = self.path(x, y)
        return segments[0] if segments else None
