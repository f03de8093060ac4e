"""
Concrete CAT(0) models: Euclidean space, metric trees and metric cones over
edge-length graphs (pods are cones over isolated directions).
"""
import itertools
import logging
import math
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from functools import cached_property
from typing import Optional

import numpy as np

from .metric_graph import SNAP, MetricGraph
from .types import ConePoint, EuclideanPoint, FiniteMeasure, Locus, TangentVector
from ..graph import Graph
from ...lib.errors import ParameterError, SizeError, SpaceMismatchError, UnsupportedError

logger = logging.getLogger(__name__)

# Refuse brute-force oracle nets larger than this
MAX_ORACLE_CANDIDATES = 400_000


class CatSpace(ABC):
    """A CAT(0) space with distances and geodesics."""

    kind: str = ""

    @abstractmethod
    def check(self, x) -> None:
        """Raise SpaceMismatchError if x is not a point of this space."""

    @abstractmethod
    def _distance(self, x, y) -> float:
        ...

    @abstractmethod
    def _geodesic(self, x, y, s: float):
        ...

    @abstractmethod
    def sample_point(self, rng: np.random.Generator):
        ...

    @abstractmethod
    def oracle_candidates(self, h: float, support: tuple) -> list:
        ...

    def distance(self, x, y) -> float:
        self.check(x)
        self.check(y)
        return self._distance(x, y)

    def geodesic_point(self, x, y, s: float):
        """
        Point c(s) on the geodesic from x to y with d(x, c(s)) = s d(x, y).

        Raises:
            ParameterError: If s is outside [0, 1]
        """
        if not 0.0 <= s <= 1.0:
            raise ParameterError(f"geodesic parameter must lie in [0, 1], got {s}")
        self.check(x)
        self.check(y)
        if s == 0.0:
            return x
        if s == 1.0:
            return y
        return self._geodesic(x, y, s)

    def log_map(self, p, q) -> TangentVector:
        raise UnsupportedError(f"log map is not implemented on {self.kind}")

    def exact_barycenter(self, m: FiniteMeasure):
        """Closed-form or cell-wise exact barycenter; None when unavailable."""
        return None

    def check_measure(self, m: FiniteMeasure) -> None:
        for x in m.support:
            self.check(x)

    def sample_measure(self, rng: np.random.Generator, size: int) -> FiniteMeasure:
        points = [self.sample_point(rng) for _ in range(size)]
        masses = rng.uniform(0.05, 1.0, size=size)
        return FiniteMeasure.normalized(points, masses)

    def to_dict(self) -> dict:
        return {"type": self.kind}


@dataclass(frozen=True)
class Euclidean(CatSpace):
    """R^d with the standard inner product."""
    dimension: int
    kind: str = field(default="euclidean", init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.dimension < 1:
            raise ParameterError(f"dimension must be >= 1, got {self.dimension}")

    def check(self, x) -> None:
        if not isinstance(x, EuclideanPoint):
            raise SpaceMismatchError(f"expected a Euclidean point, got {type(x).__name__}")
        if len(x.coords) != self.dimension:
            raise SpaceMismatchError(f"point has dimension {len(x.coords)}, space has {self.dimension}")

    def _distance(self, x, y) -> float:
        return float(np.linalg.norm(x.array - y.array))

    def _geodesic(self, x, y, s):
        return EuclideanPoint.of((1 - s) * x.array + s * y.array)

    def origin(self) -> EuclideanPoint:
        return EuclideanPoint((0.0,) * self.dimension)

    def norm(self, x) -> float:
        return float(np.linalg.norm(x.array))

    def inner(self, x, y) -> float:
        return float(x.array @ y.array)

    def log_map(self, p, q) -> TangentVector:
        self.check(p)
        self.check(q)
        return TangentVector(base=p, space=self, vector=EuclideanPoint.of(q.array - p.array))

    def exact_barycenter(self, m: FiniteMeasure):
        coords = np.array([x.array for x in m.support])
        return EuclideanPoint.of(m.weights @ coords)

    def sample_point(self, rng):
        return EuclideanPoint.of(rng.uniform(-2.0, 2.0, size=self.dimension))

    def oracle_candidates(self, h, support):
        coords = np.array([x.array for x in support])
        lo, hi = coords.min(axis=0), coords.max(axis=0)
        axes = [np.append(np.arange(a, b, h), b) for a, b in zip(lo, hi)]
        total = math.prod(len(a) for a in axes)
        if total > MAX_ORACLE_CANDIDATES:
            raise SizeError(f"oracle net of {total} points exceeds {MAX_ORACLE_CANDIDATES}")
        return [EuclideanPoint.of(c) for c in itertools.product(*axes)]

    def to_dict(self) -> dict:
        return {"type": self.kind, "dimension": self.dimension}


@dataclass(frozen=True)
class MetricTree(CatSpace):
    """Finite metric tree; points are vertices or interior edge points."""
    skeleton: MetricGraph
    kind: str = field(default="tree", init=False, repr=False, compare=False)

    def __post_init__(self):
        g = self.skeleton
        if len(g.edges) != g.vertex_count - 1 or np.isinf(g.vertex_distances).any():
            raise ParameterError("metric tree must be connected and acyclic")

    @classmethod
    def from_graph(cls, graph: Graph) -> "MetricTree":
        return cls(MetricGraph(graph.vertex_count, graph.edges, graph.edge_lengths))

    @classmethod
    def star(cls, legs: int, length: float = 1.0) -> "MetricTree":
        """Finite pod: center 0 with `legs` edges of the given length."""
        edges = tuple((0, i) for i in range(1, legs + 1))
        return cls(MetricGraph(legs + 1, edges, (float(length),) * legs))

    def check(self, x) -> None:
        self.skeleton.check(x)

    def point(self, edge: int, offset: float) -> Locus:
        return self.skeleton.locus(edge, offset)

    def vertex(self, v: int) -> Locus:
        return Locus(vertex=v)

    def _distance(self, x, y) -> float:
        return self.skeleton.distance(x, y)

    def _geodesic(self, x, y, s):
        length, segments = self.skeleton.path(x, y)
        return self.skeleton.walk(x, segments, s * length)

    def direction_index(self, p: Locus, q: Locus) -> Optional[int]:
        """Index of the leg at p (in the tangent pod) that the geodesic to q starts along."""
        seg = self.skeleton.first_segment(p, q)
        if seg is None:
            return None
        e, s0, s1 = seg
        if p.is_vertex:
            return self.skeleton.incident[p.vertex].index(e)
        return 0 if s1 > s0 else 1

    def tangent_cone(self, p: Locus) -> "GraphCone":
        if p.is_vertex:
            return GraphCone.pod(len(self.skeleton.incident[p.vertex]))
        return GraphCone.pod(2)

    def log_map(self, p, q) -> TangentVector:
        """Tangent vector at p toward q in the pod of directions at p."""
        self.check(p)
        self.check(q)
        cone = self.tangent_cone(p)
        d = self._distance(p, q)
        idx = self.direction_index(p, q)
        if idx is None or d <= SNAP:
            return TangentVector(base=p, space=cone, vector=ConePoint())
        return TangentVector(base=p, space=cone, vector=ConePoint(Locus(vertex=idx), d))

    def exact_barycenter(self, m: FiniteMeasure):
        """Minimize the unfolded quadratic along every edge; keep the best."""
        g = self.skeleton
        best_value, best_point = math.inf, None
        for e, (a, b) in enumerate(g.edges):
            length = g.lengths[e]
            centers = []
            for x in m.support:
                if not x.is_vertex and x.edge == e:
                    centers.append(x.offset)
                    continue
                da = g.distance(Locus(vertex=a), x)
                db = g.distance(Locus(vertex=b), x)
                centers.append(-da if da <= db else length + db)
            c = np.array(centers)
            s = float(np.clip(m.weights @ c, 0.0, length))
            value = float(m.weights @ (s - c) ** 2)
            if value < best_value:
                best_value, best_point = value, g.locus(e, s)
        return best_point

    def sample_point(self, rng):
        e = int(rng.integers(len(self.skeleton.edges)))
        return self.skeleton.locus(e, float(rng.uniform(0.0, self.skeleton.lengths[e])))

    def oracle_candidates(self, h, support):
        g = self.skeleton
        total = sum(int(length / h) + 1 for length in g.lengths)
        if total > MAX_ORACLE_CANDIDATES:
            raise SizeError(f"oracle net of {total} points exceeds {MAX_ORACLE_CANDIDATES}")
        points = {Locus(vertex=v) for v in range(g.vertex_count)}
        for e, length in enumerate(g.lengths):
            for off in np.arange(h, length, h):
                points.add(g.locus(e, float(off)))
        return sorted(points, key=lambda x: (x.vertex is None, x.vertex or 0, x.edge or 0, x.offset))

    def to_dict(self) -> dict:
        g = self.skeleton
        return {
            "type": self.kind,
            "graph": {"n": g.vertex_count, "edges": [list(e) for e in g.edges], "lengths": list(g.lengths)},
        }


@dataclass(frozen=True)
class GraphCone(CatSpace):
    """
    Metric cone over a direction graph S, with the law of cosines using
    angles min(d_S, pi). A pod P_m is the cone over m isolated directions.
    """
    directions: MetricGraph
    family: tuple = ()
    kind: str = field(default="cone", init=False, repr=False, compare=False)

    @classmethod
    def over(cls, graph: Graph, family: tuple = ()) -> "GraphCone":
        return cls(MetricGraph(graph.vertex_count, graph.edges, graph.edge_lengths), family=family)

    @classmethod
    def pod(cls, legs: int) -> "GraphCone":
        if legs < 1:
            raise ParameterError(f"a pod needs at least one leg, got {legs}")
        return cls(MetricGraph(legs), family=("pod", legs))

    @property
    def is_pod(self) -> bool:
        return not self.directions.edges

    def check(self, x) -> None:
        if not isinstance(x, ConePoint):
            raise SpaceMismatchError(f"expected a cone point, got {type(x).__name__}")
        if not x.is_apex:
            self.directions.check(x.direction)

    def apex(self) -> ConePoint:
        return ConePoint()

    origin = apex

    def leg(self, index: int, radius: float) -> ConePoint:
        """Point at the given radius over direction vertex `index`."""
        return ConePoint(Locus(vertex=index), radius)

    def angle(self, x: ConePoint, y: ConePoint) -> float:
        """min(d_S, pi) between the directions of two non-apex points."""
        return min(self.directions.distance(x.direction, y.direction), math.pi)

    def _distance(self, x, y) -> float:
        if x.is_apex or y.is_apex:
            return abs(x.radius - y.radius)
        theta = self.angle(x, y)
        sq = x.radius ** 2 + y.radius ** 2 - 2 * x.radius * y.radius * math.cos(theta)
        return math.sqrt(max(sq, 0.0))

    def _geodesic(self, x, y, s):
        if x.is_apex:
            return ConePoint(y.direction, s * y.radius)
        if y.is_apex:
            return ConePoint(x.direction, (1 - s) * x.radius)

        theta_s, segments = self.directions.path(x.direction, y.direction)
        if theta_s >= math.pi:
            # Through the apex; ties at exactly pi go this way too
            travelled = s * (x.radius + y.radius)
            if travelled <= x.radius:
                return ConePoint(x.direction, x.radius - travelled)
            return ConePoint(y.direction, travelled - x.radius)

        px, py = x.radius, 0.0
        qx, qy = y.radius * math.cos(theta_s), y.radius * math.sin(theta_s)
        cx, cy = (1 - s) * px + s * qx, (1 - s) * py + s * qy
        radius = math.hypot(cx, cy)
        if radius <= SNAP:
            return ConePoint()
        phi = min(max(math.atan2(cy, cx), 0.0), theta_s)
        return ConePoint(self.directions.walk(x.direction, segments, phi), radius)

    def norm(self, x) -> float:
        return x.radius

    def inner(self, x, y) -> float:
        if x.is_apex or y.is_apex:
            return 0.0
        return x.radius * y.radius * math.cos(self.angle(x, y))

    def log_map(self, p, q) -> TangentVector:
        """Only at the apex, where the tangent cone is the cone itself."""
        self.check(p)
        self.check(q)
        if not p.is_apex:
            raise UnsupportedError("log map on a graph cone is implemented only at the apex")
        return TangentVector(base=p, space=self, vector=q)

    def _unfolded_angles(self, x: ConePoint, edge: int) -> list[float]:
        """Polar angles psi such that the angle from x to offset phi on the edge is min |phi - psi|."""
        g = self.directions
        a, b = g.edges[edge]
        length = g.lengths[edge]
        psis = []
        da = g.distance(x.direction, Locus(vertex=a))
        db = g.distance(x.direction, Locus(vertex=b))
        if math.isfinite(da):
            psis.append(-da)
        if math.isfinite(db):
            psis.append(length + db)
        if not x.direction.is_vertex and x.direction.edge == edge:
            psis.append(x.direction.offset)
        return psis

    def _pull(self, m: FiniteMeasure, direction: Locus) -> float:
        """g(u) = sum t_i r_i cos(min(d_S(u_i, u), pi)); the barycenter maximizes it."""
        total = 0.0
        for x, t in m.items():
            if x.is_apex:
                continue
            theta = min(self.directions.distance(x.direction, direction), math.pi)
            total += t * x.radius * math.cos(theta)
        return total

    def exact_barycenter(self, m: FiniteMeasure):
        """
        Maximize g over all directions: vertices in closed form, and on each
        edge piecewise as alpha cos(phi) + beta sin(phi) + c between breakpoints.
        """
        g = self.directions
        candidates = [Locus(vertex=v) for v in range(g.vertex_count)]
        active = [(x, t) for x, t in m.items() if not x.is_apex]

        for e, length in enumerate(g.lengths):
            unfolded = [(self._unfolded_angles(x, e), t * x.radius) for x, t in active]
            cuts = {0.0, length}
            for psis, _ in unfolded:
                for psi in psis:
                    cuts.update((psi - math.pi, psi + math.pi, psi))
                for p1, p2 in itertools.combinations(psis, 2):
                    cuts.add(0.5 * (p1 + p2))
            cuts = sorted(c for c in cuts if 0.0 <= c <= length)
            for lo, hi in zip(cuts, cuts[1:]):
                mid = 0.5 * (lo + hi)
                alpha = beta = 0.0
                for psis, w in unfolded:
                    if not psis:
                        continue
                    psi = min(psis, key=lambda p: abs(mid - p))
                    if abs(mid - psi) < math.pi:
                        alpha += w * math.cos(psi)
                        beta += w * math.sin(psi)
                if alpha == 0.0 and beta == 0.0:
                    continue
                phi = math.atan2(beta, alpha)
                for cand in (phi, phi + 2 * math.pi, phi - 2 * math.pi):
                    if lo < cand < hi:
                        candidates.append(g.locus(e, cand))
            candidates.extend(g.locus(e, c) for c in cuts[1:-1])

        best_value, best_direction = -math.inf, None
        for u in candidates:
            value = self._pull(m, u)
            if value > best_value:
                best_value, best_direction = value, u
        if best_direction is None or best_value <= SNAP:
            return ConePoint()
        return ConePoint(best_direction, best_value)

    def sample_point(self, rng):
        if rng.random() < 0.1:
            return ConePoint()
        g = self.directions
        radius = float(rng.uniform(0.05, 2.0))
        if g.edges and rng.random() < 0.5:
            e = int(rng.integers(len(g.edges)))
            return ConePoint(g.locus(e, float(rng.uniform(0.0, g.lengths[e]))), radius)
        return ConePoint(Locus(vertex=int(rng.integers(g.vertex_count))), radius)

    def oracle_candidates(self, h, support):
        g = self.directions
        reach = max((x.radius for x in support), default=0.0)
        radii = np.arange(h, reach + h, h)
        directions = [Locus(vertex=v) for v in range(g.vertex_count)]
        for e, length in enumerate(g.lengths):
            directions.extend(g.locus(e, float(a)) for a in np.arange(h, length, h))
        total = len(directions) * len(radii) + 1
        if total > MAX_ORACLE_CANDIDATES:
            raise SizeError(f"oracle net of {total} points exceeds {MAX_ORACLE_CANDIDATES}")
        return [ConePoint()] + [ConePoint(u, float(t)) for u in directions for t in radii]

    def to_dict(self) -> dict:
        g = self.directions
        data = {
            "type": self.kind,
            "graph": {"n": g.vertex_count, "edges": [list(e) for e in g.edges], "lengths": list(g.lengths)},
        }
        if self.family:
            data["family"] = list(self.family)
        return data
