"""
JSON descriptors for spaces, points and measures.

Space descriptors:
    {"type": "euclidean", "dimension": 3}
    {"type": "tree", "graph": <graph ref or {"n", "edges", "lengths"}>}
    {"type": "tree", "legs": 3, "length": 1.0}
    {"type": "pod", "legs": 3}
    {"type": "cone", "graph": <graph ref or object>}
    {"type": "cone", "generalized_triangle": 2}

Point descriptors:
    euclidean  [x, y, ...] or {"coords": [...]}
    tree       {"vertex": v} or {"edge": e, "offset": s}
    cone/pod   {"apex": true}, {"vertex": v, "radius": t}, {"leg": i, "radius": t},
               or {"edge": e, "offset": s, "radius": t}

Measure descriptor:
    {"space": <space>, "support": [<point>, ...], "weights": [...]}
    (uniform when weights are omitted; rescaled when "normalize" is true)
"""
from typing import Any

from .models import CatSpace, Euclidean, GraphCone, MetricTree
from .types import ConePoint, EuclideanPoint, FiniteMeasure, Locus
from ...lib.errors import ParameterError


def space_from_dict(data: dict) -> CatSpace:
    """
    Build a space from its descriptor.

    Raises:
        ParameterError: On an unknown type or missing field
    """
    from ...lib.graph_io import resolve_graph
    from ..special import generalized_triangle

    if not isinstance(data, dict) or "type" not in data:
        raise ParameterError("space descriptor must be an object with a 'type'")
    kind = data["type"]
    try:
        if kind == "euclidean":
            return Euclidean(int(data["dimension"]))
        if kind == "tree":
            if "legs" in data:
                return MetricTree.star(int(data["legs"]), float(data.get("length", 1.0)))
            return MetricTree.from_graph(resolve_graph(data["graph"]))
        if kind == "pod":
            return GraphCone.pod(int(data["legs"]))
        if kind == "cone":
            if "generalized_triangle" in data:
                r = int(data["generalized_triangle"])
                graph, _ = generalized_triangle(r)
                return GraphCone.over(graph, family=("generalized_triangle", r))
            return GraphCone.over(resolve_graph(data["graph"]))
    except KeyError as e:
        raise ParameterError(f"{kind} space descriptor is missing {e}") from None
    raise ParameterError(f"unknown space type: {kind!r}")


def _locus(space, data: dict) -> Locus:
    graph = space.skeleton if isinstance(space, MetricTree) else space.directions
    if "vertex" in data:
        return Locus(vertex=int(data["vertex"]))
    if "leg" in data:
        return Locus(vertex=int(data["leg"]))
    if "edge" in data:
        return graph.locus(int(data["edge"]), float(data.get("offset", 0.0)))
    raise ParameterError(f"point descriptor {data!r} names no vertex, leg or edge")


def point_from_dict(space: CatSpace, data: Any):
    """Parse a point descriptor and check it belongs to space."""
    if isinstance(space, Euclidean):
        coords = data["coords"] if isinstance(data, dict) else data
        point = EuclideanPoint.of(coords)
    elif not isinstance(data, dict):
        raise ParameterError(f"point descriptor must be an object, got {data!r}")
    elif isinstance(space, MetricTree):
        point = _locus(space, data)
    elif data.get("apex") or float(data.get("radius", 0.0)) == 0.0:
        point = ConePoint()
    else:
        point = ConePoint(_locus(space, data), float(data["radius"]))
    space.check(point)
    return point


def measure_from_dict(data: dict) -> tuple[CatSpace, FiniteMeasure]:
    """
    Parse a measure descriptor.

    Returns:
        (space, measure)
    """
    if not isinstance(data, dict) or "space" not in data or "support" not in data:
        raise ParameterError("measure descriptor needs 'space' and 'support'")
    space = space_from_dict(data["space"])
    points = [point_from_dict(space, p) for p in data["support"]]
    weights = data.get("weights")
    if weights is None:
        return space, FiniteMeasure.uniform(points)
    if data.get("normalize"):
        return space, FiniteMeasure.normalized(points, weights)
    return space, FiniteMeasure(tuple(points), weights)


def measure_to_dict(space: CatSpace, m: FiniteMeasure) -> dict:
    data = m.to_dict()
    data["space"] = space.to_dict()
    return data
