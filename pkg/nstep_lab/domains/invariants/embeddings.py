"""
Radial embeddings of cones into Euclidean space, their distortion, and the
distortion and delta certificates derived from them.
"""
import itertools
import logging
import math
from typing import Optional, Sequence

import numpy as np

from .gram import cone_over_generalized_triangle, optimal_ab
from .types import Certificate, EmbeddingReport, RadialEmbedding
from ..spaces import (
    CatSpace,
    ConePoint,
    Euclidean,
    FiniteMeasure,
    GraphCone,
    Locus,
    MetricTree,
    barycenter,
)
from ...lib.errors import ParameterError

logger = logging.getLogger(__name__)

LIPSCHITZ_RADII = (0.0, 0.5, 1.0, 2.0)


def regular_simplex(count: int) -> np.ndarray:
    """
    `count` unit vectors in R^(count-1) with pairwise inner product -1/(count-1),
    centered at the origin (centering plus SVD of the standard basis).
    """
    if count < 2:
        raise ParameterError(f"a simplex needs at least 2 vertices, got {count}")
    centered = np.eye(count) - 1.0 / count
    u, s, _ = np.linalg.svd(centered)
    coords = u[:, : count - 1] * s[: count - 1]
    return coords / np.linalg.norm(coords, axis=1, keepdims=True)


def pod_embedding(r: int) -> RadialEmbedding:
    """The r+1 legs of P_{r+1} sent to the vertices of a regular r-simplex."""
    if r < 1:
        raise ParameterError(f"r must be >= 1, got {r}")
    return RadialEmbedding(cone=GraphCone.pod(r + 1), rows=regular_simplex(r + 1), name=f"pod(r={r})")


def pod_distortion(r: int) -> float:
    """D_rad(P_{r+1}) = sqrt(2r / (r + 1))."""
    return math.sqrt(2 * r / (r + 1))


def simplex_embedding(cone: GraphCone, separation: float) -> RadialEmbedding:
    """
    Vertex directions of a cone sent to a regular simplex with mutual
    distance `separation` (Gram matrix (1 - s^2/2) J + (s^2/2) I).
    """
    n = cone.directions.vertex_count
    c = 1.0 - separation ** 2 / 2.0
    if not -1.0 / (n - 1) <= c < 1.0:
        raise ParameterError(f"no regular simplex of {n} unit vectors at distance {separation}")
    gram = c * np.ones((n, n)) + (1.0 - c) * np.eye(n)
    values, vectors = np.linalg.eigh(gram)
    keep = values > 1e-12
    rows = vectors[:, keep] * np.sqrt(values[keep])
    return RadialEmbedding(cone=cone, rows=rows, name=f"simplex(N={n}, d={separation:.6g})")


def _directions(cone: GraphCone, midpoints: bool) -> list[Locus]:
    g = cone.directions
    dirs = [Locus(vertex=v) for v in range(g.vertex_count)]
    if midpoints:
        dirs += [g.locus(e, length / 2) for e, length in enumerate(g.lengths)]
    return dirs


def embedding_report(
    emb: RadialEmbedding,
    midpoints: bool = True,
    expected_distortion: Optional[float] = None,
    tol: float = 1e-10,
) -> EmbeddingReport:
    """
    Exhaustive checks of a radial embedding over direction pairs x radii
    {0, 1/2, 1, 2}: unit norms, |iota(v) - iota(v')| <= d(v, v'), isometry on
    adjacent vertex directions, and the realized distortion (the largest
    d / |iota - iota'| over distinct vertex directions at radius 1).
    """
    cone = emb.cone
    dirs = _directions(cone, midpoints)
    vecs = np.array([emb.direction(u) for u in dirs])
    unit_defect = float(np.max(np.abs(np.linalg.norm(vecs, axis=1) - 1.0)))

    count = len(dirs)
    cos_angle = np.ones((count, count))
    for i, j in itertools.combinations(range(count), 2):
        theta = min(cone.directions.distance(dirs[i], dirs[j]), math.pi)
        cos_angle[i, j] = cos_angle[j, i] = math.cos(theta)
    inner = vecs @ vecs.T

    slack = math.inf
    for t, s in itertools.product(LIPSCHITZ_RADII, repeat=2):
        base = t * t + s * s
        d2 = np.maximum(base - 2 * t * s * cos_angle, 0.0)
        e2 = np.maximum(base - 2 * t * s * inner, 0.0)
        slack = min(slack, float(np.min(np.sqrt(d2) - np.sqrt(e2))))

    nv = cone.directions.vertex_count
    off = ~np.eye(nv, dtype=bool)
    d_unit = np.sqrt(np.maximum(2 - 2 * cos_angle[:nv, :nv][off], 0.0))
    e_unit = np.sqrt(np.maximum(2 - 2 * inner[:nv, :nv][off], 0.0))
    realized = float(np.max(d_unit / np.maximum(e_unit, 1e-300))) if nv > 1 else 1.0

    edge_defect = None
    g = cone.directions
    if g.edges:
        edge_defect = 0.0
        for e, (a, b) in enumerate(g.edges):
            d = math.sqrt(2 - 2 * math.cos(min(g.lengths[e], math.pi)))
            edge_defect = max(edge_defect, abs(float(np.linalg.norm(emb.rows[a] - emb.rows[b])) - d))

    logger.debug("embedding %s: slack %.3e, distortion %.6f", emb.name, slack, realized)
    return EmbeddingReport(
        name=emb.name,
        unit_norm_defect=unit_defect,
        lipschitz_slack=slack,
        edge_isometry_defect=edge_defect,
        realized_distortion=realized,
        expected_distortion=expected_distortion,
        tol=tol,
    )


def distortion_variance_check(emb: RadialEmbedding, m: FiniteMeasure, distortion: float) -> float:
    """
    Slack of sum t_i |iota(v_i) - mean|^2 >= D^-2 sum t_i d(v_i, b)^2, with b
    the barycenter of m in the cone.
    """
    cone = emb.cone
    points = np.array([emb.embed(x) for x in m.support])
    mean = m.weights @ points
    lhs = float(m.weights @ np.sum((points - mean) ** 2, axis=1))
    b = barycenter(cone, m)
    rhs = sum(t * cone.distance(x, b) ** 2 for x, t in m.items()) / distortion ** 2
    return lhs - rhs


def delta_from_distortion(distortion: float) -> float:
    """
    delta(T) <= 1 - 1/D^2 for a CAT(0) cone T of radial distortion D.

    Raises:
        ParameterError: If D < 1
    """
    if distortion < 1:
        raise ParameterError(f"distortion must be >= 1, got {distortion}")
    return 1.0 - 1.0 / distortion ** 2


def product_radial_distortion(factors: Sequence[float]) -> float:
    """Radial distortion bound of a product of cones: the largest factor (R^l factors count as 1)."""
    if not factors:
        raise ParameterError("product needs at least one factor")
    if any(d < 1 for d in factors):
        raise ParameterError(f"distortions must be >= 1, got {list(factors)}")
    return float(max(factors))


def certificate(space: CatSpace) -> Optional[Certificate]:
    """
    Known distortion and delta bounds for a target:

    - R^d: D = 1, delta = 0
    - pod P_m: D = sqrt(2(m-1)/m), delta = 0
    - C(G_r): D = D*(r), delta <= 1 - 1/D*^2 (the rank-2 building bound 3/4 is reported too)
    - finite trees: delta = 0 (every tangent cone is a pod)

    Returns None for targets without a certificate.
    """
    if isinstance(space, Euclidean):
        return Certificate(target=f"R^{space.dimension}", distortion=1.0, delta=0.0, source="isometric")
    if isinstance(space, GraphCone) and space.is_pod:
        m = space.directions.vertex_count
        if m == 1:
            return Certificate(target="P_1", distortion=1.0, delta=0.0, source="half-line")
        return Certificate(
            target=f"P_{m}", distortion=pod_distortion(m - 1), delta=0.0, source="regular simplex"
        )
    if isinstance(space, GraphCone) and space.family[:1] == ("generalized_triangle",):
        r = space.family[1]
        opt = optimal_ab(r)
        return Certificate(
            target=f"C(G_{r})",
            distortion=opt.distortion,
            delta=delta_from_distortion(opt.distortion),
            source="iota_(a*,b*)",
            extra={"delta_building_bound": 0.75},
        )
    if isinstance(space, MetricTree):
        return Certificate(target="tree", distortion=None, delta=0.0, source="pod tangent cones")
    return None


def pod_tip_mean(r: int) -> float:
    """|mean of the simplex vertices| for the pod embedding; zero witnesses delta(P_{r+1}) = 0."""
    return float(np.linalg.norm(pod_embedding(r).rows.mean(axis=0)))


def uniform_vertex_measure(cone: GraphCone, radius: float = 1.0) -> FiniteMeasure:
    """Uniform measure on the vertex directions at the given radius."""
    n = cone.directions.vertex_count
    return FiniteMeasure.uniform([ConePoint(Locus(vertex=v), radius) for v in range(n)])


__all__ = [
    "regular_simplex",
    "pod_embedding",
    "pod_distortion",
    "simplex_embedding",
    "embedding_report",
    "distortion_variance_check",
    "delta_from_distortion",
    "product_radial_distortion",
    "certificate",
    "pod_tip_mean",
    "uniform_vertex_measure",
]
