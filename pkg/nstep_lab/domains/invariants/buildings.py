"""
Distortion and delta bounds for tangent cones of Euclidean buildings Y_{n,r}.
"""
import logging
import math
from itertools import combinations_with_replacement

from .embeddings import embedding_report, product_radial_distortion, simplex_embedding
from .gram import cone_over_generalized_triangle
from .types import BuildingBounds, BuildingSpec
from ...lib.errors import ParameterError, SizeError

logger = logging.getLogger(__name__)

MAX_CERTIFICATE_R = 5


def chamber_distance(n: int, i: int, j: int) -> float:
    """Distance between chamber vertices e_i, e_j (1 <= i < j <= n) in C(S_{n,r})."""
    if not 1 <= i < j <= n:
        raise ParameterError(f"need 1 <= i < j <= n, got i={i}, j={j}, n={n}")
    ratio = (i * (n + 1 - j)) / (j * (n + 1 - i))
    return math.sqrt(max(2.0 - 2.0 * math.sqrt(ratio), 0.0))


def d_min(n: int) -> float:
    """Smallest chamber-vertex distance: sqrt(2 - 2 sqrt((n-1)/(n+3))) for odd n, 2/sqrt(n+2) for even n."""
    if n < 1:
        raise ParameterError(f"n must be >= 1, got {n}")
    if n % 2:
        return math.sqrt(2.0 - 2.0 * math.sqrt((n - 1) / (n + 3)))
    return 2.0 / math.sqrt(n + 2)


def building_distances(spec: BuildingSpec) -> dict:
    """
    Pairwise chamber-vertex distances and their minimum.

    Args:
        spec: Building dimension n and residue field size r

    Returns:
        Dict with the table as `pairs` (i, j, distance), the case-split
        `d_min`, and the table minimum (None when n = 1, which has no pairs)
    """
    n = spec.n
    pairs = [
        {"i": i, "j": j, "distance": chamber_distance(n, i, j)}
        for i in range(1, n + 1)
        for j in range(i + 1, n + 1)
    ]
    table_min = min((p["distance"] for p in pairs), default=None)
    return {"n": n, "r": spec.r, "pairs": pairs, "d_min": d_min(n), "table_min": table_min}


def building_bounds(spec: BuildingSpec, tol: float = 1e-10) -> BuildingBounds:
    """
    D_rad <= 2/d_min and delta <= 1 - (d_min/2)^2 for the vertex tangent cones.

    For n = 2 the bound is certified by a regular simplex embedding of
    C(G_r) at mutual distance d_min, checked exhaustively.

    Raises:
        SizeError: If n = 2 and r exceeds the certificate limit
    """
    dm = d_min(spec.n)
    distortion = 2.0 / dm
    delta = 1.0 - (dm / 2.0) ** 2

    simplex = None
    if spec.n == 2:
        if spec.r > MAX_CERTIFICATE_R:
            raise SizeError(f"simplex certificate is limited to r <= {MAX_CERTIFICATE_R}, got {spec.r}")
        emb = simplex_embedding(cone_over_generalized_triangle(spec.r), dm)
        simplex = embedding_report(emb, expected_distortion=distortion, tol=tol)
        if not simplex.passed:
            logger.warning("simplex certificate for %s failed: %s", spec, simplex.checks)

    logger.debug("building n=%d: d_min %.6f, D <= %.6f, delta <= %.6f", spec.n, dm, distortion, delta)
    return BuildingBounds(spec=spec, d_min=dm, distortion_bound=distortion, delta_bound=delta, simplex=simplex)


def tangent_cone_bounds(n: int) -> list[dict]:
    """
    Radial distortion bounds for the tangent cones T_{k_1} x ... x T_{k_m} x R^l
    (sum k_i + l = n) of Y_n, using the max rule over factors.
    """
    if n < 1:
        raise ParameterError(f"n must be >= 1, got {n}")
    rows = []
    for count in range(1, n + 1):
        for ks in combinations_with_replacement(range(1, n + 1), count):
            if sum(ks) > n:
                continue
            factors = [2.0 / d_min(k) for k in ks]
            rows.append({"factors": list(ks), "flat_rank": n - sum(ks), "distortion_bound": product_radial_distortion(factors)})
    rows.append({"factors": [], "flat_rank": n, "distortion_bound": 1.0})
    return rows


def bound_table(n_max: int, r: int = 2) -> list[dict]:
    """Rows (n, r, d_min, D_rad bound, delta bound) for n = 1..n_max."""
    if n_max < 1:
        raise ParameterError(f"n_max must be >= 1, got {n_max}")
    rows = []
    for n in range(1, n_max + 1):
        dm = d_min(n)
        rows.append({"n": n, "r": r, "d_min": dm, "distortion_bound": 2.0 / dm, "delta_bound": 1.0 - (dm / 2.0) ** 2})
    return rows
