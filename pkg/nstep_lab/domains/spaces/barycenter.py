"""
Barycenters of finite measures on CAT(0) spaces and the variance and
inner-product inequalities around them.
"""
import logging
from typing import Optional

import numpy as np

from .models import CatSpace, Euclidean, GraphCone
from .types import FiniteMeasure, InnerProductReport, TangentVector, VarianceReport
from ...lib.errors import ParameterError, UnsupportedError

logger = logging.getLogger(__name__)

DEFAULT_TOL = 1e-9
DEFAULT_MAX_PASSES = 10_000
DEFAULT_PATIENCE = 25


def frechet_objective(space: CatSpace, m: FiniteMeasure, q) -> float:
    """sum t_i d(p_i, q)^2."""
    return float(sum(t * space.distance(x, q) ** 2 for x, t in m.items()))


def inductive_mean(
    space: CatSpace,
    m: FiniteMeasure,
    passes: int = DEFAULT_MAX_PASSES,
    tol: float = DEFAULT_TOL,
    seed: Optional[int] = 0,
    patience: int = DEFAULT_PATIENCE,
):
    """
    Iterated geodesic averaging with cumulative weights.

    Each pass visits the support in a shuffled order; visiting p_i with mass
    t_i moves the running mean a fraction t_i / W toward p_i, where W is the
    total mass folded in so far. The steps shrink like 1/pass, so the stop
    rule watches the Frechet objective of the pass-end means instead of their
    displacement: the scheme stops once `patience` consecutive passes fail to
    lower the best objective by more than tol, and never before
    4 * patience passes.

    Args:
        space: Ambient CAT(0) space
        m: Measure to average
        passes: Maximum number of passes over the support
        tol: Smallest objective decrease that counts as progress
        seed: Seed for the visiting order
        patience: Passes without progress before stopping

    Returns:
        (best pass-end mean, last objective decrease, passes used)
    """
    space.check_measure(m)
    if passes < 1:
        raise ParameterError(f"passes must be >= 1, got {passes}")
    if patience < 1:
        raise ParameterError(f"patience must be >= 1, got {patience}")
    if len(m) == 1:
        return m.support[0], 0.0, 0

    rng = np.random.default_rng(seed)
    current = m.support[0]
    folded = 0.0
    best, best_value = current, frechet_objective(space, m, current)
    stale, residual = 0, np.inf
    for k in range(1, passes + 1):
        for i in rng.permutation(len(m)):
            t = float(m.weights[i])
            folded += t
            current = space.geodesic_point(current, m.support[i], min(t / folded, 1.0))
        value = frechet_objective(space, m, current)
        residual = max(best_value - value, 0.0)
        if value < best_value:
            best, best_value = current, value
        stale = stale + 1 if residual <= tol else 0
        if stale >= patience and k >= 4 * patience:
            logger.debug("inductive mean settled after %d passes (objective %.12g)", k, best_value)
            return best, residual, k
    logger.warning(
        "inductive mean still improving after %d passes (last decrease %.3e); returning best mean",
        passes, residual,
    )
    return best, residual, passes


def barycenter(
    space: CatSpace,
    m: FiniteMeasure,
    method: str = "auto",
    tol: float = DEFAULT_TOL,
    max_passes: int = DEFAULT_MAX_PASSES,
    seed: Optional[int] = 0,
):
    """
    Unique minimizer of q -> sum t_i d(p_i, q)^2.

    Args:
        space: Ambient CAT(0) space
        m: Measure with support in space
        method: "exact", "inductive", or "auto" (exact when the space has it)
        tol: Objective-decrease tolerance for the inductive scheme
        max_passes: Pass limit for the inductive scheme
        seed: Seed for the inductive visiting order

    Returns:
        The barycenter; the best inductive mean found when the pass limit is hit

    Raises:
        UnsupportedError: If method is "exact" and the space has no exact solver
    """
    if method not in ("auto", "exact", "inductive"):
        raise ParameterError(f"unknown barycenter method: {method}")
    space.check_measure(m)
    if method != "inductive":
        point = space.exact_barycenter(m)
        if point is not None:
            return point
        if method == "exact":
            raise UnsupportedError(f"no exact barycenter on {space.kind}")

    point, _, _ = inductive_mean(space, m, passes=max_passes, tol=tol, seed=seed)
    return point


def barycenter_oracle(space: CatSpace, m: FiniteMeasure, h: float):
    """
    Brute-force minimizer of the Frechet objective over an h-net.

    The net covers the region spanned by the support (the convex hull in
    Euclidean space, all of a tree, radii up to the largest support radius
    in a cone), so the result is within h times a Lipschitz bound of optimal.

    Raises:
        ParameterError: If h <= 0
        SizeError: If the net is too large
    """
    if h <= 0:
        raise ParameterError(f"grid step must be positive, got {h}")
    space.check_measure(m)
    candidates = space.oracle_candidates(h, m.support)
    logger.debug("oracle scanning %d candidates at h=%g", len(candidates), h)
    best_value, best = np.inf, None
    for q in candidates:
        value = frechet_objective(space, m, q)
        if value < best_value:
            best_value, best = value, q
    return best


def variance_report(space: CatSpace, m: FiniteMeasure, w, tol: float = 1e-8) -> VarianceReport:
    """
    Both variance inequalities at a test point w:

        sum t_i d(v_i, w)^2 >= sum t_i d(v_i, b)^2 + d(b, w)^2
        1/2 sum_ij t_i t_j d(v_i, v_j)^2 >= sum t_i d(v_i, b)^2
    """
    space.check(w)
    b = barycenter(space, m)
    spread = frechet_objective(space, m, b)
    pairwise = 0.0
    for i, (x, s) in enumerate(m.items()):
        for y, t in list(m.items())[i + 1:]:
            pairwise += s * t * space.distance(x, y) ** 2
    return VarianceReport(
        barycenter=b,
        lhs1=frechet_objective(space, m, w),
        rhs1=spread + space.distance(b, w) ** 2,
        lhs2=pairwise,
        rhs2=spread,
        tol=tol,
    )


def tangent_inner_product_check(space: CatSpace, m: FiniteMeasure, w, tol: float = 1e-8) -> InnerProductReport:
    """
    <b, w> - sum t_i <v_i, w> and the equality defect |b|^2 - sum t_i <v_i, b>
    for a measure on a cone (Euclidean space or a graph cone such as a pod).

    Args:
        space: Cone carrying the measure
        m: Measure of tangent vectors, as points of the cone
        w: Test vector, as a point of the cone or a TangentVector in it
    """
    if not isinstance(space, (Euclidean, GraphCone)):
        raise UnsupportedError(f"inner products are not defined on {space.kind}")
    if isinstance(w, TangentVector):
        if w.space != space:
            raise ParameterError("test vector lives in a different tangent cone")
        w = w.vector
    space.check(w)
    b = barycenter(space, m)
    slack = space.inner(b, w) - sum(t * space.inner(x, w) for x, t in m.items())
    defect = space.norm(b) ** 2 - sum(t * space.inner(x, b) for x, t in m.items())
    return InnerProductReport(barycenter=b, slack=float(slack), equality_defect=float(defect), tol=tol)
