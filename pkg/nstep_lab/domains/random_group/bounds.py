"""
Tail bounds and the constants of the fixed-point argument for the graph model.
"""
import logging
import math
from functools import lru_cache
from typing import Optional, Sequence

import numpy as np
from scipy import integrate, stats

from .types import BernoulliBound, GraphHypotheses, PipelineConstants, TransplantReport
from ..energy.energies import vertex_map_energy
from ..graph import Graph, count_embedded_paths, girth_and_diameter, spectral_gap_real
from ..invariants import certificate
from ..spaces import CatSpace
from ...lib.errors import ParameterError, SizeError

logger = logging.getLogger(__name__)

# Largest observed b^m(sqrt m) over 2 <= m <= 200, attained at m = 4
BERNOULLI_C_OBSERVED = 0.875
DEFAULT_C_ABS = 8.0 / (1.0 - BERNOULLI_C_OBSERVED)


def _window(n: int) -> tuple[int, int]:
    """Head counts j with |2j - n| <= sqrt n."""
    s = math.isqrt(n)
    return (n - s + 1) // 2, (n + s) // 2


def _bernoulli_tail(n: int) -> float:
    """P(|S_n| <= sqrt n) for n fair +-1 steps, as an exact binomial sum."""
    lo, hi = _window(n)
    return sum(math.comb(n, j) for j in range(lo, hi + 1)) / 2**n


def _bernoulli_tails(m_max: int) -> np.ndarray:
    """b^m(sqrt m) for m = 2..m_max from the binomial CDF."""
    m = np.arange(2, m_max + 1)
    s = np.array([math.isqrt(int(x)) for x in m])
    lo, hi = (m - s + 1) // 2, (m + s) // 2
    return stats.binom.cdf(hi, m, 0.5) - stats.binom.cdf(lo - 1, m, 0.5)


@lru_cache(maxsize=1)
def gaussian_reference() -> float:
    """Standard normal mass of [-1, 1] by adaptive quadrature (about 0.682689)."""
    value, _ = integrate.quad(stats.norm.pdf, -1.0, 1.0, epsabs=1e-14, epsrel=1e-14)
    return float(value)


def bernoulli_bound(n: int) -> BernoulliBound:
    """
    b^n(sqrt n) and its running maximum over 2 <= m <= n.

    Raises:
        ParameterError: If n < 2
    """
    if n < 2:
        raise ParameterError(f"n must be >= 2, got {n}")
    tails = _bernoulli_tails(n)
    index = int(np.argmax(tails))
    best, argmax = float(tails[index]), index + 2
    return BernoulliBound(n=n, value=_bernoulli_tail(n), c_observed=best, argmax=argmax, reference=gaussian_reference())


def lower_wang_bound(G: Graph, space: CatSpace, route: str = "auto") -> tuple[float, str]:
    """
    Certified lower bound for lambda_1(G, T): (1 - delta) lambda_1(G, R) or
    lambda_1(G, R) / D^2, the larger one under route="auto".

    Raises:
        ParameterError: If T has no certificate for the requested route
    """
    cert = certificate(space)
    if cert is None:
        raise ParameterError(f"no distortion or delta certificate for {type(space).__name__}")
    lam = spectral_gap_real(G)
    options = {}
    if cert.delta is not None:
        options["delta"] = (1.0 - cert.delta) * lam
    if cert.distortion is not None:
        options["distortion"] = lam / cert.distortion ** 2
    if route == "auto":
        route = max(options, key=options.get)
    if route not in options:
        raise ParameterError(f"certificate for {cert.target} has no {route!r} route")
    return options[route], route


def spectral_transplant_check(
    G: Graph, space: CatSpace, phi: Sequence, n: int, route: str = "auto", tol: float = 1e-8
) -> TransplantReport:
    """
    E_{mu_G^n}(phi) <= (2 / lambda_lower) E_{mu_G}(phi) with a certified
    lambda_lower <= lambda_1(G, T).
    """
    if n < 1:
        raise ParameterError(f"number of steps must be >= 1, got {n}")
    lam, used = lower_wang_bound(G, space, route)
    lhs = vertex_map_energy(G, space, phi, n)
    rhs = 2.0 / lam * vertex_map_energy(G, space, phi, 1)
    return TransplantReport(n=n, lhs=lhs, rhs=rhs, lambda_lower=lam, route=used, tol=tol)


def fixed_point_pipeline(
    lambda0: float, c_abs: Optional[float] = None, girth: Optional[float] = None
) -> PipelineConstants:
    """
    n = min{m : C/lambda0 < sqrt m}, eps = sqrt n - C/lambda0, g0 = 2n and
    C_grad = 2 eps^2 / (n^2 (n - 1)^2).

    Args:
        lambda0: Lower bound on lambda_1(G, TC_p Y)
        c_abs: The absolute constant C; defaults to 8/(1 - 0.875) = 64
        girth: Optional girth to test against g0

    Raises:
        ParameterError: If lambda0 <= 0 or c_abs <= 0
    """
    if lambda0 <= 0:
        raise ParameterError(f"lambda0 must be positive, got {lambda0}")
    source = "supplied"
    if c_abs is None:
        c_abs, source = DEFAULT_C_ABS, "default 8/(1 - C_bernoulli), not a proven value"
    if c_abs <= 0:
        raise ParameterError(f"c_abs must be positive, got {c_abs}")

    ratio = c_abs / lambda0
    n = max(1, math.floor(ratio * ratio) + 1)
    while math.sqrt(n) <= ratio:
        n += 1
    while n > 1 and math.sqrt(n - 1) > ratio:
        n -= 1
    eps = math.sqrt(n) - ratio
    c_grad = 2 * eps * eps / (n * n * (n - 1) ** 2) if n > 1 else None
    logger.debug("pipeline: C/lambda0=%.6g -> n=%d, g0=%d", ratio, n, 2 * n)
    return PipelineConstants(
        lambda0=lambda0,
        c_abs=c_abs,
        c_abs_source=source,
        n=n,
        eps=eps,
        g0=2 * n,
        c_grad=c_grad,
        girth=girth,
    )


def graph_hypotheses(
    G: Graph,
    g0: int,
    d0: Optional[int] = None,
    mu0: Optional[float] = None,
    count_paths: bool = True,
) -> GraphHypotheses:
    """
    Measure the graph-side hypotheses: 2 <= deg <= d0, girth >= g0, the
    girth/diameter ratio, embedded paths shorter than girth/2, and
    lambda_1(G, R) >= mu0 when mu0 is given.

    The path count is skipped (None) when it would overflow.
    """
    girth, diameter = girth_and_diameter(G)
    degrees = G.degrees
    lam = spectral_gap_real(G)
    checks = {
        "degree_window": bool(degrees.min() >= 2 and (d0 is None or degrees.max() <= d0)),
        "girth": girth >= g0,
    }
    if mu0 is not None:
        checks["spectral_gap"] = lam >= mu0

    count = bound = None
    if count_paths and girth != math.inf:
        bound = math.ceil(girth / 2)
        try:
            count = count_embedded_paths(G, bound)
        except SizeError as e:
            logger.warning("path count skipped: %s", e)

    return GraphHypotheses(
        graph=G.name,
        min_degree=int(degrees.min()),
        max_degree=int(degrees.max()),
        girth=girth,
        diameter=diameter,
        lambda_real=lam,
        path_count=count,
        path_length_bound=bound,
        checks=checks,
    )
