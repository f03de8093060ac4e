"""
Gram matrices G_{a,b} on the vertices of the generalized triangle G_r, their
closed-form spectra, the optimal pair (a*, b*) and the embedding iota_{a,b}
of the cone C(G_r).
"""
import logging
import math

import numpy as np
from sympy import isprime

from .types import GramSpec, GramSpectrum, OptimalAB, RadialEmbedding
from ..graph import hop_distances
from ..spaces import GraphCone
from ..special import generalized_triangle
from ...lib.errors import DiscrepancyError, ParameterError, SizeError
from ...lib.linalg import MAX_EIGENSOLVE_SIZE, psd_factor, symmetric_eigh

logger = logging.getLogger(__name__)

PSD_TOL = 1e-9
SPECTRUM_TOL = 1e-8


def cone_over_generalized_triangle(r: int) -> GraphCone:
    """C(G_r): the metric cone over G_r with edges of length pi/3."""
    graph, _ = generalized_triangle(r)
    return GraphCone.over(graph, family=("generalized_triangle", r))


def gram_matrix(spec: GramSpec) -> np.ndarray:
    """
    Entries 1, 1/2, a, b by combinatorial distance 0, 1, 2, 3 in G_r.

    Raises:
        ParameterError: If r is not prime
        SizeError: If N exceeds the dense limit
    """
    if spec.size > MAX_EIGENSOLVE_SIZE:
        raise SizeError(f"Gram matrix of size {spec.size} exceeds {MAX_EIGENSOLVE_SIZE}")
    graph, _ = generalized_triangle(spec.r)
    hops = hop_distances(graph)
    values = np.array([1.0, 0.5, spec.a, spec.b])
    return values[hops]


def formula_eigenvalues(spec: GramSpec) -> list[tuple[float, int]]:
    """Closed-form spectrum of G_{a,b} as (eigenvalue, multiplicity)."""
    r, a, b = spec.r, spec.a, spec.b
    points = r * r + r + 1
    sq = math.sqrt(r)
    return [
        (points * (a + b) + (1 - a) + (0.5 - b) * (r + 1), 1),
        (points * (a - b) + (1 - a) - (0.5 - b) * (r + 1), 1),
        ((1 - a) + (0.5 - b) * sq, r * r + r),
        ((1 - a) - (0.5 - b) * sq, r * r + r),
    ]


def gram_eigenvalues(spec: GramSpec, tol: float = SPECTRUM_TOL) -> GramSpectrum:
    """
    Numeric spectrum of G_{a,b} checked against the closed forms.

    Raises:
        DiscrepancyError: If the two disagree beyond tol
    """
    formula = formula_eigenvalues(spec)
    numeric = symmetric_eigh(gram_matrix(spec), eigvals_only=True)
    expected = np.sort(np.concatenate([np.full(m, v) for v, m in formula]))
    defect = float(np.max(np.abs(np.sort(numeric) - expected)))
    if defect > tol * max(1.0, float(np.max(np.abs(expected)))):
        raise DiscrepancyError(f"Gram spectrum for {spec} deviates from the closed form by {defect:.3e}")
    logger.debug("Gram spectrum r=%d matches closed form (defect %.3e)", spec.r, defect)
    return GramSpectrum(spec=spec, numeric=numeric, formula=formula, max_defect=defect)


def optimal_ab(r: int) -> OptimalAB:
    """
    The pair minimizing the distortion of iota_{a,b}:

        a* = (r - 1 - sqrt r) / 2r
        b* = (r^2 - r - (r + 1) sqrt r) / 2r^2
        D* = 2r / sqrt((r + 1)(r + sqrt r))

    PSD is checked on the closed-form spectrum, and numerically when N is
    small enough for a dense eigensolve.

    Raises:
        ParameterError: If r is not prime
        DiscrepancyError: If G_{a*,b*} is not PSD or D* >= 2
    """
    if not isprime(r):
        raise ParameterError(f"r = {r} is not prime")
    sq = math.sqrt(r)
    a = (r - 1 - sq) / (2 * r)
    b = (r * r - r - (r + 1) * sq) / (2 * r * r)
    distortion = 2 * r / math.sqrt((r + 1) * (r + sq))
    spec = GramSpec(r, a, b)

    formula = formula_eigenvalues(spec)
    min_eig = min(v for v, _ in formula)
    numeric = spec.size <= MAX_EIGENSOLVE_SIZE
    if numeric:
        min_eig = min(min_eig, float(gram_eigenvalues(spec).numeric[0]))
    if min_eig < -PSD_TOL:
        raise DiscrepancyError(f"G_(a*,b*) for r={r} is not PSD: min eigenvalue {min_eig:.3e}")
    if distortion >= 2:
        raise DiscrepancyError(f"D*({r}) = {distortion} is not below 2")

    dimension = sum(m for v, m in formula if v > PSD_TOL)
    return OptimalAB(
        r=r,
        a=a,
        b=b,
        distortion=distortion,
        dimension=dimension,
        psd_checked_numerically=numeric,
        min_eigenvalue=min_eig,
    )


def iota_embedding(spec: GramSpec) -> RadialEmbedding:
    """
    iota_{a,b}: C(G_r) -> W_{a,b} from the factorization G_{a,b} = X X^T.

    Raises:
        ParameterError: If G_{a,b} is not PSD
    """
    rows = psd_factor(gram_matrix(spec), tol=PSD_TOL)
    cone = cone_over_generalized_triangle(spec.r)
    return RadialEmbedding(cone=cone, rows=rows, name=f"iota(r={spec.r}, a={spec.a:.6g}, b={spec.b:.6g})")


def map_distortion(spec: GramSpec) -> float:
    """max{sqrt(3 / (2 - 2a)), sqrt(2 / (1 - b))}: ratio at distance-2 and distance-3 pairs."""
    return max(math.sqrt(3 / (2 - 2 * spec.a)), math.sqrt(2 / (1 - spec.b)))


def delta_mu0_closed_form(r: int) -> float:
    sq = math.sqrt(r)
    return (sq - 1) ** 2 / (2 * (r - sq + 1))


def delta_mu0_upper(spec: GramSpec) -> float:
    """
    Upper bound |mean iota(e_i)|^2 / mean |iota(e_i)|^2 = 1^T G 1 / N^2 for
    the uniform measure on vertex directions, from any PSD (a, b).

    Uses the all-ones eigenvalue of G_{a,b}, so no matrix is built.

    Raises:
        ParameterError: If G_{a,b} is not PSD
    """
    formula = formula_eigenvalues(spec)
    if min(v for v, _ in formula) < -PSD_TOL:
        raise ParameterError(f"G_(a,b) is not PSD for {spec}")
    return formula[0][0] / spec.size


def delta_mu0(r: int, tol: float = 1e-10) -> dict:
    """
    delta(mu_0) for the uniform measure on the vertex directions of C(G_r),
    computed through iota_{a*,b*} and checked against (sqrt r - 1)^2 / 2(r - sqrt r + 1).

    Raises:
        DiscrepancyError: If the embedding value and the closed form disagree
    """
    opt = optimal_ab(r)
    closed = delta_mu0_closed_form(r)
    if opt.spec.size <= MAX_EIGENSOLVE_SIZE:
        rows = iota_embedding(opt.spec).rows
        mean = rows.mean(axis=0)
        value = float(mean @ mean) / float(np.mean(np.sum(rows * rows, axis=1)))
        method = "embedding"
    else:
        value = delta_mu0_upper(opt.spec)
        method = "gram_row_sum"
    if abs(value - closed) > tol:
        raise DiscrepancyError(f"delta(mu_0) for r={r}: embedding gives {value}, closed form {closed}")
    return {"r": r, "value": value, "closed_form": closed, "method": method}
