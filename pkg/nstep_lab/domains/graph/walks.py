"""
Random walks on graphs: the standard walk, its stationary measure, and
convolution powers.
"""
import logging

import numpy as np
from scipy import sparse

from .types import Graph, VertexMeasure, WalkKernel
from ...lib.errors import ParameterError

logger = logging.getLogger(__name__)


def standard_measure(G: Graph) -> VertexMeasure:
    """nu_G(u) = deg(u) / 2|E|."""
    return VertexMeasure(G.degrees / (2.0 * G.edge_count))


def standard_walk(G: Graph) -> tuple[WalkKernel, VertexMeasure]:
    """
    Standard random walk mu_G(u, v) = (number of u-v edges) / deg(u).

    Returns:
        (kernel, stationary measure)
    """
    nu = standard_measure(G)
    inv_deg = sparse.diags(1.0 / G.degrees.astype(float))
    kernel = WalkKernel(matrix=inv_deg @ G.adjacency_matrix, stationary=nu.weights, steps=1)
    return kernel, nu


def convolve(k1: WalkKernel, k2: WalkKernel) -> WalkKernel:
    """
    Convolution (k1 * k2)(u, w) = sum_v k1(u, v) k2(v, w).

    Raises:
        ParameterError: If the state sets differ in size
    """
    if k1.size != k2.size:
        raise ParameterError(f"cannot convolve kernels on {k1.size} and {k2.size} states")
    stationary = k1.stationary if k1.stationary is not None else k2.stationary
    return WalkKernel(
        matrix=k1.matrix @ k2.matrix,
        stationary=stationary,
        steps=k1.steps + k2.steps,
        states=k1.states,
    )


def kernel_power(k: WalkKernel, n: int) -> WalkKernel:
    """
    n-fold convolution power by repeated squaring.

    Raises:
        ParameterError: If n < 1
    """
    if n < 1:
        raise ParameterError(f"kernel power must be >= 1, got {n}")
    if n == 1:
        return k

    result = None
    base = k
    remaining = n
    while remaining:
        if remaining & 1:
            result = base if result is None else convolve(result, base)
        remaining >>= 1
        if remaining:
            base = convolve(base, base)
    logger.debug("kernel power %d on %d states: %d nonzeros", n, k.size, result.matrix.nnz)
    return result


def dense_power(G: Graph, n: int) -> np.ndarray:
    """mu_G^n as a dense matrix."""
    kernel, _ = standard_walk(G)
    return kernel_power(kernel, n).to_dense()
