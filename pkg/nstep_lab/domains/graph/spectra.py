"""
Spectral gap of the standard Laplacian I - mu_G.

The walk matrix is symmetrized as D^{1/2} mu_G D^{-1/2} with D = diag(nu_G),
which for the standard walk is A_uv / sqrt(deg u deg v).
"""
import logging

import numpy as np

from .types import Graph
from .walks import standard_measure
from ...lib.errors import ParameterError
from ...lib.linalg import MAX_EIGENSOLVE_SIZE, symmetric_eigh

logger = logging.getLogger(__name__)


def _symmetric_laplacian(G: Graph) -> np.ndarray:
    inv_sqrt = 1.0 / np.sqrt(G.degrees.astype(float))
    adjacency = G.adjacency_matrix.toarray()
    normalized = adjacency * inv_sqrt[:, None] * inv_sqrt[None, :]
    return np.eye(G.vertex_count) - normalized


def laplacian_spectrum(G: Graph, max_size: int = MAX_EIGENSOLVE_SIZE) -> tuple[np.ndarray, np.ndarray]:
    """
    Full spectrum of Delta_G = I - mu_G.

    Returns:
        (eigenvalues ascending, eigenfunctions as columns, nu-orthonormal)
    """
    values, vectors = symmetric_eigh(_symmetric_laplacian(G), max_size=max_size)
    nu = standard_measure(G).weights
    return values, vectors / np.sqrt(nu)[:, None]


def spectral_gap_real(G: Graph, max_size: int = MAX_EIGENSOLVE_SIZE) -> float:
    """
    lambda_1(G, R): second-smallest eigenvalue of I - mu_G.

    Raises:
        SizeError: If the graph has more than max_size vertices
        ConvergenceError: If the eigensolver fails
    """
    if G.vertex_count < 2:
        raise ParameterError("spectral gap needs at least 2 vertices")
    values = symmetric_eigh(_symmetric_laplacian(G), subset=(0, 1), max_size=max_size, eigvals_only=True)
    gap = float(values[1])
    logger.debug("lambda_1(%s, R) = %.12f", G.name or "<anon>", gap)
    return gap


def rayleigh_quotient_real(G: Graph, phi) -> float:
    """
    Real Rayleigh quotient with the nu_G-weighted mean in the denominator.

    Raises:
        ParameterError: If phi is constant
    """
    phi = np.asarray(phi, dtype=float)
    if phi.shape != (G.vertex_count,):
        raise ParameterError(f"function needs {G.vertex_count} values, got shape {phi.shape}")
    nu = standard_measure(G).weights
    u, v = np.array(G.edges).T
    numerator = float(np.sum((phi[u] - phi[v]) ** 2)) / (2.0 * G.edge_count)
    mean = float(nu @ phi)
    denominator = float(nu @ (phi - mean) ** 2)
    if denominator <= 0.0:
        raise ParameterError("Rayleigh quotient undefined for a constant function")
    return numerator / denominator
