"""
Dense symmetric eigensolves with a size guard and residual reporting.
"""
import logging
from typing import Optional

import numpy as np
from scipy import linalg

from .errors import ConvergenceError, ParameterError, SizeError

logger = logging.getLogger(__name__)

MAX_EIGENSOLVE_SIZE = 4000


def symmetric_eigh(
    matrix: np.ndarray,
    subset: Optional[tuple[int, int]] = None,
    max_size: int = MAX_EIGENSOLVE_SIZE,
    eigvals_only: bool = False,
):
    """
    Eigen-decomposition of a real symmetric matrix, ascending order.

    Args:
        matrix: Dense symmetric matrix
        subset: Optional (lo, hi) inclusive index range of eigenvalues
        max_size: Reject larger matrices
        eigvals_only: Skip eigenvectors

    Returns:
        eigenvalues, or (eigenvalues, eigenvectors)

    Raises:
        SizeError: If the matrix exceeds max_size
        ConvergenceError: If LAPACK fails to converge
    """
    n = matrix.shape[0]
    if n > max_size:
        raise SizeError(f"dense eigensolve limited to {max_size} states, got {n}")

    sym = 0.5 * (matrix + matrix.T)
    try:
        result = linalg.eigh(sym, subset_by_index=subset, eigvals_only=eigvals_only)
    except linalg.LinAlgError as e:
        residual = float(np.linalg.norm(matrix - matrix.T))
        raise ConvergenceError(f"eigensolve failed on {n}x{n} matrix: {e}", residual=residual) from e

    if not eigvals_only:
        values, vectors = result
        residual = float(np.max(np.abs(sym @ vectors - vectors * values))) if values.size else 0.0
        logger.debug("eigensolve n=%d residual=%.3e", n, residual)
        return values, vectors
    return result


def psd_factor(gram: np.ndarray, tol: float = 1e-9) -> np.ndarray:
    """
    Factor a PSD Gram matrix as X^T X using positive eigen-directions.

    Eigenvalues in [-tol, 0) are clamped to zero.

    Returns:
        Matrix with one row per original index and one column per retained direction

    Raises:
        ParameterError: If the minimum eigenvalue is below -tol
    """
    values, vectors = symmetric_eigh(gram)
    if values[0] < -tol:
        raise ParameterError(f"matrix is not positive semidefinite: min eigenvalue {values[0]:.3e}")
    clamped = np.count_nonzero((values < 0) & (values >= -tol))
    if clamped:
        logger.debug("clamped %d slightly negative eigenvalues", clamped)
    keep = values > tol
    return vectors[:, keep] * np.sqrt(values[keep])
