"""Shared utilities for nstep-lab."""
from .errors import (
    LabError,
    ParameterError,
    GraphError,
    SizeError,
    SpaceMismatchError,
    UnsupportedError,
    ConvergenceError,
    DiscrepancyError,
    CertificationFailure,
)

__all__ = [
    "LabError",
    "ParameterError",
    "GraphError",
    "SizeError",
    "SpaceMismatchError",
    "UnsupportedError",
    "ConvergenceError",
    "DiscrepancyError",
    "CertificationFailure",
]
