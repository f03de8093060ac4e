"""
Exception hierarchy shared by all domains.

The CLI maps these onto exit codes (see cli.exit_code_for).
"""
from typing import Any, Optional


class LabError(Exception):
    """Base class for every error raised by nstep_lab."""


class ParameterError(LabError, ValueError):
    """An input violates an operation's precondition."""


class GraphError(ParameterError):
    """Malformed graph input (empty, disconnected, duplicate edges, loops)."""

    def __init__(self, message: str, components: Optional[list[int]] = None):
        super().__init__(message)
        self.components = components or []


class SizeError(ParameterError):
    """A size guard was hit before doing the expensive work."""


class SpaceMismatchError(ParameterError):
    """Points or measures from different spaces were mixed."""


class UnsupportedError(LabError):
    """The operation is not implemented for this space/point combination."""


class ConvergenceError(LabError):
    """An iteration or eigensolve did not converge."""

    def __init__(self, message: str, residual: Optional[float] = None, trace: Optional[list[Any]] = None):
        super().__init__(message)
        self.residual = residual
        self.trace = trace or []


class DiscrepancyError(LabError):
    """A closed-form formula disagrees with the numeric computation."""


class CertificationFailure(LabError):
    """A report's assertions failed."""

    def __init__(self, message: str, report: Optional[dict] = None):
        super().__init__(message)
        self.report = report
