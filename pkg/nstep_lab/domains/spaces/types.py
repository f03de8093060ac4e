"""Type definitions for the CAT(0) spaces domain."""
from dataclasses import dataclass
from typing import TYPE_CHECKING, Any, Optional, Sequence, Union

import numpy as np

from ...lib.errors import ParameterError, SpaceMismatchError

if TYPE_CHECKING:
    from .models import CatSpace

# Weights of a finite measure must sum to 1 within this tolerance
WEIGHT_TOL = 1e-12


@dataclass(frozen=True)
class EuclideanPoint:
    """Point of R^d."""
    coords: tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(float(x) for x in self.coords))

    @classmethod
    def of(cls, values) -> "EuclideanPoint":
        return cls(tuple(np.asarray(values, dtype=float).ravel()))

    @property
    def array(self) -> np.ndarray:
        return np.array(self.coords)

    def to_dict(self) -> dict:
        return {"coords": list(self.coords)}


@dataclass(frozen=True)
class Locus:
    """
    Position on a metric graph: either a vertex, or (edge id, offset) with
    the offset measured from the edge's first endpoint and strictly inside.
    """
    vertex: Optional[int] = None
    edge: Optional[int] = None
    offset: float = 0.0

    @property
    def is_vertex(self) -> bool:
        return self.vertex is not None

    def to_dict(self) -> dict:
        if self.is_vertex:
            return {"vertex": self.vertex}
        return {"edge": self.edge, "offset": self.offset}


@dataclass(frozen=True)
class ConePoint:
    """Point (direction, radius) of a metric cone; the apex has no direction."""
    direction: Optional[Locus] = None
    radius: float = 0.0

    def __post_init__(self):
        if self.radius < 0:
            raise ParameterError(f"cone radius must be >= 0, got {self.radius}")
        if self.direction is None and self.radius != 0.0:
            raise ParameterError("a cone point without direction must be the apex (radius 0)")
        if self.direction is not None and self.radius == 0.0:
            object.__setattr__(self, "direction", None)

    @property
    def is_apex(self) -> bool:
        return self.direction is None

    def to_dict(self) -> dict:
        if self.is_apex:
            return {"apex": True}
        data = self.direction.to_dict()
        data["radius"] = self.radius
        return data


CatPoint = Union[EuclideanPoint, Locus, ConePoint]


def point_to_dict(x: CatPoint) -> dict:
    return x.to_dict()


@dataclass(frozen=True, eq=False)
class FiniteMeasure:
    """Finitely supported probability measure sum t_i Dirac_{p_i}."""
    support: tuple
    weights: np.ndarray

    def __post_init__(self):
        support = tuple(self.support)
        w = np.asarray(self.weights, dtype=float).ravel()
        if not support:
            raise ParameterError("measure has empty support")
        if len(support) != len(w):
            raise ParameterError(f"{len(support)} support points but {len(w)} weights")
        if np.any(w <= 0):
            raise ParameterError("measure weights must be positive")
        if abs(w.sum() - 1.0) > WEIGHT_TOL:
            raise ParameterError(f"measure weights sum to {w.sum()!r}, not 1")
        object.__setattr__(self, "support", support)
        object.__setattr__(self, "weights", w)

    @classmethod
    def uniform(cls, points: Sequence) -> "FiniteMeasure":
        n = len(points)
        return cls(tuple(points), np.full(n, 1.0 / n))

    @classmethod
    def normalized(cls, points: Sequence, masses: Sequence[float]) -> "FiniteMeasure":
        """Rescale positive masses to total 1, merging nothing."""
        m = np.asarray(masses, dtype=float)
        return cls(tuple(points), m / m.sum())

    def __len__(self) -> int:
        return len(self.support)

    def items(self):
        return zip(self.support, self.weights)

    def to_dict(self) -> dict:
        return {
            "support": [point_to_dict(x) for x in self.support],
            "weights": self.weights.tolist(),
        }


@dataclass(frozen=True)
class TangentVector:
    """
    Element of the tangent cone TC_p Y, stored as a point of a cone space
    (Euclidean space, or a GraphCone such as a pod) whose origin is 0_p.
    """
    base: Any
    space: "CatSpace"
    vector: Any

    @property
    def length(self) -> float:
        return self.space.norm(self.vector)

    @property
    def is_zero(self) -> bool:
        return self.length == 0.0

    def inner(self, other: "TangentVector") -> float:
        if other.space != self.space:
            raise SpaceMismatchError("tangent vectors live in different tangent cones")
        return self.space.inner(self.vector, other.vector)

    def distance(self, other: "TangentVector") -> float:
        if other.space != self.space:
            raise SpaceMismatchError("tangent vectors live in different tangent cones")
        return self.space.distance(self.vector, other.vector)

    def to_dict(self) -> dict:
        return {
            "base": point_to_dict(self.base),
            "vector": point_to_dict(self.vector),
            "length": self.length,
        }


@dataclass
class VarianceReport:
    """Both sides of the two variance inequalities at a test point w."""
    barycenter: CatPoint
    lhs1: float
    rhs1: float
    lhs2: float
    rhs2: float
    tol: float = 1e-8

    @property
    def slack1(self) -> float:
        return self.lhs1 - self.rhs1

    @property
    def slack2(self) -> float:
        return self.lhs2 - self.rhs2

    @property
    def passed(self) -> bool:
        return self.slack1 >= -self.tol and self.slack2 >= -self.tol

    def to_dict(self) -> dict:
        return {
            "barycenter": point_to_dict(self.barycenter),
            "lhs1": self.lhs1,
            "rhs1": self.rhs1,
            "slack1": self.slack1,
            "lhs2": self.lhs2,
            "rhs2": self.rhs2,
            "slack2": self.slack2,
            "passed": self.passed,
        }


@dataclass
class InnerProductReport:
    """Barycenter inner-product inequality in a cone and its equality case."""
    barycenter: CatPoint
    slack: float
    equality_defect: float
    tol: float = 1e-8

    @property
    def passed(self) -> bool:
        return self.slack >= -self.tol and abs(self.equality_defect) <= self.tol

    def to_dict(self) -> dict:
        return {
            "barycenter": point_to_dict(self.barycenter),
            "slack": self.slack,
            "equality_defect": self.equality_defect,
            "passed": self.passed,
        }
