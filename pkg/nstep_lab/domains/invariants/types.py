"""Type definitions for the invariants domain."""
import math
from dataclasses import dataclass, field
from typing import Any, Optional

import numpy as np
from sympy import isprime

from ..spaces import ConePoint, GraphCone, Locus
from ..spaces.types import point_to_dict
from ...lib.errors import ParameterError


@dataclass(frozen=True)
class GramSpec:
    """Inner products 1, 1/2, a, b at distances 0..3 in the generalized triangle G_r."""
    r: int
    a: float
    b: float

    @property
    def size(self) -> int:
        """N = 2(r^2 + r + 1)."""
        return 2 * (self.r * self.r + self.r + 1)

    def to_dict(self) -> dict:
        return {"r": self.r, "a": self.a, "b": self.b, "N": self.size}


@dataclass(frozen=True)
class BuildingSpec:
    """Euclidean building Y_{n,r} of dimension n over F_r."""
    n: int
    r: int = 2

    def __post_init__(self):
        if self.n < 1:
            raise ParameterError(f"building dimension must be >= 1, got {self.n}")
        if not isprime(self.r):
            raise ParameterError(f"r = {self.r} is not prime")

    def to_dict(self) -> dict:
        return {"n": self.n, "r": self.r}


@dataclass(frozen=True, eq=False)
class RadialEmbedding:
    """
    Radial map of a cone into R^d: iota(t u) = t iota(u) with unit iota(u).

    `rows[v]` is iota of direction vertex v. A direction inside an edge of
    length l at offset s maps to (sin(l - s) X_a + sin(s) X_b) / sin(l),
    which is the spherical interpolation whenever <X_a, X_b> = cos l.
    """
    cone: GraphCone
    rows: np.ndarray
    name: str = ""

    def __post_init__(self):
        rows = np.atleast_2d(np.asarray(self.rows, dtype=float))
        if rows.shape[0] != self.cone.directions.vertex_count:
            raise ParameterError(
                f"{rows.shape[0]} coordinate rows for {self.cone.directions.vertex_count} directions"
            )
        object.__setattr__(self, "rows", rows)

    @property
    def dimension(self) -> int:
        return self.rows.shape[1]

    def direction(self, u: Locus) -> np.ndarray:
        if u.is_vertex:
            return self.rows[u.vertex]
        g = self.cone.directions
        a, b = g.edges[u.edge]
        length = g.lengths[u.edge]
        return (math.sin(length - u.offset) * self.rows[a] + math.sin(u.offset) * self.rows[b]) / math.sin(length)

    def embed(self, x: ConePoint) -> np.ndarray:
        if x.is_apex:
            return np.zeros(self.dimension)
        return x.radius * self.direction(x.direction)

    def to_dict(self) -> dict:
        return {"name": self.name, "dimension": self.dimension, "rows": self.rows.tolist()}


@dataclass
class GramSpectrum:
    """Numeric Gram spectrum against the closed-form eigenvalues."""
    spec: GramSpec
    numeric: np.ndarray
    formula: list[tuple[float, int]]
    max_defect: float

    @property
    def min_eigenvalue(self) -> float:
        return min(v for v, _ in self.formula)

    def to_dict(self) -> dict:
        return {
            "spec": self.spec.to_dict(),
            "formula": [{"value": v, "multiplicity": m} for v, m in self.formula],
            "trace": float(np.sum(self.numeric)) if self.numeric.size else None,
            "min_eigenvalue": self.min_eigenvalue,
            "max_defect": self.max_defect,
        }


@dataclass
class OptimalAB:
    r: int
    a: float
    b: float
    distortion: float
    dimension: int
    psd_checked_numerically: bool
    min_eigenvalue: float

    @property
    def spec(self) -> GramSpec:
        return GramSpec(self.r, self.a, self.b)

    def to_dict(self) -> dict:
        return {
            "r": self.r,
            "a": self.a,
            "b": self.b,
            "distortion": self.distortion,
            "dimension": self.dimension,
            "psd_checked_numerically": self.psd_checked_numerically,
            "min_eigenvalue": self.min_eigenvalue,
        }


@dataclass
class EmbeddingReport:
    """Lipschitz, unit-norm and edge-isometry checks of a radial embedding."""
    name: str
    unit_norm_defect: float
    lipschitz_slack: float
    edge_isometry_defect: Optional[float]
    realized_distortion: float
    expected_distortion: Optional[float] = None
    tol: float = 1e-10

    @property
    def checks(self) -> dict[str, bool]:
        out = {
            "unit_norm": self.unit_norm_defect <= self.tol,
            "one_lipschitz": self.lipschitz_slack >= -self.tol,
        }
        if self.edge_isometry_defect is not None:
            out["edge_isometric"] = self.edge_isometry_defect <= self.tol
        if self.expected_distortion is not None:
            out["distortion_matches"] = abs(self.realized_distortion - self.expected_distortion) <= 1e-8
        return out

    @property
    def passed(self) -> bool:
        return all(self.checks.values())

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "unit_norm_defect": self.unit_norm_defect,
            "lipschitz_slack": self.lipschitz_slack,
            "edge_isometry_defect": self.edge_isometry_defect,
            "realized_distortion": self.realized_distortion,
            "expected_distortion": self.expected_distortion,
            "checks": self.checks,
            "passed": self.passed,
        }


@dataclass
class Certificate:
    """Known distortion and delta bounds for a target space."""
    target: str
    distortion: Optional[float]
    delta: Optional[float]
    source: str
    extra: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        data = {
            "target": self.target,
            "distortion": self.distortion,
            "delta": self.delta,
            "source": self.source,
        }
        data.update(self.extra)
        return data


@dataclass
class BuildingBounds:
    spec: BuildingSpec
    d_min: float
    distortion_bound: float
    delta_bound: float
    simplex: Optional[EmbeddingReport] = None

    def to_dict(self) -> dict:
        return {
            "n": self.spec.n,
            "r": self.spec.r,
            "d_min": self.d_min,
            "distortion_bound": self.distortion_bound,
            "delta_bound": self.delta_bound,
            "simplex_certificate": self.simplex.to_dict() if self.simplex else None,
        }


@dataclass
class WangEstimate:
    """Upper bound on lambda_1(G, T) with its witness and consistency checks."""
    value: float
    witness: list[Any]
    lambda_real: float
    restarts: int
    sweeps: int
    budget_exhausted: bool
    certificate: Optional[Certificate] = None
    tol: float = 1e-6

    @property
    def checks(self) -> dict[str, bool]:
        out = {}
        cert = self.certificate
        if cert is not None and cert.distortion is not None:
            out["distortion_lower_bound"] = self.value >= self.lambda_real / cert.distortion ** 2 - self.tol
        if cert is not None and cert.delta is not None:
            out["delta_lower_bound"] = self.value >= (1 - cert.delta) * self.lambda_real - self.tol
        return out

    @property
    def passed(self) -> bool:
        return all(self.checks.values())

    def to_dict(self) -> dict:
        return {
            "value": self.value,
            "lambda_real": self.lambda_real,
            "witness": [point_to_dict(x) for x in self.witness],
            "restarts": self.restarts,
            "sweeps": self.sweeps,
            "budget_exhausted": self.budget_exhausted,
            "certificate": self.certificate.to_dict() if self.certificate else None,
            "checks": self.checks,
            "passed": self.passed,
        }
