"""Type definitions for the special-graphs domain."""
import math
from dataclasses import dataclass, field
from typing import Optional


@dataclass(frozen=True)
class LpsParameters:
    """Parameters of an LPS Cayley graph X^{p,q}."""
    p: int
    q: int
    legendre: int
    bipartite: bool

    @property
    def group(self) -> str:
        return "PGL" if self.legendre == -1 else "PSL"

    @property
    def expected_order(self) -> int:
        order = self.q * (self.q * self.q - 1)
        return order if self.legendre == -1 else order // 2

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "q": self.q,
            "legendre": self.legendre,
            "bipartite": self.bipartite,
            "group": self.group,
            "expected_order": self.expected_order,
        }


@dataclass(frozen=True)
class ProjectivePlaneIncidence:
    """
    Points and lines of PG(2, r) as normalized homogeneous triples.

    In the incidence graph, point i is vertex i and line j is vertex
    len(points) + j.
    """
    r: int
    points: tuple[tuple[int, int, int], ...]
    lines: tuple[tuple[int, int, int], ...]

    @property
    def size(self) -> int:
        return len(self.points)

    def incident(self, point: int, line: int) -> bool:
        x, l = self.points[point], self.lines[line]
        return (x[0] * l[0] + x[1] * l[1] + x[2] * l[2]) % self.r == 0

    def lines_through(self, point: int) -> list[int]:
        return [j for j in range(self.size) if self.incident(point, j)]

    def to_dict(self) -> dict:
        return {
            "r": self.r,
            "points": [list(x) for x in self.points],
            "lines": [list(x) for x in self.lines],
        }


@dataclass
class LpsCertificate:
    """Girth/diameter/spectral certificate of an LPS graph."""
    params: LpsParameters
    vertex_count: int
    degree: int
    girth: float
    diameter: int
    girth_bound: float
    diameter_bound: float
    bipartite_observed: bool
    spectral_gap: Optional[float] = None
    ramanujan_bound: float = 0.0
    notes: list[str] = field(default_factory=list)

    @property
    def girth_ok(self) -> bool:
        return self.girth >= self.girth_bound

    @property
    def diameter_ok(self) -> bool:
        return self.diameter <= self.diameter_bound

    @property
    def spectral_ok(self) -> Optional[bool]:
        if self.spectral_gap is None:
            return None
        return self.spectral_gap >= self.ramanujan_bound - 1e-9

    @property
    def passed(self) -> bool:
        checks = [
            self.girth_ok,
            self.diameter_ok,
            self.vertex_count == self.params.expected_order,
            self.bipartite_observed == self.params.bipartite,
        ]
        if self.spectral_ok is not None:
            checks.append(self.spectral_ok)
        return all(checks)

    def to_dict(self) -> dict:
        """Convert to dictionary for serialization."""
        log_n = math.log(self.vertex_count, self.params.p)
        return {
            "params": self.params.to_dict(),
            "vertex_count": self.vertex_count,
            "degree": self.degree,
            "girth": self.girth,
            "girth_bound": self.girth_bound,
            "girth_ok": self.girth_ok,
            "diameter": self.diameter,
            "diameter_bound": self.diameter_bound,
            "diameter_ok": self.diameter_ok,
            "bipartite_observed": self.bipartite_observed,
            "spectral_gap": self.spectral_gap,
            "ramanujan_bound": self.ramanujan_bound,
            "spectral_ok": self.spectral_ok,
            "girth_over_log_n": self.girth / log_n,
            "diameter_over_log_n": self.diameter / log_n,
            "passed": self.passed,
            "notes": list(self.notes),
        }
