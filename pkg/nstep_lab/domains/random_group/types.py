"""Type definitions for the random group domain."""
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from ..energy.words import Word, format_word
from ..graph import Graph
from ...lib.errors import ParameterError

MASS_TOL = 1e-12


@dataclass(frozen=True)
class SLabelling:
    """
    Labels of the edges of G by generators of F_k.

    `labels[e]` is the letter read along edge e in its stored orientation
    (u -> v for edges[e] = (u, v)); the reverse orientation reads the inverse.
    """
    graph: Graph
    k: int
    labels: tuple[int, ...]

    def __post_init__(self):
        labels = tuple(int(x) for x in self.labels)
        if len(labels) != self.graph.edge_count:
            raise ParameterError(f"{len(labels)} labels for {self.graph.edge_count} edges")
        bad = [x for x in labels if x == 0 or abs(x) > self.k]
        if bad:
            raise ParameterError(f"labels {bad[:5]} are not generators of F_{self.k}")
        object.__setattr__(self, "labels", labels)

    def letter(self, u: int, edge: int) -> int:
        """Letter read when leaving u along the given edge."""
        a, _ = self.graph.edges[edge]
        return self.labels[edge] if u == a else -self.labels[edge]

    def inverse_consistent(self) -> bool:
        """alpha((u, v)) = alpha((v, u))^-1 on every directed edge."""
        return all(
            self.letter(u, e) == -self.letter(v, e)
            for e, (u, v) in enumerate(self.graph.edges)
        )

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "edges": [list(e) for e in self.graph.edges],
            "labels": [format_word((x,)) for x in self.labels],
        }


@dataclass
class PushforwardKernel:
    """Row mu^n_{Gamma,alpha}(e, .) of the push-forward walk, indexed by reduced words."""
    k: int
    n: int
    table: dict[Word, float]

    def __post_init__(self):
        total = sum(self.table.values())
        if abs(total - 1.0) > MASS_TOL:
            raise ParameterError(f"push-forward mass is {total!r}, not 1")

    def __getitem__(self, word: Word) -> float:
        return self.table.get(word, 0.0)

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "n": self.n,
            "support_size": len(self.table),
            "table": {format_word(w): p for w, p in sorted(self.table.items(), key=lambda kv: (len(kv[0]), kv[0]))},
        }


@dataclass
class WeightedSumDecomposition:
    """
    P_G^n(l): probability that n steps of the standard walk end at distance l,
    per start vertex and averaged over nu_G, with the tail Q = sum_{l <= sqrt n} P(l).
    """
    n: int
    weights: np.ndarray
    per_start: np.ndarray
    tail: float

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "weights": self.weights.tolist(),
            "tail": self.tail,
            "per_start_row_sums": self.per_start.sum(axis=1).tolist(),
        }


@dataclass
class WeightedSumReport:
    graph: str
    k: int
    n: int
    mode: str
    trials: int
    max_deviation: float
    budget: float
    identity_mass: float
    expected_identity_mass: float
    decomposition: WeightedSumDecomposition

    @property
    def passed(self) -> bool:
        return self.max_deviation <= self.budget

    def to_dict(self) -> dict:
        return {
            "graph": self.graph,
            "k": self.k,
            "n": self.n,
            "mode": self.mode,
            "trials": self.trials,
            "max_deviation": self.max_deviation,
            "budget": self.budget,
            "identity_mass": self.identity_mass,
            "expected_identity_mass": self.expected_identity_mass,
            "decomposition": self.decomposition.to_dict(),
            "passed": self.passed,
        }


@dataclass
class BernoulliBound:
    """b^n(sqrt n) = P(|S_n| <= sqrt n) for the simple +-1 walk."""
    n: int
    value: float
    c_observed: float
    argmax: int
    reference: float

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "value": self.value,
            "c_observed": self.c_observed,
            "argmax": self.argmax,
            "gaussian_reference": self.reference,
        }


@dataclass
class TransplantReport:
    """E_{mu^n}(phi) against (2 / lambda_lower) E_mu(phi)."""
    n: int
    lhs: float
    rhs: float
    lambda_lower: float
    route: str
    tol: float = 1e-8

    @property
    def passed(self) -> bool:
        return self.lhs <= self.rhs + self.tol

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "lambda_lower": self.lambda_lower,
            "route": self.route,
            "passed": self.passed,
        }


@dataclass
class PipelineConstants:
    """Step count, slack, girth threshold and gradient constant of the fixed-point argument."""
    lambda0: float
    c_abs: float
    c_abs_source: str
    n: int
    eps: float
    g0: int
    c_grad: Optional[float]
    girth: Optional[float] = None

    @property
    def girth_ok(self) -> Optional[bool]:
        return None if self.girth is None else self.girth >= self.g0

    def to_dict(self) -> dict:
        return {
            "lambda0": self.lambda0,
            "c_abs": self.c_abs,
            "c_abs_source": self.c_abs_source,
            "n": self.n,
            "eps": self.eps,
            "g0": self.g0,
            "c_grad": self.c_grad,
            "girth": self.girth,
            "girth_ok": self.girth_ok,
        }


@dataclass
class GraphHypotheses:
    """Graph-side hypotheses of the fixed-point theorem, as measured on one graph."""
    graph: str
    min_degree: int
    max_degree: int
    girth: float
    diameter: int
    lambda_real: float
    path_count: Optional[int]
    path_length_bound: Optional[int]
    checks: dict[str, bool] = field(default_factory=dict)

    @property
    def girth_diameter_ratio(self) -> Optional[float]:
        if self.girth == float("inf") or self.diameter == 0:
            return None
        return self.girth / self.diameter

    @property
    def observed_beta(self) -> Optional[float]:
        """count^(1/L) for L = path_length_bound, the growth rate the path condition bounds."""
        if not self.path_count or not self.path_length_bound:
            return None
        return self.path_count ** (1.0 / self.path_length_bound)

    @property
    def passed(self) -> bool:
        return all(self.checks.values())

    def to_dict(self) -> dict:
        return {
            "graph": self.graph,
            "min_degree": self.min_degree,
            "max_degree": self.max_degree,
            "girth": None if self.girth == float("inf") else self.girth,
            "diameter": self.diameter,
            "girth_diameter_ratio": self.girth_diameter_ratio,
            "lambda_real": self.lambda_real,
            "path_count": self.path_count,
            "path_length_bound": self.path_length_bound,
            "observed_beta": self.observed_beta,
            "checks": self.checks,
            "passed": self.passed,
        }


@dataclass
class ConcentrationReport:
    """Empirical frequencies of the two labelling events; no constants are asserted."""
    k: int
    n: int
    trials: int
    lower_event_frequency: Optional[float]
    upper_event_frequency: Optional[float]

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "n": self.n,
            "trials": self.trials,
            "lower_event_frequency": self.lower_event_frequency,
            "upper_event_frequency": self.upper_event_frequency,
        }
