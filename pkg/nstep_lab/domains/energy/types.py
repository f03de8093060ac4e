"""Type definitions for the energy domain."""
from dataclasses import dataclass, field
from typing import Any, Optional, Union

import numpy as np

from .words import Word, format_word
from ..spaces import CatSpace, EuclideanPoint, Locus, MetricTree
from ..spaces.types import point_to_dict
from ...lib.errors import ParameterError

# Isometry and inverse checks are made to this tolerance
ISOMETRY_TOL = 1e-10
_ISOMETRY_SAMPLES = 8


@dataclass(frozen=True, eq=False)
class FreeWalkDistribution:
    """mu^n(e, .) for the standard walk on F_k, as reduced word -> probability."""
    k: int
    n: int
    table: dict[Word, float]

    def __post_init__(self):
        total = sum(self.table.values())
        if abs(total - 1.0) > 1e-12:
            raise ParameterError(f"walk distribution sums to {total!r}, not 1")

    def __len__(self) -> int:
        return len(self.table)

    def __getitem__(self, word: Word) -> float:
        return self.table.get(word, 0.0)

    def items(self):
        return self.table.items()

    def length_distribution(self) -> dict[int, float]:
        out: dict[int, float] = {}
        for w, p in self.table.items():
            out[len(w)] = out.get(len(w), 0.0) + p
        return dict(sorted(out.items()))

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "n": self.n,
            "support_size": len(self.table),
            "length_distribution": self.length_distribution(),
            "table": {format_word(w): p for w, p in sorted(self.table.items(), key=lambda x: (len(x[0]), x[0]))},
        }


@dataclass(frozen=True, eq=False)
class EuclideanIsometry:
    """x -> A x + b with A orthogonal."""
    matrix: np.ndarray
    translation: np.ndarray

    def __post_init__(self):
        a = np.atleast_2d(np.asarray(self.matrix, dtype=float))
        b = np.asarray(self.translation, dtype=float).ravel()
        if a.shape[0] != a.shape[1] or a.shape[0] != b.size:
            raise ParameterError(f"matrix {a.shape} and translation of size {b.size} do not match")
        defect = float(np.max(np.abs(a.T @ a - np.eye(a.shape[0]))))
        if defect > ISOMETRY_TOL:
            raise ParameterError(f"linear part is not orthogonal (defect {defect:.3e})")
        object.__setattr__(self, "matrix", a)
        object.__setattr__(self, "translation", b)

    @property
    def linear(self) -> np.ndarray:
        return self.matrix

    def apply(self, x: EuclideanPoint) -> EuclideanPoint:
        return EuclideanPoint.of(self.matrix @ x.array + self.translation)

    def inverse(self) -> "EuclideanIsometry":
        return EuclideanIsometry(self.matrix.T, -self.matrix.T @ self.translation)

    def to_dict(self) -> dict:
        return {"matrix": self.matrix.tolist(), "translation": self.translation.tolist()}


@dataclass(frozen=True, eq=False)
class TreeAutomorphism:
    """Length-preserving graph automorphism of a metric tree, given on vertices."""
    tree: MetricTree
    vertex_perm: tuple[int, ...]

    def __post_init__(self):
        g = self.tree.skeleton
        perm = tuple(int(x) for x in self.vertex_perm)
        if sorted(perm) != list(range(g.vertex_count)):
            raise ParameterError(f"{perm} is not a permutation of the {g.vertex_count} vertices")
        object.__setattr__(self, "vertex_perm", perm)

        index = {(min(a, b), max(a, b)): e for e, (a, b) in enumerate(g.edges)}
        edge_map = []
        for e, (a, b) in enumerate(g.edges):
            pa, pb = perm[a], perm[b]
            target = index.get((min(pa, pb), max(pa, pb)))
            if target is None:
                raise ParameterError(f"edge {e} = ({a}, {b}) is not mapped onto an edge")
            if abs(g.lengths[target] - g.lengths[e]) > ISOMETRY_TOL:
                raise ParameterError(f"edge {e} is mapped onto edge {target} of a different length")
            edge_map.append((target, g.edges[target] != (pa, pb)))
        object.__setattr__(self, "edge_map", tuple(edge_map))

    def apply(self, x: Locus) -> Locus:
        if x.is_vertex:
            return Locus(vertex=self.vertex_perm[x.vertex])
        target, flipped = self.edge_map[x.edge]
        length = self.tree.skeleton.lengths[target]
        return Locus(edge=target, offset=length - x.offset if flipped else x.offset)

    def inverse(self) -> "TreeAutomorphism":
        inv = [0] * len(self.vertex_perm)
        for v, w in enumerate(self.vertex_perm):
            inv[w] = v
        return TreeAutomorphism(self.tree, tuple(inv))

    def to_dict(self) -> dict:
        return {"vertex_perm": list(self.vertex_perm)}


Isometry = Union[EuclideanIsometry, TreeAutomorphism]


@dataclass(frozen=True, eq=False)
class GroupAction:
    """
    Homomorphism F_k -> Isom(Y) given by one isometry per free generator.

    Isometry and inverse relations are spot-checked on sample points at
    construction.
    """
    space: CatSpace
    generators: tuple
    seed: int = 0

    def __post_init__(self):
        gens = tuple(self.generators)
        if not gens:
            raise ParameterError("an action needs at least one generator")
        object.__setattr__(self, "generators", gens)
        object.__setattr__(self, "_inverses", tuple(g.inverse() for g in gens))
        self._verify()

    def _verify(self) -> None:
        rng = np.random.default_rng(self.seed)
        for i, g in enumerate(self.generators):
            g_inv = self._inverses[i]
            for _ in range(_ISOMETRY_SAMPLES):
                x, y = self.space.sample_point(rng), self.space.sample_point(rng)
                gx, gy = g.apply(x), g.apply(y)
                self.space.check(gx)
                defect = abs(self.space.distance(gx, gy) - self.space.distance(x, y))
                if defect > ISOMETRY_TOL:
                    raise ParameterError(f"generator {i + 1} is not an isometry (defect {defect:.3e})")
                back = self.space.distance(g_inv.apply(gx), x)
                if back > ISOMETRY_TOL:
                    raise ParameterError(f"generator {i + 1} inverse is wrong (defect {back:.3e})")

    @property
    def rank(self) -> int:
        return len(self.generators)

    def isometry(self, letter: int) -> Isometry:
        if letter == 0 or abs(letter) > self.rank:
            raise ParameterError(f"letter {letter} is not a generator of F_{self.rank}")
        return self.generators[letter - 1] if letter > 0 else self._inverses[-letter - 1]

    def apply(self, word: Word, x):
        for letter in reversed(word):
            x = self.isometry(letter).apply(x)
        return x

    def to_dict(self) -> dict:
        return {
            "space": self.space.to_dict(),
            "generators": [g.to_dict() for g in self.generators],
        }


@dataclass(frozen=True, eq=False)
class EquivariantMap:
    """The rho-equivariant map f(gamma) = rho(gamma) f(e), fixed by its basepoint."""
    action: GroupAction
    basepoint: Any
    _images: dict = field(default_factory=dict, init=False, repr=False)

    def __post_init__(self):
        self.action.space.check(self.basepoint)

    @property
    def space(self) -> CatSpace:
        return self.action.space

    @property
    def rank(self) -> int:
        return self.action.rank

    def image(self, word: Word):
        """f(word), memoized on suffixes."""
        if not word:
            return self.basepoint
        cached = self._images.get(word)
        if cached is None:
            cached = self.action.isometry(word[0]).apply(self.image(word[1:]))
            self._images[word] = cached
        return cached

    def with_basepoint(self, y) -> "EquivariantMap":
        return EquivariantMap(self.action, y)

    def to_dict(self) -> dict:
        return {"action": self.action.to_dict(), "basepoint": point_to_dict(self.basepoint)}


@dataclass
class InequalityRow:
    n: int
    energy: float
    ratio: Optional[float]
    bound_n2_slack: float
    delta_norm: Optional[float] = None
    delta_bound_slack: Optional[float] = None
    cross_sum: Optional[float] = None
    slack_a: Optional[float] = None
    slack_c: Optional[float] = None

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "energy": self.energy,
            "ratio": self.ratio,
            "bound_n2_slack": self.bound_n2_slack,
            "delta_norm": self.delta_norm,
            "delta_bound_slack": self.delta_bound_slack,
            "cross_sum": self.cross_sum,
            "slack_a": self.slack_a,
            "slack_c": self.slack_c,
        }


@dataclass
class InequalityReport:
    """Energy inequalities for n = 1..n_max at one equivariant map."""
    energy_1: float
    delta_1_norm: Optional[float]
    rows: list[InequalityRow]
    mixed: list[dict] = field(default_factory=list)
    gradient_bound: dict = field(default_factory=dict)
    tangent_supported: bool = True
    tol: float = 1e-8
    notes: list[str] = field(default_factory=list)

    @property
    def checks(self) -> dict[str, bool]:
        tol = self.tol
        out = {"energy_le_n2": all(r.bound_n2_slack >= -tol for r in self.rows)}
        if self.tangent_supported:
            out["gradient_le_2energy"] = 2 * self.energy_1 - self.delta_1_norm ** 2 >= -tol
            out["delta_n_le_2n2energy"] = all(r.delta_bound_slack >= -tol for r in self.rows)
            out["n_step_inequality"] = all(r.slack_a >= -tol for r in self.rows)
            out["n_step_gradient_inequality"] = all(r.slack_c >= -tol for r in self.rows)
            out["mixed_two_step"] = all(m["slack"] >= -tol for m in self.mixed)
            if self.gradient_bound:
                out["gradient_lower_bound"] = all(
                    g["slack"] >= -tol for g in self.gradient_bound.get("per_n", [])
                )
        return out

    @property
    def passed(self) -> bool:
        return all(self.checks.values())

    def to_dict(self) -> dict:
        return {
            "energy_1": self.energy_1,
            "delta_1_norm": self.delta_1_norm,
            "rows": [r.to_dict() for r in self.rows],
            "mixed_two_step": self.mixed,
            "gradient_bound": self.gradient_bound,
            "tangent_supported": self.tangent_supported,
            "checks": self.checks,
            "passed": self.passed,
            "notes": self.notes,
        }


@dataclass
class AffineOperatorReport:
    """Averaging operator M on the linear part and the identities it satisfies."""
    operator: np.ndarray
    selfadjoint_defect: float
    harmonic: bool
    rows: list[dict]
    tol: float = 1e-8
    identity_tol: float = 1e-10

    @property
    def checks(self) -> dict[str, bool]:
        return {
            "selfadjoint": self.selfadjoint_defect <= self.identity_tol,
            "delta_n_identity": all(r["identity_defect"] <= self.identity_tol * max(1.0, r["scale"]) for r in self.rows),
            "energy_le_n_energy": all(r["energy_gap"] >= -self.tol for r in self.rows),
            "gap_ge_gradient": all(r["gap_minus_gradient"] >= -self.tol for r in self.rows if r["n"] >= 2),
            "equality_iff_harmonic": all(
                (abs(r["energy_gap"]) <= self.tol) == self.harmonic for r in self.rows if r["n"] >= 2
            ),
        }

    @property
    def passed(self) -> bool:
        return all(self.checks.values())

    def to_dict(self) -> dict:
        return {
            "operator": self.operator.tolist(),
            "selfadjoint_defect": self.selfadjoint_defect,
            "harmonic": self.harmonic,
            "rows": self.rows,
            "checks": self.checks,
            "passed": self.passed,
        }


@dataclass
class DescentStep:
    iteration: int
    energy: float
    gradient_norm: float

    @property
    def ratio(self) -> Optional[float]:
        """|-Delta f|^2 / E(f), the observed gradient constant."""
        if self.energy <= 0.0:
            return None
        return self.gradient_norm ** 2 / self.energy

    def to_dict(self) -> dict:
        return {
            "iteration": self.iteration,
            "energy": self.energy,
            "gradient_norm": self.gradient_norm,
            "ratio": self.ratio,
        }


@dataclass
class DescentResult:
    """Outcome of discrete fixed-point descent."""
    final: EquivariantMap
    trace: list[DescentStep]
    reason: str
    gradient_constant: Optional[float] = None

    @property
    def fixed_point_found(self) -> bool:
        return self.reason == "energy"

    def to_dict(self) -> dict:
        last = self.trace[-1] if self.trace else None
        return {
            "basepoint": point_to_dict(self.final.basepoint),
            "iterations": len(self.trace) - 1,
            "reason": self.reason,
            "fixed_point_found": self.fixed_point_found,
            "final_energy": last.energy if last else None,
            "final_gradient_norm": last.gradient_norm if last else None,
            "gradient_constant": self.gradient_constant,
        }


@dataclass
class ConverseReport:
    """E_{mu^n} <= C E_mu for an action on a tree with a global fixed point."""
    fixed_vertices: list[int]
    fixed_midpoints: list[int]
    constant: float
    basepoint_fixed: bool
    rows: list[dict]
    tol: float = 1e-8

    @property
    def passed(self) -> bool:
        return all(r["slack"] >= -self.tol for r in self.rows)

    def to_dict(self) -> dict:
        return {
            "fixed_vertices": self.fixed_vertices,
            "fixed_edge_midpoints": self.fixed_midpoints,
            "constant": self.constant,
            "basepoint_fixed": self.basepoint_fixed,
            "rows": self.rows,
            "passed": self.passed,
        }


@dataclass
class CayleyTreeEnergy:
    """n-step energy of the standard map of F_m into its Cayley tree."""
    m: int
    n: int
    energy: float

    @property
    def bound(self) -> float:
        return self.m * self.n ** 2 / (2 * self.m - 1)

    @property
    def passed(self) -> bool:
        return self.energy <= self.bound + 1e-12

    def to_dict(self) -> dict:
        return {
            "m": self.m,
            "n": self.n,
            "energy": self.energy,
            "bound": self.bound,
            "ratio_to_n": self.energy / self.n,
            "passed": self.passed,
        }


def isometry_from_dict(space: CatSpace, data: Any) -> Isometry:
    """Parse one generator: {"matrix", "translation"} or {"vertex_perm"}."""
    if isinstance(space, MetricTree):
        perm = data["vertex_perm"] if isinstance(data, dict) else data
        return TreeAutomorphism(space, tuple(perm))
    if not isinstance(data, dict) or "matrix" not in data:
        raise ParameterError(f"Euclidean generator needs 'matrix' and 'translation', got {data!r}")
    return EuclideanIsometry(np.array(data["matrix"]), np.array(data.get("translation", [0.0] * len(data["matrix"]))))
