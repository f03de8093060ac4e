"""
n-step energies of equivariant maps and graph vertex maps, the tangent-cone
gradient -Delta, and the inequality suites built on them.
"""
import logging
import math
from functools import lru_cache
from typing import Optional, Sequence

import numpy as np

from .types import (
    AffineOperatorReport,
    ConverseReport,
    DescentResult,
    DescentStep,
    EquivariantMap,
    EuclideanIsometry,
    FreeWalkDistribution,
    InequalityReport,
    InequalityRow,
    TreeAutomorphism,
)
from .walks import free_walk_distribution
from .words import letters
from ..graph import Graph, kernel_power, standard_walk
from ..spaces import CatSpace, Euclidean, FiniteMeasure, MetricTree, TangentVector, barycenter
from ...lib.errors import ConvergenceError, ParameterError, UnsupportedError

logger = logging.getLogger(__name__)

MAX_REPORT_STEPS = 8
DIVERGENCE_PATIENCE = 100


@lru_cache(maxsize=64)
def _walk(k: int, n: int) -> FreeWalkDistribution:
    return free_walk_distribution(k, n)


def equivariant_energy(f: EquivariantMap, n: int) -> float:
    """
    E_{mu^n}(f) = 1/2 sum_gamma mu^n(e, gamma) d(f(e), f(gamma))^2.

    Raises:
        SizeError: If mu^n is too large to enumerate
    """
    dist = _walk(f.rank, n)
    y0 = f.basepoint
    space = f.space
    return 0.5 * sum(p * space.distance(y0, f.image(w)) ** 2 for w, p in dist.items())


def minus_delta(f: EquivariantMap, n: int = 1) -> TangentVector:
    """
    -Delta_n f(e): barycenter, in the tangent cone at f(e), of the push-forward
    of mu^n(e, .) under gamma -> log_{f(e)} f(gamma).

    Raises:
        UnsupportedError: If the target has no log map at f(e)
    """
    dist = _walk(f.rank, n)
    y0 = f.basepoint
    masses: dict = {}
    cone = None
    for w, p in dist.items():
        v = f.space.log_map(y0, f.image(w))
        cone = v.space
        masses[v.vector] = masses.get(v.vector, 0.0) + p
    measure = FiniteMeasure.normalized(list(masses), list(masses.values()))
    return TangentVector(base=y0, space=cone, vector=barycenter(cone, measure, method="exact"))


def vertex_map_energy(G: Graph, space: CatSpace, phi: Sequence, n: int = 1) -> float:
    """E_{mu_G^n}(phi) = 1/2 sum_u nu_G(u) sum_v mu_G^n(u, v) d(phi(u), phi(v))^2."""
    if len(phi) != G.vertex_count:
        raise ParameterError(f"map needs {G.vertex_count} values, got {len(phi)}")
    kernel, nu = standard_walk(G)
    power = kernel_power(kernel, n)
    total = 0.0
    for u in range(G.vertex_count):
        for v, p in power.row(u).items():
            if u != v:
                total += nu[u] * p * space.distance(phi[u], phi[v]) ** 2
    return 0.5 * total


def vertex_energy(G: Graph, space: CatSpace, phi: Sequence, n: int = 1) -> tuple[float, float]:
    """
    n-step energy of a vertex map together with its Rayleigh quotient
    E_{mu_G}(phi) / sum_u nu_G(u) d(phi(u), b)^2, b the barycenter of phi_* nu_G.

    Raises:
        ParameterError: If phi is constant (Rayleigh quotient undefined)
    """
    energy = vertex_map_energy(G, space, phi, n)
    _, nu = standard_walk(G)
    b = barycenter(space, FiniteMeasure(tuple(phi), nu.weights))
    spread = sum(nu[u] * space.distance(phi[u], b) ** 2 for u in range(G.vertex_count))
    if spread <= 1e-300:
        raise ParameterError("Rayleigh quotient undefined for a constant map")
    one_step = energy if n == 1 else vertex_map_energy(G, space, phi, 1)
    return energy, one_step / spread


def inequality_report(f: EquivariantMap, n_max: int, tol: float = 1e-8) -> InequalityReport:
    """
    Evaluate the n-step inequalities for n = 1..n_max:

    - E_{mu^n} >= n E_mu - sum_{i<n} <-Delta_i f, -Delta_1 f>
    - |-Delta_mu f|^2 <= 2 E_mu, E_{mu^n} <= n^2 E_mu, |-Delta_{mu^n} f|^2 <= 2 n^2 E_mu
    - E_{mu^n} >= n E_mu - n(n-1)/2 sqrt(2 E_mu) |-Delta_mu f|
    - E_{mu^(a+b)} >= E_{mu^a} + E_{mu^b} - <-Delta_a f, -Delta_b f>
    - the gradient lower bound implied by an observed E_{mu^n} <= (n - eps) E_mu

    Terms involving -Delta are dropped (and noted) when the target has no
    log map at f(e).
    """
    if not 1 <= n_max <= MAX_REPORT_STEPS:
        raise ParameterError(f"n_max must lie in [1, {MAX_REPORT_STEPS}], got {n_max}")

    energies = {n: equivariant_energy(f, n) for n in range(1, n_max + 1)}
    notes = []
    try:
        deltas = {n: minus_delta(f, n) for n in range(1, n_max + 1)}
    except UnsupportedError as e:
        deltas = None
        notes.append(f"-Delta terms skipped: {e}")
        logger.warning("inequality report restricted to energy bounds: %s", e)

    e1 = energies[1]
    d1 = deltas[1] if deltas else None
    d1_norm = d1.length if d1 else None
    rows = []
    for n, en in energies.items():
        row = InequalityRow(
            n=n,
            energy=en,
            ratio=en / e1 if e1 > 0 else None,
            bound_n2_slack=n * n * e1 - en,
        )
        if deltas:
            dn = deltas[n].length
            cross = sum(deltas[i].inner(d1) for i in range(1, n))
            row.delta_norm = dn
            row.delta_bound_slack = 2 * n * n * e1 - dn ** 2
            row.cross_sum = cross
            row.slack_a = en - (n * e1 - cross)
            row.slack_c = en - (n * e1 - 0.5 * n * (n - 1) * math.sqrt(2 * e1) * d1_norm)
        rows.append(row)

    mixed = []
    gradient_bound = {}
    if deltas:
        for a in range(1, n_max):
            for b in range(a, n_max - a + 1):
                rhs = energies[a] + energies[b] - deltas[a].inner(deltas[b])
                mixed.append({"a": a, "b": b, "slack": energies[a + b] - rhs})
        if e1 > 0:
            gradient_bound = _gradient_bound(energies, d1_norm)

    return InequalityReport(
        energy_1=e1,
        delta_1_norm=d1_norm,
        rows=rows,
        mixed=mixed,
        gradient_bound=gradient_bound,
        tangent_supported=deltas is not None,
        tol=tol,
        notes=notes,
    )


def _gradient_bound(energies: dict[int, float], d1_norm: float) -> dict:
    """|-Delta f|^2 >= 2 eps^2 / (l^2 (l-1)^2) E_mu for every l with eps_l = l - E_l/E_mu > 0."""
    e1 = energies[1]
    per_n = []
    for n, en in energies.items():
        if n < 2:
            continue
        eps = n - en / e1
        if eps <= 0:
            continue
        constant = 2 * eps ** 2 / (n ** 2 * (n - 1) ** 2)
        per_n.append({"n": n, "eps": eps, "constant": constant, "slack": d1_norm ** 2 - constant * e1})
    best = max(per_n, key=lambda r: r["constant"], default=None)
    return {
        "observed_ratio": d1_norm ** 2 / e1,
        "per_n": per_n,
        "best_l": best["n"] if best else None,
        "best_constant": best["constant"] if best else None,
    }


def _linear_parts(f: EquivariantMap) -> dict[int, np.ndarray]:
    if not isinstance(f.space, Euclidean):
        raise ParameterError(f"affine operator needs a Euclidean target, got {f.space.kind}")
    parts = {}
    for s in letters(f.rank):
        g = f.action.isometry(s)
        if not isinstance(g, EuclideanIsometry):
            raise ParameterError("affine operator needs affine generators")
        parts[s] = g.linear
    return parts


def averaging_operator(f: EquivariantMap) -> np.ndarray:
    """M v = sum_s mu(e, s) rho_0(s) v on M_{rho_0} = R^d."""
    parts = _linear_parts(f)
    return sum(parts.values()) / len(parts)


def affine_operator_report(
    f: EquivariantMap,
    n_max: int,
    tol: float = 1e-8,
    identity_tol: float = 1e-10,
    seed: Optional[int] = 0,
) -> AffineOperatorReport:
    """
    Check, for an affine action on R^d:

    - M is selfadjoint;
    - -Delta_n f = (M^{n-1} + ... + M + I)(-Delta_1 f);
    - E_{mu^n} <= n E_mu, with n E_mu - E_{mu^n} >= |-Delta_1 f|^2 for n >= 2,
      so equality holds exactly for harmonic f.

    Raises:
        ParameterError: If the target is not Euclidean
    """
    if not 1 <= n_max <= MAX_REPORT_STEPS:
        raise ParameterError(f"n_max must lie in [1, {MAX_REPORT_STEPS}], got {n_max}")
    M = averaging_operator(f)
    d = M.shape[0]

    rng = np.random.default_rng(seed)
    defect = 0.0
    for _ in range(16):
        x, y = rng.normal(size=d), rng.normal(size=d)
        defect = max(defect, abs(x @ (M @ y) - (M @ x) @ y))

    delta_1 = minus_delta(f, 1).vector.array
    e1 = equivariant_energy(f, 1)
    harmonic = float(np.linalg.norm(delta_1)) <= identity_tol
    rows = []
    power = np.eye(d)
    partial = np.zeros(d)
    for n in range(1, n_max + 1):
        partial = partial + power @ delta_1
        power = M @ power
        direct = minus_delta(f, n).vector.array
        en = equivariant_energy(f, n)
        gap = n * e1 - en
        rows.append({
            "n": n,
            "energy": en,
            "identity_defect": float(np.max(np.abs(direct - partial))),
            "norm_defect": float(abs(direct @ direct - partial @ partial)),
            "scale": float(np.linalg.norm(partial)),
            "energy_gap": gap,
            "gap_minus_gradient": gap - float(delta_1 @ delta_1),
        })
    return AffineOperatorReport(
        operator=M,
        selfadjoint_defect=float(defect),
        harmonic=harmonic,
        rows=rows,
        tol=tol,
        identity_tol=identity_tol,
    )


def fixed_point_descent(
    f0: EquivariantMap,
    step: float = 0.5,
    tol: float = 1e-9,
    max_iter: int = 100_000,
    n: Optional[int] = None,
    eps: Optional[float] = None,
    patience: int = DIVERGENCE_PATIENCE,
) -> DescentResult:
    """
    Discrete descent toward a fixed point of rho(F_k).

    Each iterate moves f(e) a fraction `step` along the geodesic to the
    barycenter of its one-step neighbor images f(s), s in S.

    Args:
        f0: Starting equivariant map
        step: Geodesic step in (0, 1]
        tol: Stop when E_mu(f) or |-Delta_mu f| drops below this
        max_iter: Iteration limit
        n, eps: When both are given, report C = 2 eps^2 / (n^2 (n-1)^2)
        patience: Consecutive energy increases tolerated

    Returns:
        DescentResult; reason is "energy" (fixed point), "stationary"
        (harmonic with positive energy) or "max_iter"

    Raises:
        ConvergenceError: If the energy increases `patience` times in a row
    """
    if not 0.0 < step <= 1.0:
        raise ParameterError(f"step must lie in (0, 1], got {step}")
    space = f0.space
    gens = letters(f0.rank)
    f = f0
    trace: list[DescentStep] = []
    previous = math.inf
    increases = 0
    reason = "max_iter"
    for it in range(max_iter + 1):
        energy = equivariant_energy(f, 1)
        gradient = minus_delta(f, 1).length
        trace.append(DescentStep(it, energy, gradient))
        if energy < tol:
            reason = "energy"
            break
        if gradient < tol:
            reason = "stationary"
            break
        if it == max_iter:
            break

        increases = increases + 1 if energy > previous else 0
        previous = energy
        if increases >= patience:
            raise ConvergenceError(
                f"energy increased for {patience} consecutive steps",
                residual=energy,
                trace=[s.to_dict() for s in trace],
            )
        if it and it % 1000 == 0:
            logger.debug("descent iteration %d: energy %.3e, gradient %.3e", it, energy, gradient)

        neighbors = FiniteMeasure.uniform([f.image((s,)) for s in gens])
        target = barycenter(space, neighbors)
        f = f.with_basepoint(space.geodesic_point(f.basepoint, target, step))

    logger.debug("descent stopped after %d iterations: %s", len(trace) - 1, reason)
    constant = None
    if n is not None and eps is not None:
        if n < 2 or eps <= 0:
            raise ParameterError(f"gradient constant needs n >= 2 and eps > 0, got n={n}, eps={eps}")
        constant = 2 * eps ** 2 / (n ** 2 * (n - 1) ** 2)
    return DescentResult(final=f, trace=trace, reason=reason, gradient_constant=constant)


def tree_fixed_set(f: EquivariantMap) -> tuple[list[int], list[int]]:
    """
    Global fixed set of an action on a tree by automorphisms.

    Returns:
        (fixed vertices, edges whose midpoint is fixed)
    """
    if not isinstance(f.space, MetricTree):
        raise ParameterError(f"fixed set needs a tree target, got {f.space.kind}")
    gens = f.action.generators
    if not all(isinstance(g, TreeAutomorphism) for g in gens):
        raise ParameterError("fixed set needs tree automorphisms")
    g0 = f.space.skeleton
    vertices = [v for v in range(g0.vertex_count) if all(g.vertex_perm[v] == v for g in gens)]
    midpoints = [e for e in range(len(g0.edges)) if all(g.edge_map[e][0] == e for g in gens)]
    return vertices, midpoints


def converse_tree_check(f: EquivariantMap, n_max: int, tol: float = 1e-8) -> ConverseReport:
    """
    E_{mu^n}(f) <= C E_mu(f) with C = (min_s mu(e, s))^-1 = 2k, for an
    action on a tree with a global fixed point.

    Raises:
        ParameterError: If the action has no global fixed point
    """
    if not 1 <= n_max <= MAX_REPORT_STEPS:
        raise ParameterError(f"n_max must lie in [1, {MAX_REPORT_STEPS}], got {n_max}")
    vertices, midpoints = tree_fixed_set(f)
    if not vertices and not midpoints:
        raise ParameterError("action has no global fixed point")

    constant = 2.0 * f.rank
    e1 = equivariant_energy(f, 1)
    rows = []
    for n in range(1, n_max + 1):
        en = equivariant_energy(f, n)
        rows.append({
            "n": n,
            "energy": en,
            "bound": constant * e1,
            "slack": constant * e1 - en,
            "ratio": en / e1 if e1 > 0 else None,
        })
    fixed = all(
        f.space.distance(g.apply(f.basepoint), f.basepoint) <= 1e-12 for g in f.action.generators
    )
    return ConverseReport(
        fixed_vertices=vertices,
        fixed_midpoints=midpoints,
        constant=constant,
        basepoint_fixed=fixed,
        rows=rows,
        tol=tol,
    )
