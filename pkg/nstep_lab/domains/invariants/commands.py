"""
Invariants domain commands.

Exports COMMANDS dict for CLI discovery.
"""
import math
from typing import TYPE_CHECKING

import numpy as np

from .buildings import bound_table, building_bounds, building_distances, tangent_cone_bounds
from .embeddings import (
    certificate,
    delta_from_distortion,
    distortion_variance_check,
    embedding_report,
    pod_distortion,
    pod_embedding,
    pod_tip_mean,
)
from .gram import (
    delta_mu0,
    formula_eigenvalues,
    gram_eigenvalues,
    iota_embedding,
    map_distortion,
    optimal_ab,
)
from .types import BuildingSpec, GramSpec
from .wang import wang_estimate
from ..spaces import ConePoint, FiniteMeasure, GraphCone, Locus, space_from_dict
from ...lib.errors import ParameterError
from ...lib.graph_io import GRAPH_ARG, resolve_graph, resolve_json_input
from ...lib.report import emit

if TYPE_CHECKING:
    from ...config import Config

SEED_ARG = {"name": "--seed", "type": int, "help": "Random seed (default: config seed)"}
# Exhaustive midpoint checks stay affordable up to this r
MIDPOINT_R_LIMIT = 5


def _psd_samples(r: int, count: int, rng: np.random.Generator) -> list[GramSpec]:
    """Random (a, b) with G_{a,b} PSD, by rejection from [-1, 1]^2."""
    specs = []
    attempts = 0
    while len(specs) < count:
        attempts += 1
        if attempts > 1000 * max(count, 1):
            raise ParameterError(f"could not sample {count} PSD pairs for r={r}")
        a, b = rng.uniform(-1.0, 1.0, size=2)
        spec = GramSpec(r, float(a), float(b))
        if min(v for v, _ in formula_eigenvalues(spec)) >= 0.0:
            specs.append(spec)
    return specs


def _vertex_measure(cone: GraphCone, size: int, rng: np.random.Generator) -> FiniteMeasure:
    """Random measure on vertex directions at random radii."""
    vertices = rng.integers(cone.directions.vertex_count, size=size)
    radii = rng.uniform(0.0, 2.0, size=size)
    points = [ConePoint(Locus(vertex=int(v)), float(t)) if t > 0.05 else ConePoint() for v, t in zip(vertices, radii)]
    return FiniteMeasure.normalized(points, rng.uniform(0.05, 1.0, size=size))


def handle_gram(config: "Config", args) -> None:
    """
    Gram spectra of G_{a,b} against the closed forms, at (a*, b*) and at
    random PSD pairs.

    Command: run:gram --r R [--samples N] [--seed S]
    """
    rng = np.random.default_rng(config.seed_for(args))
    opt = optimal_ab(args.r)
    specs = [opt.spec] + _psd_samples(args.r, args.samples, rng)
    tol = config.tolerance("slack")
    spectra = [gram_eigenvalues(spec, tol=tol) for spec in specs]
    table = [
        {
            "a": s.spec.a,
            "b": s.spec.b,
            "min_eigenvalue": s.min_eigenvalue,
            "max_defect": s.max_defect,
            "scale": max(1.0, max(abs(v) for v, _ in s.formula)),
        }
        for s in spectra
    ]
    results = {"r": args.r, "optimal": spectra[0], "instances": len(spectra), "rows": table}
    checks = {
        "closed_form_spectrum": all(row["max_defect"] <= tol * row["scale"] for row in table),
        "psd": all(row["min_eigenvalue"] >= -config.tolerance("psd") for row in table),
    }
    emit(config, args, "gram", results, checks, table=table)


def handle_optimal_ab(config: "Config", args) -> None:
    """
    (a*, b*), D*(r), dim W and the exhaustive distortion check of iota_{a*,b*}.

    Command: run:optimal-ab --r R
    """
    opt = optimal_ab(args.r)
    midpoints = args.r <= MIDPOINT_R_LIMIT
    report = embedding_report(
        iota_embedding(opt.spec),
        midpoints=midpoints,
        expected_distortion=opt.distortion,
        tol=config.tolerance("identity"),
    )
    formula = map_distortion(opt.spec)
    results = {
        "optimal": opt,
        "formula_distortion": formula,
        "delta_bound": delta_from_distortion(opt.distortion),
        "embedding": report,
        "midpoints_checked": midpoints,
    }
    checks = dict(report.checks)
    checks["formula_distortion"] = abs(formula - opt.distortion) <= 1e-8
    checks["below_two"] = opt.distortion < 2
    emit(config, args, "optimal-ab", results, checks)


def handle_delta_mu0(config: "Config", args) -> None:
    """
    delta(mu_0) for the uniform measure on the vertex directions of C(G_r).

    Command: run:delta-mu0 --r R
    """
    tol = config.tolerance("identity")
    result = delta_mu0(args.r, tol=tol)
    checks = {"closed_form": abs(result["value"] - result["closed_form"]) <= tol}
    if args.r == 2:
        checks["r2_identity"] = abs(result["value"] - (5 - 3 * math.sqrt(2)) / 14) <= tol
    emit(config, args, "delta-mu0", result, checks)


def handle_pod(config: "Config", args) -> None:
    """
    Regular simplex embeddings of the pods P_{r+1}, r = 1..r_max (table).

    Command: run:pod [--r-max R]
    """
    tol = config.tolerance("identity")
    table = []
    for r in range(1, args.r_max + 1):
        report = embedding_report(pod_embedding(r), expected_distortion=pod_distortion(r), tol=tol)
        table.append({
            "r": r,
            "legs": r + 1,
            "distortion": pod_distortion(r),
            "realized_distortion": report.realized_distortion,
            "lipschitz_slack": report.lipschitz_slack,
            "tip_mean": pod_tip_mean(r),
            "passed": report.passed,
        })
    results = {"r_max": args.r_max, "rows": table}
    checks = {
        "embeddings": all(row["passed"] for row in table),
        "tip_mean_zero": all(row["tip_mean"] <= 1e-12 for row in table),
    }
    emit(config, args, "pod", results, checks, table=table)


def handle_building_bounds(config: "Config", args) -> None:
    """
    Distortion and delta bounds for building tangent cones (table).

    Command: run:building-bounds [--n-max N] [--r R]
    """
    table = bound_table(args.n_max, r=args.r)
    tol = config.tolerance("identity")

    table_defect = 0.0
    for n in range(2, args.n_max + 1):
        distances = building_distances(BuildingSpec(n, args.r))
        table_defect = max(table_defect, abs(distances["table_min"] - distances["d_min"]))

    results = {"n_max": args.n_max, "r": args.r, "rows": table, "table_min_defect": table_defect}
    checks = {
        "table_minimum_is_d_min": table_defect <= tol,
        "distortion_nondecreasing": all(
            b["distortion_bound"] >= a["distortion_bound"] - tol for a, b in zip(table, table[1:])
        ),
    }
    if args.n_max >= 2:
        bounds = building_bounds(BuildingSpec(2, args.r), tol=tol)
        results["rank_two"] = bounds
        checks["rank_two_simplex_certificate"] = bounds.simplex.passed
        checks["rank_two_delta"] = abs(bounds.delta_bound - 0.75) <= tol
    products = tangent_cone_bounds(args.n_max)
    results["tangent_cones"] = products
    checks["products_within_top_rank"] = max(p["distortion_bound"] for p in products) <= table[-1]["distortion_bound"] + tol
    emit(config, args, "building-bounds", results, checks, table=table)


def handle_wang(config: "Config", args) -> None:
    """
    Upper bound on the Wang invariant lambda_1(G, T).

    Command: run:wang --graph <ref> --target <json> [--restarts N] [--seed S]
    """
    G = resolve_graph(args.graph)
    space = space_from_dict(resolve_json_input(args.target))
    restarts = args.restarts if args.restarts is not None else config.get_default("invariants", "restarts", 4)
    max_sweeps = config.get_default("invariants", "max_sweeps", 50)
    estimate = wang_estimate(G, space, restarts=restarts, seed=config.seed_for(args), max_sweeps=max_sweeps)

    checks = dict(estimate.checks)
    checks["not_above_real_gap"] = estimate.value <= estimate.lambda_real + 1e-9
    emit(config, args, "wang", {"graph": G.name, "target": space.to_dict(), "estimate": estimate}, checks)


def handle_distortion_variance(config: "Config", args) -> None:
    """
    Variance through a radial embedding against D^-2 times the cone variance.

    Command: run:distortion-variance --target pod|gt --r R [--samples N]
    """
    if args.target == "pod":
        emb = pod_embedding(args.r)
    else:
        emb = iota_embedding(optimal_ab(args.r).spec)
    cone: GraphCone = emb.cone
    cert = certificate(cone)
    rng = np.random.default_rng(config.seed_for(args))
    tol = config.tolerance("slack")

    worst = math.inf
    for _ in range(args.samples):
        m = _vertex_measure(cone, args.support_size, rng)
        worst = min(worst, distortion_variance_check(emb, m, cert.distortion))

    results = {
        "target": args.target,
        "r": args.r,
        "certificate": cert,
        "samples": args.samples,
        "min_slack": worst,
    }
    emit(config, args, "distortion-variance", results, {"variance_bound": worst >= -tol})


# Command registry for CLI discovery
COMMANDS = {
    "run:gram": {
        "handler": handle_gram,
        "help": "Gram spectra of the generalized-triangle inner-product matrices",
        "topic": "closed-form spectrum of the distance-regular Gram matrix G_(a,b)",
        "args": [
            {"name": "--r", "type": int, "default": 2, "help": "Prime (default: 2)"},
            {"name": "--samples", "type": int, "default": 20, "help": "Random PSD pairs (default: 20)"},
            SEED_ARG,
        ],
    },
    "run:optimal-ab": {
        "handler": handle_optimal_ab,
        "help": "Optimal (a, b), its distortion and the embedding check",
        "topic": "radial distortion of the cone over a generalized triangle is below 2",
        "args": [{"name": "--r", "type": int, "default": 2, "help": "Prime (default: 2)"}],
    },
    "run:delta-mu0": {
        "handler": handle_delta_mu0,
        "help": "delta of the uniform vertex measure on C(G_r)",
        "topic": "delta(mu_0) for the cone over a generalized triangle",
        "args": [{"name": "--r", "type": int, "default": 2, "help": "Prime (default: 2)"}],
    },
    "run:pod": {
        "handler": handle_pod,
        "help": "Simplex embeddings of pods (table)",
        "topic": "radial distortion of pods and delta(P_m) = 0",
        "args": [{"name": "--r-max", "type": int, "default": 10, "help": "Largest r (default: 10)"}],
    },
    "run:building-bounds": {
        "handler": handle_building_bounds,
        "help": "Distortion and delta bounds for building tangent cones (table)",
        "topic": "tangent cones of Euclidean buildings: distortion from chamber distances",
        "args": [
            {"name": "--n-max", "type": int, "default": 6, "help": "Largest building dimension (default: 6)"},
            {"name": "--r", "type": int, "default": 2, "help": "Residue field size (default: 2)"},
        ],
    },
    "run:wang": {
        "handler": handle_wang,
        "help": "Upper bound on the Wang invariant of a graph in a CAT(0) target",
        "topic": "Wang's invariant versus the real spectral gap",
        "args": [
            GRAPH_ARG,
            {"name": "--target", "required": True, "help": "Space descriptor (inline JSON or file)"},
            {"name": "--restarts", "type": int, "help": "Random restarts (default: config invariants.restarts)"},
            SEED_ARG,
        ],
    },
    "run:distortion-variance": {
        "handler": handle_distortion_variance,
        "help": "Variance comparison through a radial embedding",
        "topic": "radial distortion bounds the variance of a measure on a cone",
        "args": [
            {"name": "--target", "choices": ["pod", "gt"], "default": "pod", "help": "Cone (default: pod)"},
            {"name": "--r", "type": int, "default": 2, "help": "Pod legs minus one, or prime for gt (default: 2)"},
            {"name": "--samples", "type": int, "default": 200, "help": "Random measures (default: 200)"},
            {"name": "--support-size", "type": int, "default": 5, "help": "Support size (default: 5)"},
            SEED_ARG,
        ],
    },
}
