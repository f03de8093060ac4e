"""
Graph domain commands.

Exports COMMANDS dict for CLI discovery.
"""
import math
from typing import TYPE_CHECKING

import networkx as nx
import numpy as np

from .spectra import laplacian_spectrum, rayleigh_quotient_real, spectral_gap_real
from .structure import count_embedded_paths, girth_and_diameter, subdivide
from .walks import convolve, kernel_power, standard_walk
from ...lib.graph_io import GRAPH_ARG, resolve_graph
from ...lib.report import emit

if TYPE_CHECKING:
    from ...config import Config

SEED_ARG = {"name": "--seed", "type": int, "help": "Random seed (default: config seed)"}


def handle_graph_info(config: "Config", args) -> None:
    """
    Basic invariants of a graph.

    Command: run:graph-info --graph <ref>
    """
    G = resolve_graph(args.graph)
    girth, diameter = girth_and_diameter(G)
    results = {
        "graph": G.name,
        "vertices": G.vertex_count,
        "edges": G.edge_count,
        "min_degree": int(G.degrees.min()),
        "max_degree": int(G.degrees.max()),
        "girth": girth,
        "diameter": diameter,
        "bipartite": nx.is_bipartite(G.to_networkx()),
    }
    if G.vertex_count >= 2 and G.vertex_count <= config.tolerance("max_eigensolve_vertices"):
        results["spectral_gap"] = spectral_gap_real(G, max_size=int(config.tolerance("max_eigensolve_vertices")))
    emit(config, args, "graph-info", results)


def handle_spectral_gap(config: "Config", args) -> None:
    """
    lambda_1(G, R), checked against random functions and its own eigenfunction.

    Command: run:spectral-gap --graph <ref> [--samples N] [--seed S]
    """
    G = resolve_graph(args.graph)
    seed = config.seed_for(args)
    max_size = int(config.tolerance("max_eigensolve_vertices"))
    gap = spectral_gap_real(G, max_size=max_size)
    _, vectors = laplacian_spectrum(G, max_size=max_size)
    eigen_rq = rayleigh_quotient_real(G, vectors[:, 1])

    rng = np.random.default_rng(seed)
    quotients = [rayleigh_quotient_real(G, rng.normal(size=G.vertex_count)) for _ in range(args.samples)]
    least = min(quotients) if quotients else math.inf

    results = {
        "graph": G.name,
        "vertices": G.vertex_count,
        "spectral_gap": gap,
        "eigenfunction_quotient": eigen_rq,
        "least_random_quotient": least,
        "samples": args.samples,
    }
    checks = {
        "random_quotients_above_gap": least >= gap - 1e-9,
        "eigenfunction_attains_gap": abs(eigen_rq - gap) <= 1e-9,
    }
    emit(config, args, "spectral-gap", results, checks)


def handle_walk_powers(config: "Config", args) -> None:
    """
    Convolution powers of the standard walk: stochasticity, detailed balance
    and the addition law mu^a * mu^b = mu^(a+b).

    Command: run:walk-powers --graph <ref> [--n-max N]
    """
    G = resolve_graph(args.graph)
    tol = config.tolerance("identity")
    kernel, nu = standard_walk(G)
    powers = {n: kernel_power(kernel, n) for n in range(1, args.n_max + 1)}

    table = []
    for n, k in powers.items():
        dense = k.to_dense()
        flow = nu.weights[:, None] * dense
        table.append({
            "n": n,
            "row_sum_defect": float(np.max(np.abs(dense.sum(axis=1) - 1.0))),
            "balance_defect": float(np.max(np.abs(flow - flow.T))),
            "return_probability": float(nu.weights @ np.diag(dense)),
            "nonzeros": int(k.matrix.nnz),
        })

    addition_defect = 0.0
    for a in range(1, args.n_max):
        for b in range(1, args.n_max - a + 1):
            combined = convolve(powers[a], powers[b]).to_dense()
            addition_defect = max(addition_defect, float(np.max(np.abs(combined - powers[a + b].to_dense()))))

    results = {"graph": G.name, "n_max": args.n_max, "powers": table, "addition_defect": addition_defect}
    checks = {
        "row_stochastic": all(row["row_sum_defect"] <= tol for row in table),
        "detailed_balance": all(row["balance_defect"] <= tol for row in table),
        "addition_law": addition_defect <= tol,
    }
    emit(config, args, "walk-powers", results, checks, table=table)


def handle_subdivide(config: "Config", args) -> None:
    """
    j-subdivision: girth scales by j, vertices grow by (j-1)|E|.

    Command: run:subdivide --graph <ref> --j J
    """
    G = resolve_graph(args.graph)
    H = subdivide(G, args.j)
    girth, diameter = girth_and_diameter(G)
    sub_girth, sub_diameter = girth_and_diameter(H)

    results = {
        "graph": G.name,
        "j": args.j,
        "vertices": G.vertex_count,
        "subdivided_vertices": H.vertex_count,
        "girth": girth,
        "subdivided_girth": sub_girth,
        "diameter": diameter,
        "subdivided_diameter": sub_diameter,
    }
    checks = {
        "vertex_count": H.vertex_count == G.vertex_count + (args.j - 1) * G.edge_count,
        "girth_scales": sub_girth == args.j * girth,
        "diameter_window": args.j * diameter <= sub_diameter <= args.j * (diameter + 1),
    }
    emit(config, args, "subdivide", results, checks)


def handle_paths(config: "Config", args) -> None:
    """
    Embedded paths of length < L, against the non-backtracking walk bound.

    Command: run:paths --graph <ref> --L L
    """
    G = resolve_graph(args.graph)
    count = count_embedded_paths(G, args.L)
    girth, _ = girth_and_diameter(G)
    d = int(G.degrees.max())
    bound = sum(G.vertex_count * d * (d - 1) ** (length - 1) for length in range(1, args.L)) // 2
    regular = int(G.degrees.min()) == d

    results = {
        "graph": G.name,
        "L": args.L,
        "count": count,
        "walk_bound": bound,
        "regular": regular,
        "girth": girth,
    }
    checks = {"below_walk_bound": count <= bound}
    # Every non-backtracking walk shorter than the girth is a path
    if regular and girth >= args.L:
        checks["exact_below_girth"] = count == bound
    emit(config, args, "paths", results, checks)


# Command registry for CLI discovery
COMMANDS = {
    "run:graph-info": {
        "handler": handle_graph_info,
        "help": "Vertices, degrees, girth, diameter and spectral gap of a graph",
        "topic": "graph preliminaries: girth, diameter, standard random walk",
        "args": [GRAPH_ARG],
    },
    "run:spectral-gap": {
        "handler": handle_spectral_gap,
        "help": "Spectral gap of I - mu_G with Rayleigh quotient checks",
        "topic": "real spectral gap as the infimum of the Rayleigh quotient",
        "args": [
            GRAPH_ARG,
            {"name": "--samples", "type": int, "default": 200, "help": "Random test functions (default: 200)"},
            SEED_ARG,
        ],
    },
    "run:walk-powers": {
        "handler": handle_walk_powers,
        "help": "Convolution powers of the standard walk (table)",
        "topic": "n-fold convolution of a symmetric random walk",
        "args": [
            GRAPH_ARG,
            {"name": "--n-max", "type": int, "default": 6, "help": "Largest power (default: 6)"},
        ],
    },
    "run:subdivide": {
        "handler": handle_subdivide,
        "help": "Subdivide every edge into j edges and compare invariants",
        "topic": "j-subdivision of a graph model and its girth",
        "args": [
            GRAPH_ARG,
            {"name": "--j", "type": int, "required": True, "help": "Subdivision factor"},
        ],
    },
    "run:paths": {
        "handler": handle_paths,
        "help": "Count embedded paths shorter than L",
        "topic": "embedded path count in the graph hypotheses of the random group model",
        "args": [
            GRAPH_ARG,
            {"name": "--L", "type": int, "required": True, "help": "Strict upper bound on path length"},
        ],
    },
}
