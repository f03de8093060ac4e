"""
Special graphs domain commands.

Exports COMMANDS dict for CLI discovery.
"""
import math
from typing import TYPE_CHECKING

import networkx as nx

from .constructions import generalized_triangle, lps_graph, validate_lps
from ..graph import girth_and_diameter, spectral_gap_real
from ...lib.report import emit

if TYPE_CHECKING:
    from ...config import Config


def handle_lps(config: "Config", args) -> None:
    """
    Build X^{p,q} and certify it against the LPS bounds.

    Command: run:lps --p P --q Q
    """
    G, params = lps_graph(args.p, args.q)
    cert = validate_lps(G, params)
    checks = {
        "vertex_count": cert.vertex_count == params.expected_order,
        "regular": cert.degree == args.p + 1,
        "bipartite_matches_legendre": cert.bipartite_observed == params.bipartite,
        "girth_bound": cert.girth_ok,
        "diameter_bound": cert.diameter_ok,
    }
    if cert.spectral_ok is not None:
        checks["ramanujan_gap"] = cert.spectral_ok
    emit(config, args, "lps", cert, checks)


def handle_generalized_triangle(config: "Config", args) -> None:
    """
    Incidence graph of the projective plane over F_r.

    Command: run:generalized-triangle --r R
    """
    r = args.r
    G, incidence = generalized_triangle(r)
    girth, diameter = girth_and_diameter(G)
    size = incidence.size
    gap = spectral_gap_real(G)
    expected_gap = 1.0 - math.sqrt(r) / (r + 1)

    # Two distinct points lie on exactly one common line
    lines = [set(incidence.lines_through(i)) for i in range(size)]
    unique_joins = all(len(lines[i] & lines[j]) == 1 for i in range(size) for j in range(i + 1, size))

    results = {
        "r": r,
        "points": size,
        "vertices": G.vertex_count,
        "edges": G.edge_count,
        "girth": girth,
        "diameter": diameter,
        "spectral_gap": gap,
        "expected_spectral_gap": expected_gap,
        "edge_length": G.edge_lengths[0],
    }
    checks = {
        "point_count": size == r * r + r + 1,
        "regular": set(int(d) for d in G.degrees) == {r + 1},
        "girth_six": girth == 6,
        "diameter_three": diameter == 3,
        "bipartite": nx.is_bipartite(G.to_networkx()),
        "unique_joins": unique_joins,
        "spectral_gap": abs(gap - expected_gap) <= 1e-9,
    }
    emit(config, args, "generalized-triangle", results, checks)


# Command registry for CLI discovery
COMMANDS = {
    "run:lps": {
        "handler": handle_lps,
        "help": "Build and certify the LPS expander X^{p,q}",
        "topic": "LPS Ramanujan graphs: order, bipartiteness, girth and diameter bounds",
        "args": [
            {"name": "--p", "type": int, "required": True, "help": "Prime = 1 mod 4 (degree p+1)"},
            {"name": "--q", "type": int, "required": True, "help": "Prime = 1 mod 4, q > 2 sqrt(p)"},
        ],
    },
    "run:generalized-triangle": {
        "handler": handle_generalized_triangle,
        "help": "Point-line incidence graph of PG(2, r)",
        "topic": "generalized triangles as links of rank-2 Euclidean buildings",
        "args": [
            {"name": "--r", "type": int, "default": 2, "help": "Prime field order (default: 2)"},
        ],
    },
}
