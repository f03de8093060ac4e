"""
Random group domain commands.

Exports COMMANDS dict for CLI discovery.
"""
import math
from typing import TYPE_CHECKING

import numpy as np

from .bounds import (
    DEFAULT_C_ABS,
    bernoulli_bound,
    fixed_point_pipeline,
    graph_hypotheses,
    spectral_transplant_check,
)
from .labellings import pushforward_walk, relators, sample_labelling
from .types import SLabelling
from .weighted_sum import concentration_experiment, p_profile, weighted_sum_check
from ..energy.words import format_word, inverse, parse_word
from ..graph import girth_and_diameter
from ..spaces import space_from_dict
from ...lib.errors import ParameterError
from ...lib.graph_io import GRAPH_ARG, resolve_graph, resolve_json_input
from ...lib.report import emit

if TYPE_CHECKING:
    from ...config import Config

K_ARG = {"name": "--k", "type": int, "default": 2, "help": "Free group rank (default: 2)"}
SEED_ARG = {"name": "--seed", "type": int, "help": "Random seed (default: config seed)"}
# Walks at this length are compared with the Gaussian limit
GAUSSIAN_CHECK_N = 10_000


def _labelling(G, args, seed) -> SLabelling:
    if not args.labels:
        return sample_labelling(G, args.k, seed)
    letters = []
    for text in args.labels:
        word = parse_word(text)
        if len(word) != 1:
            raise ParameterError(f"label {text!r} is not a single generator")
        letters.append(word[0])
    return SLabelling(graph=G, k=args.k, labels=tuple(letters))


def handle_labelling(config: "Config", args) -> None:
    """
    An S-labelling of a graph and the relators of its fundamental cycles.

    Command: run:labelling --graph <ref> [--k K] [--labels a b A ...] [--seed S]
    """
    G = resolve_graph(args.graph)
    alpha = _labelling(G, args, config.seed_for(args))
    words = relators(alpha, basepoint=args.basepoint)
    results = {
        "labelling": alpha,
        "relators": [format_word(w) for w in words],
        "relator_lengths": [len(w) for w in words],
    }
    checks = {
        "inverse_consistent": alpha.inverse_consistent(),
        "cycle_rank": len(words) == G.edge_count - G.vertex_count + 1,
    }
    emit(config, args, "labelling", results, checks)


def handle_pushforward(config: "Config", args) -> None:
    """
    Push-forward of the n-step walk to F_k along one labelling.

    Command: run:pushforward --graph <ref> --n N [--k K] [--labels ...] [--seed S]
    """
    G = resolve_graph(args.graph)
    alpha = _labelling(G, args, config.seed_for(args))
    kernel = pushforward_walk(alpha, args.n)
    tol = config.tolerance("identity")
    symmetry = max(abs(p - kernel[inverse(w)]) for w, p in kernel.table.items())
    results = {"labelling": alpha, "kernel": kernel, "identity_mass": kernel[()], "symmetry_defect": symmetry}
    checks = {
        "total_mass": abs(sum(kernel.table.values()) - 1.0) <= 1e-12,
        "symmetric": symmetry <= tol,
    }
    emit(config, args, "pushforward", results, checks)


def handle_weighted_sum(config: "Config", args) -> None:
    """
    Mean push-forward against sum_l P_G^n(l) mu_Gamma^l.

    Command: run:weighted-sum --graph <ref> --n N [--k K] [--trials T] [--seed S] [--exact]
    """
    G = resolve_graph(args.graph)
    trials = args.trials if args.trials is not None else config.get_default("random_group", "trials", 1000)
    report = weighted_sum_check(
        G,
        args.k,
        args.n,
        trials=trials,
        seed=config.seed_for(args),
        mode="exact" if args.exact else "monte_carlo",
    )
    checks = {"within_budget": report.passed}
    emit(config, args, "weighted-sum", report, checks)


def handle_p_profile(config: "Config", args) -> None:
    """
    Distance profile P_G^n(l) of the n-step walk and its tail Q_G^n.

    Command: run:p-profile --graph <ref> --n N
    """
    G = resolve_graph(args.graph)
    decomposition = p_profile(G, args.n)
    girth, _ = girth_and_diameter(G)
    tol = config.tolerance("identity")
    table = [{"l": l, "weight": float(w)} for l, w in enumerate(decomposition.weights)]

    results = {"graph": G.name, "girth": girth, "decomposition": decomposition}
    checks = {
        "weights_sum_to_one": abs(float(decomposition.weights.sum()) - 1.0) <= tol,
        "per_start_sum_to_one": bool(np.all(np.abs(decomposition.per_start.sum(axis=1) - 1.0) <= tol)),
        "nonnegative": bool(np.all(decomposition.weights >= -tol)),
    }
    if args.n >= 2 and args.n < girth / 2:
        bound = bernoulli_bound(args.n).value
        results["bernoulli_bound"] = bound
        checks["tail_below_bernoulli"] = decomposition.tail <= bound + 1e-12
    emit(config, args, "p-profile", results, checks, table=table)


def handle_bernoulli(config: "Config", args) -> None:
    """
    b^n(sqrt n), its running maximum and the Gaussian limit.

    Command: run:bernoulli --n N
    """
    bound = bernoulli_bound(args.n)
    checks = {"below_running_max": bound.value <= bound.c_observed + 1e-12}
    if args.n >= 4:
        checks["c_observed_is_seven_eighths"] = abs(bound.c_observed - 0.875) <= 1e-12
    if args.n >= GAUSSIAN_CHECK_N:
        checks["near_gaussian_limit"] = abs(bound.value - bound.reference) <= 0.02
    emit(config, args, "bernoulli", bound, checks)


def handle_transplant(config: "Config", args) -> None:
    """
    E_{mu^n}(phi) <= (2 / lambda_lower) E_mu(phi) for random vertex maps.

    Command: run:transplant --graph <ref> --target <json> [--n-max N] [--samples S] [--route R]
    """
    G = resolve_graph(args.graph)
    space = space_from_dict(resolve_json_input(args.target))
    rng = np.random.default_rng(config.seed_for(args))
    tol = config.tolerance("slack")

    worst, lam, route = math.inf, None, None
    for _ in range(args.samples):
        phi = [space.sample_point(rng) for _ in range(G.vertex_count)]
        for n in range(1, args.n_max + 1):
            report = spectral_transplant_check(G, space, phi, n, route=args.route, tol=tol)
            worst = min(worst, report.rhs - report.lhs)
            lam, route = report.lambda_lower, report.route

    results = {
        "graph": G.name,
        "target": space.to_dict(),
        "lambda_lower": lam,
        "route": route,
        "samples": args.samples,
        "n_max": args.n_max,
        "min_slack": worst,
    }
    emit(config, args, "transplant", results, {"transplanted_gap": worst >= -tol})


def handle_pipeline(config: "Config", args) -> None:
    """
    Step count, slack, girth threshold and gradient constant from lambda0.

    Command: run:pipeline --lambda0 L [--c-abs C] [--girth G]
    """
    c_abs = args.c_abs
    if c_abs is None:
        configured = config.get_default("random_group", "c_abs")
        # Only an overridden value counts as supplied; the default stays flagged
        c_abs = None if configured in (None, DEFAULT_C_ABS) else configured
    constants = fixed_point_pipeline(args.lambda0, c_abs=c_abs, girth=args.girth)
    ratio = constants.c_abs / constants.lambda0
    checks = {
        "minimal_n": math.sqrt(constants.n) > ratio and (constants.n == 1 or math.sqrt(constants.n - 1) <= ratio),
        "eps_positive": constants.eps > 0,
    }
    if constants.girth_ok is not None:
        checks["girth_at_least_g0"] = constants.girth_ok
    emit(config, args, "pipeline", constants, checks)


def handle_hypotheses(config: "Config", args) -> None:
    """
    Graph-side hypotheses of the fixed-point theorem on one graph.

    Command: run:hypotheses --graph <ref> --g0 G [--d0 D] [--mu0 M] [--no-paths]
    """
    G = resolve_graph(args.graph)
    hypotheses = graph_hypotheses(G, args.g0, d0=args.d0, mu0=args.mu0, count_paths=not args.no_paths)
    emit(config, args, "hypotheses", hypotheses, hypotheses.checks)


def handle_concentration(config: "Config", args) -> None:
    """
    Frequencies of the two labelling events; reported, never asserted.

    Command: run:concentration --graph <ref> --n N [--k K] [--trials T] [--seed S]
    """
    G = resolve_graph(args.graph)
    report = concentration_experiment(G, args.k, args.n, trials=args.trials, seed=config.seed_for(args))
    frequencies = [f for f in (report.lower_event_frequency, report.upper_event_frequency) if f is not None]
    emit(config, args, "concentration", report, {"frequencies_in_unit_interval": all(0 <= f <= 1 for f in frequencies)})


LABEL_ARGS = [
    K_ARG,
    {"name": "--labels", "nargs": "+", "help": "One generator per edge in edge order (a, A, b, B, ...)"},
    SEED_ARG,
]

# Command registry for CLI discovery
COMMANDS = {
    "run:labelling": {
        "handler": handle_labelling,
        "help": "S-labelling of a graph and its relators",
        "topic": "the graph model of random groups: labellings and relators",
        "args": [
            GRAPH_ARG,
            *LABEL_ARGS,
            {"name": "--basepoint", "type": int, "default": 0, "help": "Spanning tree root (default: 0)"},
        ],
    },
    "run:pushforward": {
        "handler": handle_pushforward,
        "help": "Push-forward of the n-step walk along a labelling",
        "topic": "push-forward of the graph random walk to the free group",
        "args": [GRAPH_ARG, {"name": "--n", "type": int, "required": True, "help": "Walk length"}, *LABEL_ARGS],
    },
    "run:weighted-sum": {
        "handler": handle_weighted_sum,
        "help": "Mean push-forward against the weighted sum of free-group walks",
        "topic": "expected push-forward as a weighted sum of free-group convolution powers",
        "args": [
            GRAPH_ARG,
            K_ARG,
            {"name": "--n", "type": int, "required": True, "help": "Walk length, below girth/2"},
            {"name": "--trials", "type": int, "help": "Sampled labellings (default: config random_group.trials)"},
            SEED_ARG,
            {"name": "--exact", "action": "store_true", "help": "Average over every labelling instead of sampling"},
        ],
    },
    "run:p-profile": {
        "handler": handle_p_profile,
        "help": "Distance profile of the n-step walk (table)",
        "topic": "weights P_G^n(l) of the weighted-sum decomposition",
        "args": [GRAPH_ARG, {"name": "--n", "type": int, "required": True, "help": "Walk length"}],
    },
    "run:bernoulli": {
        "handler": handle_bernoulli,
        "help": "Bernoulli walk tail b^n(sqrt n) and its running maximum",
        "topic": "the graph walk travels further than the Bernoulli walk",
        "args": [{"name": "--n", "type": int, "default": 200, "help": "Steps (default: 200)"}],
    },
    "run:transplant": {
        "handler": handle_transplant,
        "help": "n-step energy of vertex maps against a certified Wang lower bound",
        "topic": "spectral gap bound on the n-step energy of maps from a graph",
        "args": [
            GRAPH_ARG,
            {"name": "--target", "required": True, "help": "Space descriptor (inline JSON or file)"},
            {"name": "--n-max", "type": int, "default": 4, "help": "Largest walk length (default: 4)"},
            {"name": "--samples", "type": int, "default": 100, "help": "Random vertex maps (default: 100)"},
            {"name": "--route", "choices": ["auto", "delta", "distortion"], "default": "auto",
             "help": "Certified lower bound to use (default: auto)"},
            SEED_ARG,
        ],
    },
    "run:pipeline": {
        "handler": handle_pipeline,
        "help": "Constants n, eps, g0 and C_grad of the fixed-point argument",
        "topic": "girth threshold for fixed points of random groups in the graph model",
        "args": [
            {"name": "--lambda0", "type": float, "required": True, "help": "Lower bound on the tangent-cone Wang invariant"},
            {"name": "--c-abs", "type": float, "help": f"Absolute constant C (default: {DEFAULT_C_ABS:g}, flagged)"},
            {"name": "--girth", "type": float, "help": "Girth to test against g0"},
        ],
    },
    "run:hypotheses": {
        "handler": handle_hypotheses,
        "help": "Degree, girth, path-count and spectral hypotheses of a graph",
        "topic": "graph-side hypotheses of the fixed-point theorem",
        "args": [
            GRAPH_ARG,
            {"name": "--g0", "type": int, "required": True, "help": "Girth threshold"},
            {"name": "--d0", "type": int, "help": "Maximum degree"},
            {"name": "--mu0", "type": float, "help": "Spectral gap lower bound"},
            {"name": "--no-paths", "action": "store_true", "help": "Skip the embedded path count"},
        ],
    },
    "run:concentration": {
        "handler": handle_concentration,
        "help": "Frequencies of the push-forward concentration events",
        "topic": "push-forward walks of random labellings concentrate near their mean",
        "args": [
            GRAPH_ARG,
            K_ARG,
            {"name": "--n", "type": int, "required": True, "help": "Walk length, below girth/2"},
            {"name": "--trials", "type": int, "default": 100, "help": "Sampled labellings (default: 100)"},
            SEED_ARG,
        ],
    },
}
