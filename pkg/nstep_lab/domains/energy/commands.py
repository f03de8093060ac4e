"""
Energy domain commands.

Exports COMMANDS dict for CLI discovery.
"""
from typing import TYPE_CHECKING, Iterator

import numpy as np

from .actions import integer_map, map_from_dict, random_affine_map, tree_map
from .energies import (
    affine_operator_report,
    converse_tree_check,
    equivariant_energy,
    fixed_point_descent,
    inequality_report,
)
from .types import EquivariantMap
from .walks import cayley_tree_energy, free_walk_distribution, word_length_distribution
from .words import inverse
from ..spaces import MetricTree
from ...lib.errors import ParameterError
from ...lib.graph_io import resolve_json_input
from ...lib.report import emit

if TYPE_CHECKING:
    from ...config import Config

ACTION_ARG = {"name": "--action", "help": "Action descriptor: JSON file, '-' for stdin, or inline JSON"}
RANDOM_ACTION_ARGS = [
    {"name": "--target", "choices": ["euclidean", "tree"], "default": "euclidean",
     "help": "Target of random actions (default: euclidean)"},
    {"name": "--k", "type": int, "default": 2, "help": "Rank of the free group (default: 2)"},
    {"name": "--dimension", "type": int, "default": 3, "help": "Euclidean dimension (default: 3)"},
    {"name": "--samples", "type": int, "default": 20, "help": "Random actions when --action is absent (default: 20)"},
    {"name": "--seed", "type": int, "help": "Random seed (default: config seed)"},
]
N_MAX_ARG = {"name": "--n-max", "type": int, "default": 6, "help": "Largest number of steps (default: 6)"}


def _random_tree_map(k: int, rng: np.random.Generator) -> EquivariantMap:
    """F_k permuting the legs of a 4-leg star with unequal basepoint offset."""
    tree = MetricTree.star(4)
    perms = [(0, *(int(x) for x in 1 + rng.permutation(4))) for _ in range(k)]
    e = int(rng.integers(4))
    return tree_map(tree, perms, tree.point(e, float(rng.uniform(0.0, 1.0))))


def _maps(config: "Config", args) -> Iterator[EquivariantMap]:
    if args.action is not None:
        yield map_from_dict(resolve_json_input(args.action))
        return
    if args.samples < 1:
        raise ParameterError(f"--samples must be >= 1, got {args.samples}")
    seeds = np.random.SeedSequence(config.seed_for(args)).spawn(args.samples)
    for child in seeds:
        if getattr(args, "target", "euclidean") == "tree":
            yield _random_tree_map(args.k, np.random.default_rng(child))
        else:
            yield random_affine_map(args.k, args.dimension, seed=int(child.generate_state(1)[0]))


def handle_free_walk(config: "Config", args) -> None:
    """
    Exact n-step distribution of the standard walk on F_k.

    Command: run:free-walk --k K --n N
    """
    dist = free_walk_distribution(args.k, args.n)
    tol = config.tolerance("identity")
    lengths = dist.length_distribution()
    chain = word_length_distribution(args.k, args.n)
    length_defect = max(abs(lengths.get(l, 0.0) - p) for l, p in enumerate(chain))
    symmetry_defect = max(abs(p - dist[inverse(w)]) for w, p in dist.items())
    # mu^n(e, gamma) is supported on words of the parity of n
    parity_ok = all(len(w) % 2 == args.n % 2 for w, _ in dist.items())

    checks = {
        "total_mass": abs(sum(p for _, p in dist.items()) - 1.0) <= tol,
        "length_chain": length_defect <= tol,
        "symmetric": symmetry_defect <= tol,
        "parity": parity_ok,
    }
    emit(config, args, "free-walk", dist, checks)


def handle_integer_example(config: "Config", args) -> None:
    """
    Z acting on R by x -> ux + tau: closed forms of the n-step energy.

    Command: run:integer-example [--samples N] [--n-max N]
    """
    rng = np.random.default_rng(config.seed_for(args))
    tol = config.tolerance("identity")
    worst_translation, worst_reflection = 0.0, 0.0
    for _ in range(args.samples):
        tau, alpha = rng.uniform(-3.0, 3.0, size=2)
        translation = integer_map(1, tau, alpha)
        reflection = integer_map(-1, tau, alpha)
        for n in range(1, args.n_max + 1):
            worst_translation = max(worst_translation, abs(equivariant_energy(translation, n) - n * tau ** 2 / 2))
            expected = 2 * (alpha - tau / 2) ** 2 if n % 2 else 0.0
            worst_reflection = max(worst_reflection, abs(equivariant_energy(reflection, n) - expected))

    results = {
        "samples": args.samples,
        "n_max": args.n_max,
        "translation_defect": worst_translation,
        "reflection_defect": worst_reflection,
    }
    checks = {"translation_closed_form": worst_translation <= tol, "reflection_closed_form": worst_reflection <= tol}
    emit(config, args, "integer-example", results, checks)


def handle_inequalities(config: "Config", args) -> None:
    """
    n-step energy inequalities for one action or a batch of random ones.

    Command: run:inequalities [--action <json>] [--target T] [--samples N] [--n-max N]
    """
    tol = config.tolerance("slack")
    reports = [inequality_report(f, args.n_max, tol=tol) for f in _maps(config, args)]
    merged: dict[str, bool] = {}
    for report in reports:
        for name, ok in report.checks.items():
            merged[name] = merged.get(name, True) and ok

    results = {"instances": len(reports), "failures": sum(not r.passed for r in reports)}
    if len(reports) == 1:
        results["report"] = reports[0]
    else:
        results["min_energy_1"] = min(r.energy_1 for r in reports)
        results["max_ratio"] = max(row.ratio or 0.0 for r in reports for row in r.rows)
    emit(config, args, "inequalities", results, merged)


def handle_affine(config: "Config", args) -> None:
    """
    Averaging operator identities for affine actions on R^d.

    Command: run:affine [--action <json>] [--samples N] [--n-max N]
    """
    tol = config.tolerance("slack")
    identity_tol = config.tolerance("identity")
    args.target = "euclidean"
    reports = [
        affine_operator_report(f, args.n_max, tol=tol, identity_tol=identity_tol) for f in _maps(config, args)
    ]
    merged: dict[str, bool] = {}
    for report in reports:
        for name, ok in report.checks.items():
            merged[name] = merged.get(name, True) and ok

    results = {
        "instances": len(reports),
        "harmonic": sum(r.harmonic for r in reports),
        "max_identity_defect": max(row["identity_defect"] for r in reports for row in r.rows),
    }
    if len(reports) == 1:
        results["report"] = reports[0]
    emit(config, args, "affine", results, merged)


def handle_descent(config: "Config", args) -> None:
    """
    Geodesic descent toward a fixed point of the action.

    Command: run:descent --action <json> [--step S] [--n N --eps E]
    """
    f0 = map_from_dict(resolve_json_input(args.action))
    result = fixed_point_descent(
        f0,
        step=args.step,
        tol=config.tolerance("descent"),
        max_iter=int(config.tolerance("max_iter")),
        n=args.n,
        eps=args.eps,
    )
    energies = [s.energy for s in result.trace]
    results = {
        "descent": result,
        "initial_energy": energies[0],
        "gradient_ratios": [s.ratio for s in result.trace[: args.trace]],
    }
    checks = {"energy_decreased": energies[-1] <= energies[0] + config.tolerance("slack")}
    if result.gradient_constant is not None:
        tol = config.tolerance("slack")
        checks["gradient_bound_along_trace"] = all(
            s.gradient_norm ** 2 >= result.gradient_constant * s.energy - tol for s in result.trace
        )
    emit(config, args, "descent", results, checks)


def handle_converse(config: "Config", args) -> None:
    """
    E_{mu^n} <= 2k E_mu for a tree action with a global fixed point.

    Command: run:converse --action <json> [--n-max N]
    """
    f = map_from_dict(resolve_json_input(args.action))
    report = converse_tree_check(f, args.n_max, tol=config.tolerance("slack"))
    emit(config, args, "converse", report, {"bounded_by_constant": report.passed})


def handle_cayley_energy(config: "Config", args) -> None:
    """
    Standard map of F_m into its Cayley tree against m n^2/(2m-1).

    Command: run:cayley-energy [--m-max M] [--n-max N]
    """
    table = []
    for m in range(2, args.m_max + 1):
        for n in range(1, args.n_max + 1):
            row = cayley_tree_energy(m, n).to_dict()
            table.append(row)
    results = {"m_max": args.m_max, "n_max": args.n_max, "rows": table}
    checks = {"below_bound": all(row["passed"] for row in table)}
    emit(config, args, "cayley-energy", results, checks, table=table)


# Command registry for CLI discovery
COMMANDS = {
    "run:free-walk": {
        "handler": handle_free_walk,
        "help": "Exact n-step distribution of the standard walk on F_k",
        "topic": "n-fold convolution of the standard random walk on a free group",
        "args": [
            {"name": "--k", "type": int, "default": 2, "help": "Rank (default: 2)"},
            {"name": "--n", "type": int, "default": 4, "help": "Steps (default: 4)"},
        ],
    },
    "run:integer-example": {
        "handler": handle_integer_example,
        "help": "Closed-form n-step energies of Z acting on R",
        "topic": "n-step energy of translations and reflections of the line",
        "args": [
            {"name": "--samples", "type": int, "default": 50, "help": "Random (tau, alpha) pairs (default: 50)"},
            {"name": "--n-max", "type": int, "default": 10, "help": "Largest number of steps (default: 10)"},
            {"name": "--seed", "type": int, "help": "Random seed (default: config seed)"},
        ],
    },
    "run:inequalities": {
        "handler": handle_inequalities,
        "help": "n-step energy and gradient inequalities",
        "topic": "n-step energy inequalities and the gradient lower bound",
        "args": [ACTION_ARG, *RANDOM_ACTION_ARGS, N_MAX_ARG],
    },
    "run:affine": {
        "handler": handle_affine,
        "help": "Averaging operator identities for affine actions",
        "topic": "n-step gradient of affine actions through the averaging operator",
        "args": [ACTION_ARG, *[a for a in RANDOM_ACTION_ARGS if a["name"] != "--target"], N_MAX_ARG],
    },
    "run:descent": {
        "handler": handle_descent,
        "help": "Descent toward a fixed point with its energy trace",
        "topic": "fixed points from a uniform gradient lower bound",
        "args": [
            dict(ACTION_ARG, required=True),
            {"name": "--step", "type": float, "default": 0.5, "help": "Geodesic step in (0, 1] (default: 0.5)"},
            {"name": "--n", "type": int, "help": "n for the gradient constant"},
            {"name": "--eps", "type": float, "help": "eps for the gradient constant"},
            {"name": "--trace", "type": int, "default": 20, "help": "Trace entries to report (default: 20)"},
        ],
    },
    "run:converse": {
        "handler": handle_converse,
        "help": "n-step energy bound for tree actions with a fixed point",
        "topic": "bounded n-step energy ratio for actions with a global fixed point",
        "args": [dict(ACTION_ARG, required=True), N_MAX_ARG],
    },
    "run:cayley-energy": {
        "handler": handle_cayley_energy,
        "help": "n-step energy of a free group on its Cayley tree (table)",
        "topic": "n-step energy of the standard map into the Cayley tree",
        "args": [
            {"name": "--m-max", "type": int, "default": 3, "help": "Largest rank (default: 3)"},
            N_MAX_ARG,
        ],
    },
}
