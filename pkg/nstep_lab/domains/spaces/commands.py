"""
Spaces domain commands.

Exports COMMANDS dict for CLI discovery.
"""
import logging
from typing import TYPE_CHECKING, Iterator

import numpy as np

from .barycenter import (
    barycenter,
    barycenter_oracle,
    frechet_objective,
    inductive_mean,
    tangent_inner_product_check,
    variance_report,
)
from .descriptors import measure_from_dict, point_from_dict, space_from_dict
from .models import CatSpace
from .types import FiniteMeasure, point_to_dict
from ...lib.errors import ParameterError, SizeError
from ...lib.graph_io import resolve_json_input
from ...lib.report import emit

if TYPE_CHECKING:
    from ...config import Config

logger = logging.getLogger(__name__)

MEASURE_ARG = {"name": "--measure", "help": "Measure descriptor: JSON file, '-' for stdin, or inline JSON"}
SPACE_ARG = {"name": "--space", "help": "Space descriptor for random measures, e.g. '{\"type\": \"pod\", \"legs\": 3}'"}
POINT_ARG = {"name": "--point", "help": "Test point descriptor (inline JSON); random points otherwise"}
SAMPLE_ARGS = [
    {"name": "--samples", "type": int, "default": 100, "help": "Random instances (default: 100)"},
    {"name": "--support-size", "type": int, "default": 4, "help": "Support size of random measures (default: 4)"},
    {"name": "--seed", "type": int, "help": "Random seed (default: config seed)"},
]


def _instances(config: "Config", args) -> Iterator[tuple[CatSpace, FiniteMeasure, object]]:
    """
    (space, measure, test point) triples: the given measure against the given
    or sampled points, or sampled measures in the given space.
    """
    if args.measure is None and args.space is None:
        raise ParameterError("give --measure or --space")
    if args.samples < 1:
        raise ParameterError(f"--samples must be >= 1, got {args.samples}")
    rng = np.random.default_rng(config.seed_for(args))

    if args.measure is not None:
        space, m = measure_from_dict(resolve_json_input(args.measure))
    else:
        space, m = space_from_dict(resolve_json_input(args.space)), None
    fixed = point_from_dict(space, resolve_json_input(args.point)) if args.point else None

    for _ in range(1 if fixed is not None and m is not None else args.samples):
        measure = m if m is not None else space.sample_measure(rng, args.support_size)
        w = fixed if fixed is not None else space.sample_point(rng)
        yield space, measure, w


def handle_barycenter(config: "Config", args) -> None:
    """
    Barycenter of a measure, cross-checked against the inductive mean and
    the brute-force oracle.

    Command: run:barycenter --measure <json> [--method M] [--oracle-h H]
    """
    space, m = measure_from_dict(resolve_json_input(args.measure))
    tol = config.tolerance("barycenter")
    passes = int(config.tolerance("max_passes"))
    seed = config.seed_for(args)

    b = barycenter(space, m, method=args.method, tol=tol, max_passes=passes, seed=seed)
    mean, residual, used = inductive_mean(space, m, passes=passes, tol=tol, seed=seed)
    results = {
        "space": space.to_dict(),
        "support_size": len(m),
        "barycenter": point_to_dict(b),
        "objective": frechet_objective(space, m, b),
        "inductive_mean": point_to_dict(mean),
        "inductive_distance": space.distance(b, mean),
        "inductive_passes": used,
        "inductive_residual": residual,
    }
    checks = {"inductive_objective": frechet_objective(space, m, mean) >= results["objective"] - tol}

    h = args.oracle_h if args.oracle_h is not None else config.get_default("spaces", "oracle_h", 0.05)
    if h > 0:
        try:
            oracle = barycenter_oracle(space, m, h)
        except SizeError as e:
            logger.warning("oracle skipped: %s", e)
            results["oracle_skipped"] = str(e)
        else:
            results["oracle_h"] = h
            results["oracle"] = point_to_dict(oracle)
            results["oracle_distance"] = space.distance(b, oracle)
            checks["oracle_objective"] = frechet_objective(space, m, oracle) >= results["objective"] - tol
            checks["oracle_within_10h"] = results["oracle_distance"] <= 10 * h
    emit(config, args, "barycenter", results, checks)


def handle_variance(config: "Config", args) -> None:
    """
    Both variance inequalities over random or given instances.

    Command: run:variance (--measure <json> | --space <json>) [--point <json>] [--samples N]
    """
    tol = config.tolerance("slack")
    worst1, worst2, failures, count = np.inf, np.inf, 0, 0
    for space, m, w in _instances(config, args):
        report = variance_report(space, m, w, tol=tol)
        worst1 = min(worst1, report.slack1)
        worst2 = min(worst2, report.slack2)
        failures += not report.passed
        count += 1

    results = {"instances": count, "min_slack1": worst1, "min_slack2": worst2, "failures": failures}
    checks = {"slack1_nonnegative": worst1 >= -tol, "slack2_nonnegative": worst2 >= -tol}
    emit(config, args, "variance", results, checks)


def handle_tangent_inner(config: "Config", args) -> None:
    """
    Barycenter inner-product inequality in a cone, with its equality case.

    Command: run:tangent-inner (--measure <json> | --space <json>) [--point <json>] [--samples N]
    """
    tol = config.tolerance("slack")
    worst_slack, worst_defect, count = np.inf, 0.0, 0
    for space, m, w in _instances(config, args):
        report = tangent_inner_product_check(space, m, w, tol=tol)
        worst_slack = min(worst_slack, report.slack)
        worst_defect = max(worst_defect, abs(report.equality_defect))
        count += 1

    results = {"instances": count, "min_slack": worst_slack, "max_equality_defect": worst_defect}
    checks = {"inequality": worst_slack >= -tol, "equality_at_barycenter": worst_defect <= tol}
    emit(config, args, "tangent-inner", results, checks)


# Command registry for CLI discovery
COMMANDS = {
    "run:barycenter": {
        "handler": handle_barycenter,
        "help": "Barycenter of a finite measure with inductive-mean and oracle cross-checks",
        "topic": "existence and uniqueness of barycenters in CAT(0) spaces",
        "args": [
            dict(MEASURE_ARG, required=True),
            {"name": "--method", "choices": ["auto", "exact", "inductive"], "default": "auto",
             "help": "Barycenter solver (default: auto)"},
            {"name": "--oracle-h", "type": float,
             "help": "Oracle grid step; 0 disables the oracle (default: config spaces.oracle_h)"},
            {"name": "--seed", "type": int, "help": "Seed for the inductive visiting order"},
        ],
    },
    "run:variance": {
        "handler": handle_variance,
        "help": "Variance inequalities at the barycenter",
        "topic": "variance inequalities for barycenters in CAT(0) spaces",
        "args": [MEASURE_ARG, SPACE_ARG, POINT_ARG, *SAMPLE_ARGS],
    },
    "run:tangent-inner": {
        "handler": handle_tangent_inner,
        "help": "Inner-product inequality for barycenters in tangent cones",
        "topic": "inner products against the barycenter in a tangent cone",
        "args": [MEASURE_ARG, SPACE_ARG, POINT_ARG, *SAMPLE_ARGS],
    },
}
