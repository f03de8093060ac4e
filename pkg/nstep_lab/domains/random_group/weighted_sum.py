"""
The weighted-sum law: the expected push-forward of mu_G^n over uniform
labellings is sum_l P_G^n(l) mu_Gamma^l, checked exactly on tiny graphs and
by Monte Carlo otherwise.
"""
import logging
import math
from typing import Optional

import numpy as np

from .labellings import all_labellings, check_model_graph, pushforward_walk, sample_labelling
from .types import ConcentrationReport, WeightedSumDecomposition, WeightedSumReport
from ..energy.walks import free_walk_distribution
from ..energy.words import Word
from ..graph import Graph, dense_power, girth_and_diameter, hop_distances, standard_measure
from ...lib.errors import ParameterError

logger = logging.getLogger(__name__)

EXACT_TOL = 1e-12


def p_profile(G: Graph, n: int) -> WeightedSumDecomposition:
    """
    P_{G,u}^n(l) = mu_G^n(u, {v : d(u, v) = l}) for l = 0..n, averaged with nu_G.

    Raises:
        ParameterError: If n < 1
    """
    if n < 1:
        raise ParameterError(f"number of steps must be >= 1, got {n}")
    power = dense_power(G, n)
    hops = hop_distances(G)
    per_start = np.zeros((G.vertex_count, n + 1))
    for l in range(n + 1):
        per_start[:, l] = np.where(hops == l, power, 0.0).sum(axis=1)
    weights = standard_measure(G).weights @ per_start
    tail = float(sum(weights[l] for l in range(n + 1) if l * l <= n))
    return WeightedSumDecomposition(n=n, weights=weights, per_start=per_start, tail=tail)


def expected_pushforward(decomposition: WeightedSumDecomposition, k: int) -> dict[Word, float]:
    """sum_l P(l) mu_Gamma^l(e, .) on F_k."""
    out: dict[Word, float] = {(): float(decomposition.weights[0])}
    for l in range(1, decomposition.n + 1):
        weight = float(decomposition.weights[l])
        if weight == 0.0:
            continue
        for word, p in free_walk_distribution(k, l).items():
            out[word] = out.get(word, 0.0) + weight * p
    return out


def exact_pushforward_expectation(G: Graph, k: int, n: int) -> dict[Word, float]:
    """
    Average of pushforward_walk over every labelling of G.

    Raises:
        SizeError: If (2k)^|E| exceeds the enumeration limit
    """
    total: dict[Word, float] = {}
    count = 0
    for alpha in all_labellings(G, k):
        count += 1
        for word, p in pushforward_walk(alpha, n).table.items():
            total[word] = total.get(word, 0.0) + p
    return {w: p / count for w, p in total.items()}


def _check_steps(G: Graph, n: int) -> None:
    check_model_graph(G)
    girth, _ = girth_and_diameter(G)
    if n < 1 or not n < girth / 2:
        raise ParameterError(f"need 1 <= n < girth/2 = {girth / 2}, got n={n}")


def weighted_sum_check(
    G: Graph,
    k: int,
    n: int,
    trials: int = 1000,
    seed: Optional[int] = 0,
    mode: str = "monte_carlo",
) -> WeightedSumReport:
    """
    Compare the mean push-forward with sum_l P_G^n(l) mu_Gamma^l.

    Monte Carlo mode averages `trials` labellings (one child seed each) and
    accepts a max deviation within 3 sigma of the largest binomial standard
    error; exact mode averages every labelling and accepts 1e-12.

    Args:
        G: Graph with degrees >= 2
        k: Free group rank
        n: Walk length, 1 <= n < girth/2
        trials: Labellings sampled in Monte Carlo mode
        seed: Root seed
        mode: "monte_carlo" or "exact"

    Raises:
        ParameterError: If n violates the girth condition or mode is unknown
    """
    _check_steps(G, n)
    decomposition = p_profile(G, n)
    expected = expected_pushforward(decomposition, k)

    if mode == "exact":
        mean = exact_pushforward_expectation(G, k, n)
        budget = EXACT_TOL
        trials = (2 * k) ** G.edge_count
    elif mode == "monte_carlo":
        if trials < 1:
            raise ParameterError(f"trials must be >= 1, got {trials}")
        total: dict[Word, float] = {}
        for child in np.random.SeedSequence(seed).spawn(trials):
            for word, p in pushforward_walk(sample_labelling(G, k, child), n).table.items():
                total[word] = total.get(word, 0.0) + p
        mean = {w: p / trials for w, p in total.items()}
        spread = max(p * (1.0 - p) for p in expected.values())
        budget = 3.0 * math.sqrt(spread / trials)
    else:
        raise ParameterError(f"unknown mode {mode!r}; use 'monte_carlo' or 'exact'")

    support = set(mean) | set(expected)
    deviation = max(abs(mean.get(w, 0.0) - expected.get(w, 0.0)) for w in support)
    logger.debug("weighted sum %s n=%d: deviation %.3e, budget %.3e", mode, n, deviation, budget)
    return WeightedSumReport(
        graph=G.name,
        k=k,
        n=n,
        mode=mode,
        trials=trials,
        max_deviation=deviation,
        budget=budget,
        identity_mass=mean.get((), 0.0),
        expected_identity_mass=expected.get((), 0.0),
        decomposition=decomposition,
    )


def concentration_experiment(
    G: Graph, k: int, n: int, trials: int = 100, seed: Optional[int] = 0
) -> ConcentrationReport:
    """
    Frequencies over sampled labellings of the events
    mu^n_{Gamma,alpha} >= mu^n_{Gamma,G} / 2 (on the support of the right side) and
    mu_{Gamma,alpha} <= mu_Gamma entrywise.
    """
    _check_steps(G, n)
    if trials < 0:
        raise ParameterError(f"trials must be >= 0, got {trials}")
    if trials == 0:
        return ConcentrationReport(k=k, n=n, trials=0, lower_event_frequency=None, upper_event_frequency=None)

    expected = expected_pushforward(p_profile(G, n), k)
    one_step = 1.0 / (2 * k)
    lower = upper = 0
    for child in np.random.SeedSequence(seed).spawn(trials):
        alpha = sample_labelling(G, k, child)
        kernel = pushforward_walk(alpha, n)
        if all(kernel[w] >= 0.5 * p - EXACT_TOL for w, p in expected.items()):
            lower += 1
        single = kernel if n == 1 else pushforward_walk(alpha, 1)
        if all(p <= one_step + EXACT_TOL for p in single.table.values()):
            upper += 1
    return ConcentrationReport(
        k=k,
        n=n,
        trials=trials,
        lower_event_frequency=lower / trials,
        upper_event_frequency=upper / trials,
    )
