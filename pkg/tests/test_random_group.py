import json
import math

import numpy as np
import pytest

from nstep_lab.domains.graph import complete_graph, cycle_graph, petersen_graph, validate_graph
from nstep_lab.domains.random_group import (
    DEFAULT_C_ABS,
    SLabelling,
    all_labellings,
    bernoulli_bound,
    check_model_graph,
    concentration_experiment,
    fixed_point_pipeline,
    gaussian_reference,
    graph_hypotheses,
    lower_wang_bound,
    p_profile,
    pushforward_walk,
    relators,
    sample_labelling,
    spectral_transplant_check,
    weighted_sum_check,
)
from nstep_lab.domains.spaces import Euclidean, GraphCone
from nstep_lab.lib.errors import GraphError, ParameterError, SizeError


def test_bernoulli_small_cases():
    assert bernoulli_bound(4).value == pytest.approx(0.875)
    assert bernoulli_bound(9).value == pytest.approx(420 / 512)
    bound = bernoulli_bound(200)
    assert bound.c_observed == pytest.approx(0.875)
    assert bound.argmax == 4
    with pytest.raises(ParameterError):
        bernoulli_bound(1)


def test_bernoulli_approaches_gaussian_mass():
    assert gaussian_reference() == pytest.approx(0.682689, abs=1e-6)
    assert abs(bernoulli_bound(10_000).value - gaussian_reference()) < 0.02


def test_pipeline_constants():
    small = fixed_point_pipeline(1.0, c_abs=1.0)
    assert small.n == 2
    assert small.eps == pytest.approx(math.sqrt(2) - 1)
    assert small.g0 == 4
    assert small.c_grad == pytest.approx(2 * small.eps ** 2 / 4)

    flagged = fixed_point_pipeline(1 / 3)
    assert flagged.c_abs == DEFAULT_C_ABS == 64.0
    assert flagged.n == 36865
    assert flagged.g0 == 73730
    assert flagged.c_abs_source != "supplied"


def test_pipeline_girth_and_errors():
    assert fixed_point_pipeline(1.0, c_abs=1.0, girth=5).girth_ok
    assert not fixed_point_pipeline(1.0, c_abs=1.0, girth=3).girth_ok
    with pytest.raises(ParameterError):
        fixed_point_pipeline(0.0)
    with pytest.raises(ParameterError):
        fixed_point_pipeline(1.0, c_abs=-1.0)


def test_petersen_distance_profile():
    decomposition = p_profile(petersen_graph(), 2)
    assert decomposition.weights.tolist() == pytest.approx([1 / 3, 0.0, 2 / 3])
    assert decomposition.tail == pytest.approx(1 / 3)
    assert np.allclose(decomposition.per_start.sum(axis=1), 1.0)


def test_triangle_relator():
    alpha = SLabelling(graph=cycle_graph(3), k=2, labels=(1, 1, 1))
    words = relators(alpha)
    assert len(words) == 1
    assert len(words[0]) == 3
    assert alpha.inverse_consistent()


def test_relators_count_cycle_rank():
    G = petersen_graph()
    alpha = sample_labelling(G, 2, seed=4)
    assert len(relators(alpha, basepoint=3)) == G.edge_count - G.vertex_count + 1


def test_labelling_validation():
    with pytest.raises(ParameterError):
        SLabelling(graph=cycle_graph(3), k=2, labels=(1, 3, 1))
    with pytest.raises(ParameterError):
        SLabelling(graph=cycle_graph(3), k=2, labels=(1, 1))
    with pytest.raises(GraphError):
        check_model_graph(validate_graph([(0, 1), (1, 2)]))
    with pytest.raises(SizeError):
        next(all_labellings(petersen_graph(), 2))


def test_pushforward_is_symmetric_probability():
    kernel = pushforward_walk(sample_labelling(complete_graph(4), 2, seed=1), 3)
    assert sum(kernel.table.values()) == pytest.approx(1.0)
    for word, p in kernel.table.items():
        assert kernel[tuple(-x for x in reversed(word))] == pytest.approx(p)


def test_exact_weighted_sum_on_triangle():
    report = weighted_sum_check(cycle_graph(3), 2, 1, mode="exact")
    assert report.passed
    assert report.trials == 4 ** 3
    assert report.max_deviation <= 1e-12


def test_monte_carlo_weighted_sum():
    report = weighted_sum_check(cycle_graph(7), 1, 2, trials=400, seed=0)
    assert report.mode == "monte_carlo"
    assert report.passed


def test_weighted_sum_needs_short_walks():
    with pytest.raises(ParameterError):
        weighted_sum_check(cycle_graph(3), 2, 2, mode="exact")
    with pytest.raises(ParameterError):
        weighted_sum_check(cycle_graph(7), 2, 1, mode="sideways")


def test_concentration_frequencies():
    report = concentration_experiment(cycle_graph(7), 2, 2, trials=20, seed=2)
    assert 0.0 <= report.lower_event_frequency <= 1.0
    assert 0.0 <= report.upper_event_frequency <= 1.0
    assert concentration_experiment(cycle_graph(7), 2, 2, trials=0).lower_event_frequency is None


def test_lower_wang_bound_routes():
    G = petersen_graph()
    lam, route = lower_wang_bound(G, GraphCone.pod(3), "auto")
    assert route == "delta"
    assert lam == pytest.approx(2 / 3)
    lam, route = lower_wang_bound(G, GraphCone.pod(3), "distortion")
    assert lam == pytest.approx((2 / 3) * 3 / 4)


def test_transplant_in_euclidean_space():
    G = petersen_graph()
    space = Euclidean(2)
    rng = np.random.default_rng(0)
    phi = [space.sample_point(rng) for _ in range(G.vertex_count)]
    for n in range(1, 5):
        assert spectral_transplant_check(G, space, phi, n).passed


def test_graph_hypotheses():
    hyp = graph_hypotheses(petersen_graph(), g0=5, d0=3, mu0=0.5)
    assert hyp.passed
    assert hyp.path_count == 15 + 30
    assert not graph_hypotheses(petersen_graph(), g0=6).passed


def test_random_group_commands(run_report, run_cli):
    report = run_report("labelling", "--graph", "triangle", "--labels", "a", "a", "a")
    assert report["results"]["relator_lengths"] == [3]
    assert run_report("pushforward", "--graph", "k4", "--n", "2")["passed"]
    assert run_report("weighted-sum", "--graph", "triangle", "--n", "1", "--exact")["passed"]
    assert run_report("p-profile", "--graph", "petersen", "--n", "2")["passed"]
    assert run_report("bernoulli", "--n", "50")["passed"]

    target = json.dumps({"type": "pod", "legs": 3})
    assert run_report("transplant", "--graph", "petersen", "--target", target, "--samples", "10")["passed"]

    pipeline = run_report("pipeline", "--lambda0", "1", "--c-abs", "1")
    assert pipeline["results"]["n"] == 2
    assert run_report("concentration", "--graph", "cycle:7", "--n", "2", "--trials", "10")["passed"]

    code, _, _ = run_cli("hypotheses", "--graph", "petersen", "--g0", "6")
    assert code == 3
    code, _, _ = run_cli("labelling", "--graph", "triangle", "--labels", "ab", "a", "a")
    assert code == 2
