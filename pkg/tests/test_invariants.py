import json
import math

import pytest

from nstep_lab.domains.graph import complete_graph, cycle_graph
from nstep_lab.domains.invariants import (
    BuildingSpec,
    GramSpec,
    building_bounds,
    certificate,
    chamber_distance,
    d_min,
    delta_from_distortion,
    delta_mu0,
    embedding_report,
    formula_eigenvalues,
    gram_eigenvalues,
    map_distortion,
    optimal_ab,
    pod_distortion,
    pod_embedding,
    pod_tip_mean,
    product_radial_distortion,
    tangent_cone_bounds,
    wang_estimate,
)
from nstep_lab.domains.spaces import Euclidean, GraphCone, space_from_dict
from nstep_lab.lib.errors import ParameterError, SizeError


def test_delta_mu0_closed_form():
    result = delta_mu0(2)
    assert result["value"] == pytest.approx((5 - 3 * math.sqrt(2)) / 14, abs=1e-10)
    assert result["method"] == "embedding"


@pytest.mark.parametrize("r", [2, 3, 5])
def test_optimal_distortion_is_below_two(r):
    opt = optimal_ab(r)
    assert 1.0 < opt.distortion < 2.0
    assert opt.min_eigenvalue >= -1e-9
    assert map_distortion(opt.spec) == pytest.approx(opt.distortion, rel=1e-6)


def test_optimal_ab_rejects_composite():
    with pytest.raises(ParameterError):
        optimal_ab(4)


@pytest.mark.parametrize("a,b", [(0.2, 0.1), (0.5, -0.3), (0.0, 0.0)])
def test_gram_spectrum_matches_closed_form(a, b):
    spec = GramSpec(2, a, b)
    spectrum = gram_eigenvalues(spec)
    assert spectrum.max_defect <= 1e-9
    assert sum(m for _, m in formula_eigenvalues(spec)) == spec.size


@pytest.mark.parametrize("r", [1, 2, 3, 6])
def test_pod_embedding(r):
    report = embedding_report(pod_embedding(r), expected_distortion=pod_distortion(r))
    assert report.passed, report.checks
    assert pod_tip_mean(r) == pytest.approx(0.0, abs=1e-12)


def test_pod_distortion_values():
    assert pod_distortion(2) == pytest.approx(math.sqrt(4 / 3))
    assert pod_distortion(3) == pytest.approx(math.sqrt(3 / 2))


def test_chamber_distances():
    assert d_min(3) == pytest.approx(0.91940, abs=1e-5)
    assert d_min(4) == pytest.approx(2 / math.sqrt(6))
    n = 5
    smallest = min(chamber_distance(n, i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1))
    assert smallest == pytest.approx(d_min(n))


def test_building_bounds():
    bounds = building_bounds(BuildingSpec(4))
    assert bounds.distortion_bound == pytest.approx(math.sqrt(6))
    assert bounds.delta_bound == pytest.approx(5 / 6)
    assert bounds.simplex is None

    rank_two = building_bounds(BuildingSpec(2, 3))
    assert rank_two.delta_bound == pytest.approx(0.75)
    assert rank_two.simplex.passed

    with pytest.raises(SizeError):
        building_bounds(BuildingSpec(2, 7))
    with pytest.raises(ParameterError):
        BuildingSpec(2, 4)


def test_tangent_cone_bounds_use_the_worst_factor():
    rows = tangent_cone_bounds(3)
    flat = next(row for row in rows if row["factors"] == [])
    assert flat["distortion_bound"] == 1.0
    assert max(row["distortion_bound"] for row in rows) == pytest.approx(2 / d_min(3))


def test_distortion_helpers():
    assert delta_from_distortion(1.0) == 0.0
    assert delta_from_distortion(2.0) == pytest.approx(0.75)
    with pytest.raises(ParameterError):
        delta_from_distortion(0.5)
    assert product_radial_distortion([1.2, 1.5, 1.0]) == 1.5


def test_certificates():
    assert certificate(Euclidean(3)).distortion == 1.0
    pod = certificate(GraphCone.pod(4))
    assert pod.distortion == pytest.approx(pod_distortion(3))
    assert pod.delta == 0.0
    tree = certificate(space_from_dict({"type": "tree", "legs": 3}))
    assert tree.delta == 0.0 and tree.distortion is None
    cone = certificate(space_from_dict({"type": "cone", "generalized_triangle": 2}))
    assert cone.extra["delta_building_bound"] == 0.75
    assert cone.distortion == pytest.approx(optimal_ab(2).distortion)
    assert cone.delta == pytest.approx(1 - 1 / cone.distortion ** 2)
    assert cone.delta <= 0.75


def test_wang_on_the_line_recovers_the_gap():
    estimate = wang_estimate(cycle_graph(6), Euclidean(1), restarts=1, seed=3)
    assert estimate.lambda_real == pytest.approx(0.5)
    assert estimate.value == pytest.approx(0.5, abs=1e-6)
    assert estimate.passed


def test_wang_in_a_tripod():
    estimate = wang_estimate(complete_graph(4), GraphCone.pod(3), restarts=2, seed=0)
    assert 1.0 - 1e-6 <= estimate.value <= 4 / 3 + 1e-6
    assert estimate.checks["distortion_lower_bound"]


def test_wang_size_guard():
    with pytest.raises(ParameterError):
        wang_estimate(cycle_graph(201), Euclidean(1))


def test_invariants_commands(run_report):
    assert run_report("gram", "--r", "2", "--samples", "5")["passed"]
    assert run_report("optimal-ab", "--r", "3")["passed"]
    report = run_report("delta-mu0", "--r", "2")
    assert report["results"]["value"] == pytest.approx((5 - 3 * math.sqrt(2)) / 14, abs=1e-10)
    assert run_report("pod", "--r-max", "5")["passed"]
    assert run_report("building-bounds", "--n-max", "4")["passed"]
    target = json.dumps({"type": "pod", "legs": 3})
    assert run_report("wang", "--graph", "k4", "--target", target, "--restarts", "1")["passed"]
    assert run_report("distortion-variance", "--samples", "20")["passed"]
    assert run_report("distortion-variance", "--target", "gt", "--samples", "10")["passed"]
