import json
import math

import numpy as np
import pytest

from nstep_lab.domains.special import generalized_triangle
from nstep_lab.domains.spaces import (
    ConePoint,
    Euclidean,
    EuclideanPoint,
    FiniteMeasure,
    GraphCone,
    Locus,
    MetricGraph,
    MetricTree,
    barycenter,
    barycenter_oracle,
    frechet_objective,
    inductive_mean,
    measure_from_dict,
    point_from_dict,
    space_from_dict,
    tangent_inner_product_check,
    variance_report,
)
from nstep_lab.domains.spaces.barycenter import DEFAULT_MAX_PASSES, DEFAULT_TOL
from nstep_lab.lib.errors import ParameterError, SpaceMismatchError, UnsupportedError


@pytest.fixture
def rng():
    return np.random.default_rng(7)


@pytest.fixture
def tripod():
    return GraphCone.pod(3)


def test_euclidean_barycenter_is_weighted_mean():
    space = Euclidean(2)
    m = FiniteMeasure((EuclideanPoint.of([0, 0]), EuclideanPoint.of([3, 0]), EuclideanPoint.of([0, 3])), [0.5, 0.25, 0.25])
    assert barycenter(space, m).coords == pytest.approx((0.75, 0.75))


def test_pod_barycenter_closed_form(tripod):
    m = FiniteMeasure((tripod.leg(0, 1.0), tripod.leg(1, 1.0), tripod.leg(2, 1.0)), [0.6, 0.2, 0.2])
    b = barycenter(tripod, m)
    assert b.direction == Locus(vertex=0)
    assert b.radius == pytest.approx(0.2)

    balanced = FiniteMeasure.uniform([tripod.leg(i, 1.0) for i in range(3)])
    assert barycenter(tripod, balanced).is_apex


def test_tree_barycenter_on_path():
    path = space_from_dict({"type": "tree", "graph": "path:3"})
    m = FiniteMeasure.uniform([Locus(vertex=0), Locus(vertex=2)])
    b = barycenter(path, m)
    assert path.distance(b, Locus(vertex=1)) == pytest.approx(0.0, abs=1e-12)


def _star_and_pod_measures():
    for legs in (3, 4, 5):
        for seed in range(3):
            size = 2 + seed + legs % 2
            yield pytest.param(MetricTree.star(legs), 100 * legs + seed, size, id=f"tree{legs}-{seed}")
            yield pytest.param(GraphCone.pod(legs), 100 * legs + seed, size, id=f"pod{legs}-{seed}")


@pytest.mark.parametrize("space,seed,size", list(_star_and_pod_measures()))
def test_oracle_and_inductive_mean_agree_with_barycenter(space, seed, size):
    h = 1e-3
    m = space.sample_measure(np.random.default_rng(seed), size)
    assert len(m) <= 6
    b = barycenter(space, m)
    oracle = barycenter_oracle(space, m, h)
    assert space.distance(b, oracle) <= 10 * h
    assert frechet_objective(space, m, oracle) >= frechet_objective(space, m, b) - 1e-12

    inductive = barycenter(space, m, method="inductive")
    assert space.distance(inductive, oracle) <= 10 * h
    assert frechet_objective(space, m, inductive) >= frechet_objective(space, m, b) - 1e-12


@pytest.mark.parametrize("legs", [3, 4, 5])
@pytest.mark.parametrize("kind", ["tree", "pod"])
def test_inductive_mean_meets_its_stop_rule(kind, legs):
    space = MetricTree.star(legs) if kind == "tree" else GraphCone.pod(legs)
    rng = np.random.default_rng(legs)
    for _ in range(10):
        m = space.sample_measure(rng, 6)
        mean, decrease, used = inductive_mean(space, m)
        assert used < DEFAULT_MAX_PASSES
        assert decrease <= DEFAULT_TOL
        assert space.distance(mean, barycenter(space, m)) <= 1e-2


def test_inductive_mean_is_exact_after_full_passes_in_euclidean_space(rng):
    space = Euclidean(2)
    m = space.sample_measure(rng, 5)
    mean, _, _ = inductive_mean(space, m, passes=3, patience=1)
    assert space.distance(mean, barycenter(space, m)) == pytest.approx(0.0, abs=1e-12)


def test_inductive_mean_arguments(tripod):
    m = FiniteMeasure.uniform([tripod.leg(0, 1.0), tripod.leg(1, 1.0)])
    with pytest.raises(ParameterError):
        inductive_mean(tripod, m, passes=0)
    with pytest.raises(ParameterError):
        inductive_mean(tripod, m, patience=0)
    with pytest.raises(ParameterError):
        barycenter_oracle(tripod, m, 0.0)
    # hitting the pass limit returns the best mean found so far
    mean, _, used = inductive_mean(tripod, m, passes=3)
    assert used == 3
    assert tripod.distance(mean, tripod.apex()) <= 1.0


SPACES = [
    {"type": "euclidean", "dimension": 3},
    {"type": "tree", "graph": "star:4"},
    {"type": "pod", "legs": 4},
    {"type": "cone", "generalized_triangle": 2},
]


@pytest.mark.parametrize("descriptor", SPACES)
def test_distance_is_a_metric(descriptor, rng):
    space = space_from_dict(descriptor)
    for _ in range(1000):
        x, y, z = (space.sample_point(rng) for _ in range(3))
        assert space.distance(x, x) == pytest.approx(0.0, abs=1e-10)
        assert abs(space.distance(x, y) - space.distance(y, x)) <= 1e-10
        assert space.distance(x, z) <= space.distance(x, y) + space.distance(y, z) + 1e-10


@pytest.mark.parametrize("descriptor", SPACES)
def test_cat0_comparison_at_midpoints(descriptor, rng):
    space = space_from_dict(descriptor)
    for _ in range(1000):
        x, y, z = (space.sample_point(rng) for _ in range(3))
        mid = space.geodesic_point(x, y, 0.5)
        assert space.distance(x, mid) == pytest.approx(0.5 * space.distance(x, y), abs=1e-9)
        lhs = space.distance(z, mid) ** 2
        rhs = 0.5 * space.distance(z, x) ** 2 + 0.5 * space.distance(z, y) ** 2 - 0.25 * space.distance(x, y) ** 2
        assert lhs <= rhs + 1e-9


@pytest.mark.parametrize("descriptor", SPACES)
def test_log_map_does_not_increase_distances(descriptor, rng):
    space = space_from_dict(descriptor)
    for _ in range(300):
        base = space.apex() if isinstance(space, GraphCone) else space.sample_point(rng)
        x, y = space.sample_point(rng), space.sample_point(rng)
        u, v = space.log_map(base, x), space.log_map(base, y)
        assert u.length == pytest.approx(space.distance(base, x), abs=1e-10)
        assert u.distance(v) <= space.distance(x, y) + 1e-10


def test_cone_geodesic_bends_toward_the_apex():
    directions = MetricGraph(2, ((0, 1),), (math.pi / 3,))
    cone = GraphCone(directions)
    x, y = cone.leg(0, 1.0), cone.leg(1, 1.0)
    assert cone.distance(x, y) == pytest.approx(1.0)
    mid = cone.geodesic_point(x, y, 0.5)
    assert mid.radius == pytest.approx(math.cos(math.pi / 6))
    assert mid.direction.edge == 0
    assert mid.direction.offset == pytest.approx(math.pi / 6)


@pytest.mark.parametrize("descriptor", [
    {"type": "euclidean", "dimension": 3},
    {"type": "tree", "graph": "star:3"},
    {"type": "pod", "legs": 3},
    {"type": "cone", "generalized_triangle": 2},
])
def test_variance_inequalities(descriptor, rng):
    space = space_from_dict(descriptor)
    for _ in range(20):
        m = space.sample_measure(rng, 4)
        report = variance_report(space, m, space.sample_point(rng))
        assert report.passed, report.to_dict()


def test_first_variance_inequality_is_equality_in_euclidean_space(rng):
    space = Euclidean(3)
    m = space.sample_measure(rng, 5)
    report = variance_report(space, m, space.sample_point(rng))
    assert report.slack1 == pytest.approx(0.0, abs=1e-10)


@pytest.mark.parametrize("descriptor", [
    {"type": "euclidean", "dimension": 2},
    {"type": "pod", "legs": 3},
    {"type": "cone", "generalized_triangle": 2},
])
def test_tangent_inner_product(descriptor, rng):
    space = space_from_dict(descriptor)
    for _ in range(20):
        m = space.sample_measure(rng, 4)
        report = tangent_inner_product_check(space, m, space.sample_point(rng))
        assert report.slack >= -1e-8
        assert report.equality_defect == pytest.approx(0.0, abs=1e-8)


def test_tangent_inner_product_needs_a_cone():
    tree = MetricTree.star(3)
    m = FiniteMeasure.uniform([tree.vertex(1), tree.vertex(2)])
    with pytest.raises(UnsupportedError):
        tangent_inner_product_check(tree, m, tree.vertex(0))


def test_pod_distances_pass_through_apex(tripod):
    assert tripod.distance(tripod.leg(0, 1.0), tripod.leg(1, 2.0)) == pytest.approx(3.0)
    mid = tripod.geodesic_point(tripod.leg(0, 1.0), tripod.leg(1, 1.0), 0.5)
    assert mid.is_apex


def test_cone_over_generalized_triangle_angles():
    cone = space_from_dict({"type": "cone", "generalized_triangle": 2})
    _, incidence = generalized_triangle(2)
    point = cone.leg(0, 1.0)
    line = cone.leg(incidence.size + incidence.lines_through(0)[0], 1.0)
    far = next(j for j in range(incidence.size) if not incidence.incident(0, j))
    assert cone.angle(point, line) == pytest.approx(math.pi / 3)
    assert cone.angle(point, cone.leg(1, 1.0)) == pytest.approx(2 * math.pi / 3)
    # a point and a line missing it are opposite
    assert cone.distance(point, cone.leg(incidence.size + far, 1.0)) == pytest.approx(2.0)


def test_geodesic_parameter_range(tripod):
    with pytest.raises(ParameterError):
        tripod.geodesic_point(tripod.apex(), tripod.leg(0, 1.0), 1.5)


def test_log_map_support(tripod):
    tree = MetricTree.star(3)
    v = tree.log_map(tree.vertex(0), tree.vertex(2))
    assert v.length == pytest.approx(1.0)
    assert isinstance(v.space, GraphCone) and v.space.is_pod
    with pytest.raises(UnsupportedError):
        tripod.log_map(tripod.leg(0, 1.0), tripod.leg(1, 1.0))


def test_mixed_spaces_are_rejected(tripod):
    with pytest.raises(SpaceMismatchError):
        tripod.distance(tripod.apex(), EuclideanPoint.of([0.0]))


def test_measure_validation():
    with pytest.raises(ParameterError):
        FiniteMeasure((EuclideanPoint.of([0]),), [0.5])
    with pytest.raises(ParameterError):
        FiniteMeasure((), [])
    with pytest.raises(ParameterError):
        ConePoint(None, 1.0)


def test_descriptors():
    space, m = measure_from_dict({
        "space": {"type": "pod", "legs": 3},
        "support": [{"leg": 0, "radius": 1.0}, {"apex": True}],
        "weights": [3, 1],
        "normalize": True,
    })
    assert m.weights.tolist() == pytest.approx([0.75, 0.25])
    assert m.support[1].is_apex
    assert point_from_dict(Euclidean(2), [1, 2]).coords == (1.0, 2.0)
    with pytest.raises(ParameterError):
        space_from_dict({"type": "hyperbolic"})
    with pytest.raises(ParameterError):
        space_from_dict({"type": "euclidean"})


def test_spaces_commands(run_report, run_cli):
    measure = json.dumps({
        "space": {"type": "pod", "legs": 3},
        "support": [{"leg": 0, "radius": 1.0}, {"leg": 1, "radius": 1.0}, {"leg": 2, "radius": 1.0}],
        "weights": [0.6, 0.2, 0.2],
    })
    report = run_report("barycenter", "--measure", measure)
    assert report["passed"]
    assert report["results"]["barycenter"]["radius"] == pytest.approx(0.2)

    space = json.dumps({"type": "tree", "legs": 4})
    assert run_report("variance", "--space", space, "--samples", "30")["passed"]
    assert run_report("tangent-inner", "--space", json.dumps({"type": "pod", "legs": 5}), "--samples", "30")["passed"]

    code, _, _ = run_cli("variance", "--samples", "3")
    assert code == 2

    tree_measure = json.dumps({
        "space": {"type": "tree", "legs": 4},
        "support": [{"edge": 0, "offset": 0.7}, {"edge": 1, "offset": 0.3}, {"vertex": 3}, {"edge": 2, "offset": 0.9}],
        "weights": [0.4, 0.3, 0.2, 0.1],
    })
    report = run_report("barycenter", "--measure", tree_measure, "--method", "inductive", "--oracle-h", "0.001")
    assert report["checks"]["oracle_within_10h"]
    assert report["results"]["oracle_distance"] <= 0.01
