import json
import math

import numpy as np
import pytest

from nstep_lab.domains.energy import (
    affine_operator_report,
    averaging_operator,
    cayley_tree_energy,
    converse_tree_check,
    equivariant_energy,
    fixed_point_descent,
    format_word,
    free_walk_distribution,
    inequality_report,
    integer_map,
    inverse,
    map_from_dict,
    minus_delta,
    multiply,
    parse_word,
    random_affine_map,
    reduce,
    tree_fixed_set,
    tree_map,
    vertex_energy,
    word_length_distribution,
)
from nstep_lab.domains.graph import cycle_graph, spectral_gap_real
from nstep_lab.domains.spaces import Euclidean, EuclideanPoint, MetricTree
from nstep_lab.lib.errors import ParameterError, SizeError

ROTATION = {
    "type": "affine",
    "generators": [{"matrix": [[0, -1], [1, 0]], "translation": [0, 0]}],
    "basepoint": [1, 0],
}


@pytest.fixture
def star_rotation():
    tree = MetricTree.star(3)
    return tree_map(tree, [(0, 2, 3, 1)], tree.point(0, 0.5))


def test_word_arithmetic():
    assert reduce((1, 2, -2, -1, 3)) == (3,)
    assert multiply((1, 2), (-2, 1)) == (1, 1)
    assert inverse((1, -2, 3)) == (-3, 2, -1)
    assert format_word((1, -2, 1)) == "aBa"
    assert format_word(()) == "e"
    assert parse_word("aBbA") == ()
    assert parse_word("abC") == (1, 2, -3)
    with pytest.raises(ParameterError):
        parse_word("a1")


def test_free_walk_two_steps():
    dist = free_walk_distribution(2, 2)
    assert dist[()] == pytest.approx(0.25)
    assert dist[(1, 1)] == pytest.approx(1 / 16)
    assert dist[(1, -1)] == 0.0
    assert sum(p for _, p in dist.items()) == pytest.approx(1.0)


@pytest.mark.parametrize("k,n", [(1, 5), (2, 4), (3, 3)])
def test_free_walk_length_chain(k, n):
    lengths = free_walk_distribution(k, n).length_distribution()
    chain = word_length_distribution(k, n)
    for length, p in enumerate(chain):
        assert lengths.get(length, 0.0) == pytest.approx(p, abs=1e-12)


def test_free_walk_guards():
    with pytest.raises(SizeError):
        free_walk_distribution(2, 13)
    with pytest.raises(ParameterError):
        free_walk_distribution(2, 0)


@pytest.mark.parametrize("n", range(1, 7))
def test_integer_action_closed_forms(n):
    tau, alpha = 1.3, -0.4
    assert equivariant_energy(integer_map(1, tau, alpha), n) == pytest.approx(n * tau ** 2 / 2)
    expected = 2 * (alpha - tau / 2) ** 2 if n % 2 else 0.0
    assert equivariant_energy(integer_map(-1, tau, alpha), n) == pytest.approx(expected, abs=1e-12)


def test_integer_action_rejects_scaling():
    with pytest.raises(ParameterError):
        integer_map(2, 1.0, 0.0)


@pytest.mark.parametrize("m", [2, 3])
def test_cayley_tree_energy(m):
    first = cayley_tree_energy(m, 1)
    assert first.energy == pytest.approx(0.5)
    for n in range(1, 9):
        assert cayley_tree_energy(m, n).passed


def test_inequalities_for_random_affine_actions():
    for seed in range(200):
        k, d = 1 + seed % 3, 1 + seed % 4
        report = inequality_report(random_affine_map(k, d, seed=seed), 5)
        assert report.tangent_supported
        assert report.passed, (seed, report.checks)
        assert report.rows[0].ratio == pytest.approx(1.0)


def test_translation_of_the_line_attains_the_n_step_inequality():
    tau = 1.3
    report = inequality_report(integer_map(1, tau, 0.3), 6)
    assert report.energy_1 == pytest.approx(tau ** 2 / 2)
    assert report.delta_1_norm == pytest.approx(0.0, abs=1e-12)
    for row in report.rows:
        assert row.energy == pytest.approx(row.n * report.energy_1)
        assert row.slack_a == pytest.approx(0.0, abs=1e-12)


def test_harmonic_reflection_has_zero_gradient():
    f = integer_map(-1, 1.0, 0.5)
    assert minus_delta(f).length == pytest.approx(0.0, abs=1e-15)
    assert equivariant_energy(f, 1) == pytest.approx(0.0, abs=1e-15)


def test_inequalities_for_tree_action(star_rotation):
    report = inequality_report(star_rotation, 4)
    assert report.passed, report.checks
    assert report.delta_1_norm is not None


def test_gradient_is_bounded_by_energy():
    f = random_affine_map(2, 2, seed=5)
    assert minus_delta(f).length ** 2 <= 2 * equivariant_energy(f, 1) + 1e-9


def test_affine_operator_identities():
    f = random_affine_map(2, 3, seed=11)
    report = affine_operator_report(f, 5)
    assert report.passed, report.checks
    assert not report.harmonic
    M = averaging_operator(f)
    assert np.allclose(M, M.T, atol=1e-10)


def test_affine_operator_harmonic_map():
    f = map_from_dict(dict(ROTATION, basepoint=[0, 0]))
    report = affine_operator_report(f, 4)
    assert report.harmonic
    assert report.passed
    assert all(abs(row["energy_gap"]) <= 1e-12 for row in report.rows)


def test_affine_operator_needs_euclidean_target(star_rotation):
    with pytest.raises(ParameterError):
        affine_operator_report(star_rotation, 2)


def test_descent_reaches_fixed_point():
    result = fixed_point_descent(map_from_dict(ROTATION), step=0.5, tol=1e-9, n=4, eps=0.5)
    assert result.reason == "energy"
    assert result.fixed_point_found
    assert result.trace[-1].energy < 1e-9
    assert result.final.space.distance(result.final.basepoint, EuclideanPoint.of([0, 0])) < 1e-4
    assert result.gradient_constant == pytest.approx(2 * 0.25 / (16 * 9))


def test_descent_finds_the_center_of_a_reflection():
    tau = 1.3
    result = fixed_point_descent(integer_map(-1, tau, -0.4), step=0.5, tol=1e-9)
    assert result.reason == "energy"
    assert result.final.basepoint.coords[0] == pytest.approx(tau / 2, abs=1e-9)
    assert len(result.trace) <= 3


def test_descent_stops_at_a_translation():
    tau = 1.3
    result = fixed_point_descent(integer_map(1, tau, 0.3), step=0.5, tol=1e-9)
    assert result.reason == "stationary"
    assert not result.fixed_point_found
    assert result.trace[-1].energy == pytest.approx(tau ** 2 / 2)


def test_descent_on_a_tree_lands_in_the_fixed_set():
    f = map_from_dict({
        "type": "tree",
        "space": {"type": "tree", "legs": 3},
        "generators": [[0, 2, 3, 1], [0, 1, 3, 2]],
        "basepoint": {"edge": 0, "offset": 0.25},
    })
    assert f.rank == 2
    vertices, midpoints = tree_fixed_set(f)
    assert (vertices, midpoints) == ([0], [])
    result = fixed_point_descent(f, step=0.5, tol=1e-9)
    assert result.reason == "energy"
    tree = f.space
    assert tree.distance(result.final.basepoint, tree.vertex(vertices[0])) < 1e-4


def test_descent_rejects_bad_step():
    with pytest.raises(ParameterError):
        fixed_point_descent(map_from_dict(ROTATION), step=0.0)


def test_converse_bound_on_tree(star_rotation):
    vertices, midpoints = tree_fixed_set(star_rotation)
    assert vertices == [0]
    assert midpoints == []
    report = converse_tree_check(star_rotation, 6)
    assert report.constant == 2.0
    assert report.passed
    assert not report.basepoint_fixed


def test_vertex_energy_matches_real_rayleigh_quotient():
    G = cycle_graph(6)
    line = Euclidean(1)
    phi = [EuclideanPoint((math.cos(2 * math.pi * u / 6),)) for u in range(6)]
    _, quotient = vertex_energy(G, line, phi)
    assert quotient == pytest.approx(spectral_gap_real(G))


def test_map_from_dict_rejects_unknown():
    with pytest.raises(ParameterError):
        map_from_dict({"type": "hyperbolic"})
    with pytest.raises(ParameterError):
        map_from_dict({"type": "integer", "tau": 1.0})


def test_energy_commands(run_report):
    assert run_report("free-walk", "--k", "2", "--n", "5")["passed"]
    assert run_report("integer-example", "--samples", "10")["passed"]
    assert run_report("inequalities", "--samples", "200", "--n-max", "4")["passed"]
    assert run_report("inequalities", "--target", "tree", "--samples", "3", "--n-max", "3")["passed"]
    assert run_report("affine", "--samples", "3", "--n-max", "4")["passed"]
    assert run_report("cayley-energy", "--m-max", "3", "--n-max", "5")["passed"]

    report = run_report("descent", "--action", json.dumps(ROTATION), "--n", "3", "--eps", "0.5")
    assert report["passed"]
    assert report["results"]["descent"]["reason"] == "energy"

    action = json.dumps({
        "type": "tree",
        "space": {"type": "tree", "legs": 3},
        "generators": [[0, 2, 3, 1], [0, 1, 3, 2]],
        "basepoint": {"edge": 0, "offset": 0.25},
    })
    assert run_report("converse", "--action", action, "--n-max", "4")["passed"]
