import math

import numpy as np
import pytest

from nstep_lab.domains.graph import (
    complete_graph,
    count_embedded_paths,
    cycle_graph,
    dense_power,
    girth_and_diameter,
    kernel_power,
    laplacian_spectrum,
    path_graph,
    petersen_graph,
    rayleigh_quotient_real,
    spectral_gap_real,
    standard_measure,
    standard_walk,
    subdivide,
    validate_graph,
)
from nstep_lab.lib.errors import GraphError, ParameterError
from nstep_lab.lib.graph_io import parse_edge_list, resolve_graph


@pytest.mark.parametrize("graph,expected", [
    (complete_graph(4), 4 / 3),
    (petersen_graph(), 2 / 3),
])
def test_spectral_gap_known_values(graph, expected):
    assert spectral_gap_real(graph) == pytest.approx(expected, abs=1e-10)


@pytest.mark.parametrize("n", [3, 4, 5, 6, 9, 12])
def test_cycle_spectral_gap(n):
    assert spectral_gap_real(cycle_graph(n)) == pytest.approx(1 - math.cos(2 * math.pi / n), abs=1e-10)


def test_eigenfunction_attains_gap():
    G = petersen_graph()
    values, vectors = laplacian_spectrum(G)
    assert values[0] == pytest.approx(0.0, abs=1e-10)
    assert rayleigh_quotient_real(G, vectors[:, 1]) == pytest.approx(values[1], abs=1e-10)


def test_random_functions_stay_above_gap():
    G = cycle_graph(7)
    gap = spectral_gap_real(G)
    rng = np.random.default_rng(1)
    for _ in range(50):
        assert rayleigh_quotient_real(G, rng.normal(size=7)) >= gap - 1e-9


def test_rayleigh_quotient_rejects_constant():
    with pytest.raises(ParameterError):
        rayleigh_quotient_real(cycle_graph(4), np.ones(4))


def test_girth_and_diameter():
    assert girth_and_diameter(petersen_graph()) == (5, 2)
    assert girth_and_diameter(cycle_graph(7)) == (7, 3)
    girth, diameter = girth_and_diameter(path_graph(5))
    assert girth == math.inf
    assert diameter == 4


def test_standard_walk_is_reversible():
    G = validate_graph([(0, 1), (1, 2), (2, 0), (2, 3)])
    kernel, nu = standard_walk(G)
    P = kernel.to_dense()
    assert np.allclose(P.sum(axis=1), 1.0)
    flow = nu.weights[:, None] * P
    assert np.allclose(flow, flow.T)
    assert nu.weights.sum() == pytest.approx(1.0)
    assert standard_measure(G)[2] == pytest.approx(3 / 8)


def test_kernel_power_matches_matrix_power():
    G = petersen_graph()
    kernel, _ = standard_walk(G)
    P = kernel.to_dense()
    for n in (1, 2, 5, 8):
        assert np.allclose(kernel_power(kernel, n).to_dense(), np.linalg.matrix_power(P, n), atol=1e-12)
    assert np.allclose(dense_power(G, 3), np.linalg.matrix_power(P, 3), atol=1e-12)


def test_kernel_power_rejects_zero():
    kernel, _ = standard_walk(cycle_graph(3))
    with pytest.raises(ParameterError):
        kernel_power(kernel, 0)


@pytest.mark.parametrize("j", [1, 2, 3])
def test_subdivision_scales_girth(j):
    G = petersen_graph()
    H = subdivide(G, j)
    girth, diameter = girth_and_diameter(H)
    assert H.vertex_count == G.vertex_count + (j - 1) * G.edge_count
    assert girth == 5 * j
    assert 2 * j <= diameter <= j * 3
    assert sum(H.edge_lengths) == pytest.approx(sum(G.edge_lengths))


def test_embedded_paths_on_triangle():
    # three edges and three paths of length two
    assert count_embedded_paths(cycle_graph(3), 3) == 6


def test_embedded_paths_below_girth_match_walk_count():
    G = petersen_graph()
    # regular of degree 3 and girth 5: every non-backtracking walk shorter than 5 is a path
    expected = sum(10 * 3 * 2 ** (l - 1) // 2 for l in range(1, 5))
    assert count_embedded_paths(G, 5) == expected == 225


def test_validate_graph_rejects_bad_input():
    with pytest.raises(GraphError):
        validate_graph([])
    with pytest.raises(GraphError):
        validate_graph([(0, 1), (1, 0)])
    with pytest.raises(GraphError):
        validate_graph([(0, 0), (0, 1)])
    with pytest.raises(GraphError) as info:
        validate_graph([(0, 1), (2, 3)])
    assert info.value.components == [0, 2]


def test_multigraph_has_girth_two():
    G = validate_graph([(0, 1), (0, 1), (1, 2), (2, 0)], multigraph=True)
    girth, _ = girth_and_diameter(G)
    assert girth == 2


def test_parse_edge_list_with_comments_and_lengths():
    G = parse_edge_list("# square\n0 1\n1 2 2.5\n\n2 3\n3 0  # closing edge\n", name="sq")
    assert G.vertex_count == 4
    assert G.edge_lengths == (1.0, 2.5, 1.0, 1.0)
    with pytest.raises(GraphError):
        parse_edge_list("0 1 2 3\n")


@pytest.mark.parametrize("ref,vertices", [
    ("triangle", 3),
    ("square", 4),
    ("k4", 4),
    ("petersen", 10),
    ("heawood", 14),
    ("cycle:8", 8),
    ("path:3", 3),
    ("star:4", 5),
    ("gt:3", 26),
])
def test_resolve_named_graphs(ref, vertices):
    assert resolve_graph(ref).vertex_count == vertices


def test_resolve_graph_errors():
    with pytest.raises(ParameterError):
        resolve_graph("no-such-graph")
    with pytest.raises(ParameterError):
        resolve_graph("cycle:x")


def test_graph_commands(run_report, isolated):
    report = run_report("graph-info", "--graph", "petersen")
    assert report["results"]["girth"] == 5
    assert report["results"]["spectral_gap"] == pytest.approx(2 / 3)

    assert run_report("spectral-gap", "--graph", "k4", "--samples", "50")["passed"]
    assert run_report("walk-powers", "--graph", "petersen", "--n-max", "4")["passed"]
    assert run_report("subdivide", "--graph", "petersen", "--j", "3")["passed"]
    assert run_report("paths", "--graph", "petersen", "--L", "5")["passed"]

    edges = isolated / "hexagon.txt"
    edges.write_text("\n".join(f"{i} {(i + 1) % 6}" for i in range(6)) + "\n")
    report = run_report("graph-info", "--graph", edges)
    assert report["results"]["spectral_gap"] == pytest.approx(0.5)
