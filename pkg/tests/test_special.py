import math

import networkx as nx
import pytest

from nstep_lab.domains.graph import girth_and_diameter, spectral_gap_real
from nstep_lab.domains.special import (
    generalized_triangle,
    lps_generators,
    lps_graph,
    lps_parameters,
    quaternion_solutions,
    validate_lps,
)
from nstep_lab.lib.errors import ParameterError, SizeError


@pytest.fixture(scope="module")
def lps_5_13():
    return lps_graph(5, 13)


def test_lps_parameters_legendre_symbol():
    params = lps_parameters(5, 13)
    # 5 is not a square mod 13
    assert params.legendre == -1
    assert params.bipartite
    assert params.group == "PGL"
    assert params.expected_order == 13 * (13 * 13 - 1)

    params = lps_parameters(5, 29)
    # 29 = 4 mod 5, a square, so (5|29) = 1 by reciprocity
    assert params.legendre == 1
    assert not params.bipartite
    assert params.expected_order == 29 * (29 * 29 - 1) // 2


@pytest.mark.parametrize("p,q", [(3, 13), (5, 7), (5, 5), (13, 5), (5, 21)])
def test_lps_parameters_rejects(p, q):
    with pytest.raises(ParameterError):
        lps_parameters(p, q)


def test_quaternion_solutions_give_p_plus_one_generators():
    assert len(quaternion_solutions(5)) == 6
    assert len(lps_generators(5, 13)) == 6


def test_lps_graph_certificate(lps_5_13):
    G, params = lps_5_13
    cert = validate_lps(G, params)
    assert cert.vertex_count == 2184
    assert cert.degree == 6
    assert cert.bipartite_observed
    assert cert.girth_ok
    assert cert.diameter_ok
    assert cert.spectral_ok
    assert cert.passed


def test_lps_size_guard():
    with pytest.raises(SizeError):
        lps_graph(5, 13, max_order=1000)


@pytest.mark.parametrize("r", [2, 3, 5])
def test_generalized_triangle(r):
    G, incidence = generalized_triangle(r)
    size = r * r + r + 1
    assert incidence.size == size
    assert G.vertex_count == 2 * size
    assert set(int(d) for d in G.degrees) == {r + 1}
    assert girth_and_diameter(G) == (6, 3)
    assert nx.is_bipartite(G.to_networkx())
    assert G.edge_lengths[0] == pytest.approx(math.pi / 3)
    assert spectral_gap_real(G) == pytest.approx(1 - math.sqrt(r) / (r + 1), abs=1e-9)


def test_projective_plane_joins():
    _, incidence = generalized_triangle(3)
    lines = [set(incidence.lines_through(i)) for i in range(incidence.size)]
    assert all(len(ls) == 4 for ls in lines)
    assert all(len(lines[i] & lines[j]) == 1 for i in range(13) for j in range(i + 1, 13))


def test_generalized_triangle_rejects_composite():
    with pytest.raises(ParameterError):
        generalized_triangle(4)


def test_special_commands(run_report, run_cli):
    report = run_report("generalized-triangle", "--r", "2")
    assert report["passed"]
    assert report["results"]["points"] == 7

    code, _, err = run_cli("lps", "--p", "3", "--q", "13")
    assert code == 2
    assert "not congruent to 1 mod 4" in err
