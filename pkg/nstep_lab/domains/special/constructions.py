"""
Constructions of LPS expanders X^{p,q} and generalized triangles.
"""
import itertools
import logging
import math
from collections import deque

import networkx as nx
from sympy import isprime, legendre_symbol, sqrt_mod

from .types import LpsCertificate, LpsParameters, ProjectivePlaneIncidence
from ..graph import Graph, girth_and_diameter, spectral_gap_real
from ...lib.errors import ParameterError, SizeError

logger = logging.getLogger(__name__)

Matrix = tuple[int, int, int, int]

# Refuse to enumerate groups larger than this
MAX_LPS_ORDER = 50_000


def lps_parameters(p: int, q: int) -> LpsParameters:
    """
    Validate (p, q) and compute the Legendre symbol (p|q).

    Raises:
        ParameterError: If p, q are not distinct primes = 1 mod 4 with q > 2 sqrt(p)
    """
    for name, x in (("p", p), ("q", q)):
        if not isprime(x):
            raise ParameterError(f"{name} = {x} is not prime")
        if x % 4 != 1:
            raise ParameterError(f"{name} = {x} is not congruent to 1 mod 4")
    if p == q:
        raise ParameterError(f"p and q must differ, got p = q = {p}")
    if q <= 2 * math.sqrt(p):
        raise ParameterError(f"q = {q} must exceed 2*sqrt(p) = {2 * math.sqrt(p):.3f}")

    legendre = int(legendre_symbol(p, q))
    return LpsParameters(p=p, q=q, legendre=legendre, bipartite=(legendre == -1))


def _normalize(m: Matrix, q: int) -> Matrix:
    """Scale so the first nonzero entry is 1 (canonical PGL representative)."""
    for x in m:
        if x % q:
            inv = pow(x, -1, q)
            return tuple((y * inv) % q for y in m)
    raise ParameterError("zero matrix is not invertible")


def _multiply(a: Matrix, b: Matrix, q: int) -> Matrix:
    return (
        (a[0] * b[0] + a[1] * b[2]) % q,
        (a[0] * b[1] + a[1] * b[3]) % q,
        (a[2] * b[0] + a[3] * b[2]) % q,
        (a[2] * b[1] + a[3] * b[3]) % q,
    )


def quaternion_solutions(p: int) -> list[tuple[int, int, int, int]]:
    """Integer solutions of a0^2+a1^2+a2^2+a3^2 = p with a0 odd positive and a1..a3 even."""
    bound = math.isqrt(p)
    evens = [x for x in range(-bound, bound + 1) if x % 2 == 0]
    solutions = []
    for a0 in range(1, bound + 1, 2):
        for a1, a2, a3 in itertools.product(evens, repeat=3):
            if a0 * a0 + a1 * a1 + a2 * a2 + a3 * a3 == p:
                solutions.append((a0, a1, a2, a3))
    return solutions


def lps_generators(p: int, q: int) -> list[Matrix]:
    """
    The p+1 normalized LPS generators in PGL(2, F_q).

    Raises:
        ParameterError: If the generator set is degenerate
    """
    params = lps_parameters(p, q)
    i = int(sqrt_mod(q - 1, q))
    solutions = quaternion_solutions(p)
    if len(solutions) != p + 1:
        raise ParameterError(f"expected {p + 1} quaternion solutions, found {len(solutions)}")

    gens = []
    for a0, a1, a2, a3 in solutions:
        m = ((a0 + i * a1) % q, (a2 + i * a3) % q, (-a2 + i * a3) % q, (a0 - i * a1) % q)
        gens.append(_normalize(m, params.q))

    if len(set(gens)) != p + 1:
        raise ParameterError(f"generators collapse modulo {q}; q is too small")
    identity = (1, 0, 0, 1)
    gen_set = set(gens)
    for g in gens:
        if not any(_normalize(_multiply(g, h, q), q) == identity for h in gen_set):
            raise ParameterError("generator set is not closed under inverses")
    return gens


def lps_graph(p: int, q: int, max_order: int = MAX_LPS_ORDER) -> tuple[Graph, LpsParameters]:
    """
    Cayley graph X^{p,q} of PSL(2,F_q) or PGL(2,F_q) with the LPS generators.

    The vertex set is the component of the identity, found by BFS.

    Raises:
        ParameterError: For invalid (p, q)
        SizeError: If the group order exceeds max_order
    """
    params = lps_parameters(p, q)
    if params.expected_order > max_order:
        raise SizeError(f"X^{{{p},{q}}} has {params.expected_order} vertices, limit {max_order}")

    gens = lps_generators(p, q)
    identity = (1, 0, 0, 1)
    index = {identity: 0}
    queue = deque([identity])
    edges = set()
    while queue:
        x = queue.popleft()
        ix = index[x]
        for g in gens:
            y = _normalize(_multiply(x, g, q), q)
            if y not in index:
                index[y] = len(index)
                queue.append(y)
            iy = index[y]
            if ix == iy:
                raise ParameterError(f"X^{{{p},{q}}} has a loop; generators are degenerate")
            edges.add((min(ix, iy), max(ix, iy)))

    logger.debug("X^{%d,%d}: %d vertices, %d edges", p, q, len(index), len(edges))
    graph = Graph(
        vertex_count=len(index),
        edges=tuple(sorted(edges)),
        name=f"lps:{p}:{q}",
    )
    return graph, params


def validate_lps(G: Graph, params: LpsParameters) -> LpsCertificate:
    """
    Check girth, diameter and spectral gap of X^{p,q} against the LPS bounds.

    A failed bound is reported in the certificate, never raised.
    """
    p, q = params.p, params.q
    n = G.vertex_count
    girth, diameter = girth_and_diameter(G)

    if params.bipartite:
        girth_bound = 4 * math.log(q, p) - math.log(4, p)
    else:
        girth_bound = 2 * math.log(q, p)
    diameter_bound = 2 * math.log(n, p) + 2 * math.log(2, p) + 1

    degrees = set(int(d) for d in G.degrees)
    cert = LpsCertificate(
        params=params,
        vertex_count=n,
        degree=degrees.pop() if len(degrees) == 1 else -1,
        girth=girth,
        diameter=diameter,
        girth_bound=girth_bound,
        diameter_bound=diameter_bound,
        bipartite_observed=nx.is_bipartite(G.to_networkx()),
        ramanujan_bound=1 - 2 * math.sqrt(p) / (p + 1),
    )
    try:
        cert.spectral_gap = spectral_gap_real(G)
    except SizeError as e:
        logger.warning("skipping spectral gap for X^{%d,%d}: %s", p, q, e)
        cert.notes.append(f"spectral gap skipped: {e}")
    cert.notes.append("Ramanujan bound on lambda_1 is checked beyond the stated girth/diameter bounds")
    return cert


def generalized_triangle(r: int) -> tuple[Graph, ProjectivePlaneIncidence]:
    """
    Incidence graph of PG(2, r), edges of length pi/3.

    Raises:
        ParameterError: If r is not prime
    """
    if not isprime(r):
        raise ParameterError(f"r = {r} is not prime")

    triples = [(0, 0, 1)]
    triples += [(0, 1, z) for z in range(r)]
    triples += [(1, y, z) for y in range(r) for z in range(r)]
    incidence = ProjectivePlaneIncidence(r=r, points=tuple(triples), lines=tuple(triples))

    size = incidence.size
    edges = [
        (i, size + j)
        for i in range(size)
        for j in range(size)
        if incidence.incident(i, j)
    ]
    graph = Graph(
        vertex_count=2 * size,
        edges=tuple(edges),
        edge_lengths=(math.pi / 3,) * len(edges),
        name=f"gt:{r}",
    )
    return graph, incidence
