"""
S-labellings of a graph by generators of F_k, their relators, and the
push-forward of the standard walk on the graph to the free group.
"""
import itertools
import logging
from collections import deque
from typing import Iterator, Optional

import numpy as np

from .types import PushforwardKernel, SLabelling
from ..energy.words import Word, inverse, letters, multiply, reduce
from ..graph import Graph, standard_measure
from ...lib.errors import GraphError, ParameterError, SizeError

logger = logging.getLogger(__name__)

MAX_PUSHFORWARD_STEPS = 8
PUSHFORWARD_BUDGET = 5_000_000
MAX_EXACT_LABELLINGS = 100_000


def check_model_graph(G: Graph) -> None:
    """
    Raises:
        GraphError: If G has a loop, parallel edges or a vertex of degree < 2
    """
    if any(u == v for u, v in G.edges):
        raise GraphError("labelled graphs must not have self-loops")
    low = [int(u) for u in np.flatnonzero(G.degrees < 2)]
    if low:
        raise GraphError(f"vertices {low[:10]} have degree < 2")


def sample_labelling(G: Graph, k: int, seed: Optional[int] = None) -> SLabelling:
    """
    One uniform S-labelling: an independent uniform generator per edge.

    Args:
        G: Graph with every degree >= 2
        k: Free group rank
        seed: Seed or numpy SeedSequence

    Raises:
        ParameterError: If k < 1
        GraphError: If G violates the degree condition
    """
    gens = letters(k)
    check_model_graph(G)
    rng = np.random.default_rng(seed)
    labels = rng.choice(np.asarray(gens), size=G.edge_count)
    return SLabelling(graph=G, k=k, labels=tuple(int(x) for x in labels))


def all_labellings(G: Graph, k: int) -> Iterator[SLabelling]:
    """
    Every S-labelling of G, (2k)^|E| in total.

    Raises:
        SizeError: If there are more than MAX_EXACT_LABELLINGS
    """
    gens = letters(k)
    check_model_graph(G)
    total = len(gens) ** G.edge_count
    if total > MAX_EXACT_LABELLINGS:
        raise SizeError(f"{total} labellings exceed the enumeration limit {MAX_EXACT_LABELLINGS}")
    for labels in itertools.product(gens, repeat=G.edge_count):
        yield SLabelling(graph=G, k=k, labels=labels)


def relators(alpha: SLabelling, basepoint: int = 0) -> list[Word]:
    """
    Words of the fundamental cycles of a BFS spanning tree rooted at the basepoint.

    The cycle through non-tree edge (u, v) reads w(u) alpha(u, v) w(v)^-1,
    where w(x) is the word along the tree path from the basepoint to x.
    """
    G = alpha.graph
    if not 0 <= basepoint < G.vertex_count:
        raise ParameterError(f"basepoint {basepoint} outside 0..{G.vertex_count - 1}")
    path_word: dict[int, Word] = {basepoint: ()}
    tree_edges = set()
    queue = deque([basepoint])
    while queue:
        x = queue.popleft()
        for y, e in G.adjacency[x]:
            if y not in path_word:
                path_word[y] = multiply(path_word[x], (alpha.letter(x, e),))
                tree_edges.add(e)
                queue.append(y)

    words = []
    for e, (u, v) in enumerate(G.edges):
        if e in tree_edges:
            continue
        words.append(reduce(path_word[u] + (alpha.letter(u, e),) + inverse(path_word[v])))
    logger.debug("%d relators from %d non-tree edges", len(words), G.edge_count - len(tree_edges))
    return words


def pushforward_walk(alpha: SLabelling, n: int) -> PushforwardKernel:
    """
    mu^n_{Gamma,alpha}(e, .): every n-step walk from every start u, weighted
    by nu_G(u) mu_G(walk), sent to the reduced word read along it.

    Raises:
        ParameterError: If n < 1
        SizeError: If n > 8 or |V| maxdeg^n exceeds the enumeration budget
    """
    G = alpha.graph
    if n < 1:
        raise ParameterError(f"number of steps must be >= 1, got {n}")
    if n > MAX_PUSHFORWARD_STEPS:
        raise SizeError(f"push-forward limited to {MAX_PUSHFORWARD_STEPS} steps, got {n}")
    work = G.vertex_count * int(G.degrees.max()) ** n
    if work > PUSHFORWARD_BUDGET:
        raise SizeError(f"push-forward enumeration of {work} walks exceeds {PUSHFORWARD_BUDGET}")

    nu = standard_measure(G).weights
    inv_deg = 1.0 / G.degrees
    states: dict[tuple[int, Word], float] = {(u, ()): float(nu[u]) for u in range(G.vertex_count)}
    for _ in range(n):
        nxt: dict[tuple[int, Word], float] = {}
        for (x, word), p in states.items():
            q = p * inv_deg[x]
            for y, e in G.adjacency[x]:
                s = alpha.letter(x, e)
                w = word[:-1] if word and word[-1] == -s else word + (s,)
                nxt[(y, w)] = nxt.get((y, w), 0.0) + q
        states = nxt

    table: dict[Word, float] = {}
    for (_, word), p in states.items():
        table[word] = table.get(word, 0.0) + p
    return PushforwardKernel(k=alpha.k, n=n, table=table)
