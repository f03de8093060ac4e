"""
The standard random walk on the free group F_k and its convolution powers.
"""
import logging

from .types import CayleyTreeEnergy, FreeWalkDistribution
from .words import Word, letters
from ...lib.errors import ParameterError, SizeError

logger = logging.getLogger(__name__)

MAX_FREE_WALK_STEPS = 12
# Support size guard; (2k-1)^n grows quickly with the rank
MAX_FREE_WALK_SUPPORT = 2_000_000


def _support_estimate(k: int, n: int) -> int:
    """Number of reduced words of length <= n."""
    if k == 1:
        return 2 * n + 1
    return 1 + sum(2 * k * (2 * k - 1) ** (j - 1) for j in range(1, n + 1))


def free_walk_distribution(k: int, n: int) -> FreeWalkDistribution:
    """
    Exact n-step distribution mu^n(e, .) of the standard walk on F_k.

    Each step multiplies on the right by one of the 2k generators with
    probability 1/2k; the state is the reduced word.

    Raises:
        ParameterError: If k < 1 or n < 1
        SizeError: If n > 12 or the support would be too large
    """
    gens = letters(k)
    if n < 1:
        raise ParameterError(f"number of steps must be >= 1, got {n}")
    if n > MAX_FREE_WALK_STEPS:
        raise SizeError(f"free walk limited to {MAX_FREE_WALK_STEPS} steps, got {n}")
    if _support_estimate(k, n) > MAX_FREE_WALK_SUPPORT:
        raise SizeError(f"support of mu^{n} on F_{k} exceeds {MAX_FREE_WALK_SUPPORT} words")

    step = 1.0 / len(gens)
    dist: dict[Word, float] = {(): 1.0}
    for _ in range(n):
        nxt: dict[Word, float] = {}
        for word, p in dist.items():
            q = p * step
            for s in gens:
                w = word[:-1] if word and word[-1] == -s else word + (s,)
                nxt[w] = nxt.get(w, 0.0) + q
        dist = nxt
    logger.debug("mu^%d on F_%d: %d words", n, k, len(dist))
    return FreeWalkDistribution(k=k, n=n, table=dist)


def word_length_distribution(m: int, n: int) -> list[float]:
    """
    Distribution of |gamma| after n steps on F_m, by the birth-death chain
    on word length (from 0 always up; otherwise down with probability 1/2m).
    """
    if m < 1 or n < 0:
        raise ParameterError(f"need m >= 1 and n >= 0, got m={m}, n={n}")
    down = 1.0 / (2 * m)
    probs = [1.0] + [0.0] * n
    for _ in range(n):
        nxt = [0.0] * (n + 1)
        for length, p in enumerate(probs):
            if p == 0.0:
                continue
            if length == 0:
                nxt[1] += p
            else:
                nxt[length - 1] += p * down
                nxt[length + 1] += p * (1.0 - down)
        probs = nxt
    return probs


def cayley_tree_energy(m: int, n: int) -> CayleyTreeEnergy:
    """
    E_{mu^n}(f) for F_m acting on its Cayley tree with f(gamma) = gamma:
    half the second moment of the word length.
    """
    probs = word_length_distribution(m, n)
    energy = 0.5 * sum(p * length ** 2 for length, p in enumerate(probs))
    return CayleyTreeEnergy(m=m, n=n, energy=energy)
