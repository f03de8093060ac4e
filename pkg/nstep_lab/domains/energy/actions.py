"""
Ready-made actions of free groups and their JSON descriptors.

Action descriptors:
    {"type": "integer", "u": 1, "tau": 1.0, "alpha": 0.0}
    {"type": "affine", "generators": [{"matrix": [[...]], "translation": [...]}, ...],
     "basepoint": [...]}
    {"type": "random_affine", "k": 2, "dimension": 3, "seed": 0}
    {"type": "tree", "space": <tree space descriptor>,
     "generators": [[vertex permutation], ...], "basepoint": <tree point>}
"""
from typing import Optional

import numpy as np
from scipy.stats import ortho_group

from .types import EquivariantMap, EuclideanIsometry, GroupAction, TreeAutomorphism, isometry_from_dict
from ..spaces import Euclidean, EuclideanPoint, MetricTree, point_from_dict, space_from_dict
from ...lib.errors import ParameterError


def integer_action(u: int, tau: float) -> GroupAction:
    """Z = F_1 acting on R by x -> u x + tau, u = +-1."""
    if u not in (1, -1):
        raise ParameterError(f"u must be +1 or -1, got {u}")
    return GroupAction(Euclidean(1), (EuclideanIsometry(np.array([[float(u)]]), np.array([float(tau)])),))


def integer_map(u: int, tau: float, alpha: float) -> EquivariantMap:
    """The equivariant map with f(0) = alpha."""
    return EquivariantMap(integer_action(u, tau), EuclideanPoint((float(alpha),)))


def random_orthogonal(d: int, rng: np.random.Generator) -> np.ndarray:
    if d == 1:
        return np.array([[rng.choice([-1.0, 1.0])]])
    return ortho_group.rvs(dim=d, random_state=rng)


def random_affine_map(k: int, d: int, seed: Optional[int] = 0, scale: float = 1.0) -> EquivariantMap:
    """F_k acting on R^d by random orthogonal parts and Gaussian translations."""
    if k < 1 or d < 1:
        raise ParameterError(f"need k >= 1 and d >= 1, got k={k}, d={d}")
    rng = np.random.default_rng(seed)
    gens = tuple(
        EuclideanIsometry(random_orthogonal(d, rng), scale * rng.normal(size=d)) for _ in range(k)
    )
    basepoint = EuclideanPoint.of(scale * rng.normal(size=d))
    return EquivariantMap(GroupAction(Euclidean(d), gens, seed=seed or 0), basepoint)


def tree_map(tree: MetricTree, perms, basepoint) -> EquivariantMap:
    """F_k acting on a finite tree by the given vertex permutations."""
    gens = tuple(TreeAutomorphism(tree, tuple(p)) for p in perms)
    return EquivariantMap(GroupAction(tree, gens), basepoint)


def map_from_dict(data: dict) -> EquivariantMap:
    """
    Parse an action descriptor into an equivariant map.

    Raises:
        ParameterError: On an unknown type or missing field
    """
    if not isinstance(data, dict) or "type" not in data:
        raise ParameterError("action descriptor must be an object with a 'type'")
    kind = data["type"]
    try:
        if kind == "integer":
            return integer_map(int(data["u"]), float(data["tau"]), float(data.get("alpha", 0.0)))
        if kind == "random_affine":
            return random_affine_map(
                int(data["k"]), int(data["dimension"]), data.get("seed", 0), float(data.get("scale", 1.0))
            )
        if kind == "affine":
            gens = tuple(isometry_from_dict(None, g) for g in data["generators"])
            space = Euclidean(gens[0].matrix.shape[0])
            return EquivariantMap(GroupAction(space, gens), point_from_dict(space, data["basepoint"]))
        if kind == "tree":
            space = space_from_dict(data["space"])
            if not isinstance(space, MetricTree):
                raise ParameterError("tree action needs a tree space")
            return tree_map(space, data["generators"], point_from_dict(space, data["basepoint"]))
    except KeyError as e:
        raise ParameterError(f"{kind} action descriptor is missing {e}") from None
    raise ParameterError(f"unknown action type: {kind!r}")
