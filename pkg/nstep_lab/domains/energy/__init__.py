"""Energy domain - free-group walks, equivariant maps and their n-step energies."""
from .words import Word, IDENTITY, letters, reduce, multiply, inverse, format_word, parse_word
from .types import (
    FreeWalkDistribution,
    EuclideanIsometry,
    TreeAutomorphism,
    GroupAction,
    EquivariantMap,
    InequalityRow,
    InequalityReport,
    AffineOperatorReport,
    DescentStep,
    DescentResult,
    ConverseReport,
    CayleyTreeEnergy,
    isometry_from_dict,
)
from .walks import free_walk_distribution, word_length_distribution, cayley_tree_energy
from .energies import (
    equivariant_energy,
    minus_delta,
    vertex_map_energy,
    vertex_energy,
    inequality_report,
    averaging_operator,
    affine_operator_report,
    fixed_point_descent,
    tree_fixed_set,
    converse_tree_check,
)
from .actions import integer_action, integer_map, random_affine_map, tree_map, map_from_dict

__all__ = [
    "Word",
    "IDENTITY",
    "letters",
    "reduce",
    "multiply",
    "inverse",
    "format_word",
    "parse_word",
    "FreeWalkDistribution",
    "EuclideanIsometry",
    "TreeAutomorphism",
    "GroupAction",
    "EquivariantMap",
    "InequalityRow",
    "InequalityReport",
    "AffineOperatorReport",
    "DescentStep",
    "DescentResult",
    "ConverseReport",
    "CayleyTreeEnergy",
    "isometry_from_dict",
    "free_walk_distribution",
    "word_length_distribution",
    "cayley_tree_energy",
    "equivariant_energy",
    "minus_delta",
    "vertex_map_energy",
    "vertex_energy",
    "inequality_report",
    "averaging_operator",
    "affine_operator_report",
    "fixed_point_descent",
    "tree_fixed_set",
    "converse_tree_check",
    "integer_action",
    "integer_map",
    "random_affine_map",
    "tree_map",
    "map_from_dict",
]
