"""Special graphs domain - LPS expanders and generalized triangles."""
from .types import LpsParameters, LpsCertificate, ProjectivePlaneIncidence
from .constructions import (
    lps_parameters,
    lps_generators,
    lps_graph,
    validate_lps,
    generalized_triangle,
    quaternion_solutions,
)

__all__ = [
    "LpsParameters",
    "LpsCertificate",
    "ProjectivePlaneIncidence",
    "lps_parameters",
    "lps_generators",
    "lps_graph",
    "validate_lps",
    "generalized_triangle",
    "quaternion_solutions",
]
