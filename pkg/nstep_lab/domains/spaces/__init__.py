"""Spaces domain - CAT(0) models, geodesics, tangent cones and barycenters."""
from .types import (
    EuclideanPoint,
    Locus,
    ConePoint,
    CatPoint,
    FiniteMeasure,
    TangentVector,
    VarianceReport,
    InnerProductReport,
)
from .metric_graph import MetricGraph
from .models import CatSpace, Euclidean, MetricTree, GraphCone
from .barycenter import (
    frechet_objective,
    inductive_mean,
    barycenter,
    barycenter_oracle,
    variance_report,
    tangent_inner_product_check,
)
from .descriptors import space_from_dict, point_from_dict, measure_from_dict, measure_to_dict

__all__ = [
    "EuclideanPoint",
    "Locus",
    "ConePoint",
    "CatPoint",
    "FiniteMeasure",
    "TangentVector",
    "VarianceReport",
    "InnerProductReport",
    "MetricGraph",
    "CatSpace",
    "Euclidean",
    "MetricTree",
    "GraphCone",
    "frechet_objective",
    "inductive_mean",
    "barycenter",
    "barycenter_oracle",
    "variance_report",
    "tangent_inner_product_check",
    "space_from_dict",
    "point_from_dict",
    "measure_from_dict",
    "measure_to_dict",
]
