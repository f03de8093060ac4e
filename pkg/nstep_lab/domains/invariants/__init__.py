"""Invariants domain - radial distortion, delta bounds, building cones and the Wang invariant."""
from .types import (
    GramSpec,
    BuildingSpec,
    RadialEmbedding,
    GramSpectrum,
    OptimalAB,
    EmbeddingReport,
    Certificate,
    BuildingBounds,
    WangEstimate,
)
from .gram import (
    cone_over_generalized_triangle,
    gram_matrix,
    formula_eigenvalues,
    gram_eigenvalues,
    optimal_ab,
    iota_embedding,
    map_distortion,
    delta_mu0_closed_form,
    delta_mu0_upper,
    delta_mu0,
)
from .embeddings import (
    regular_simplex,
    pod_embedding,
    pod_distortion,
    simplex_embedding,
    embedding_report,
    distortion_variance_check,
    delta_from_distortion,
    product_radial_distortion,
    certificate,
    pod_tip_mean,
    uniform_vertex_measure,
)
from .buildings import chamber_distance, d_min, building_distances, building_bounds, tangent_cone_bounds, bound_table
from .wang import wang_estimate

__all__ = [
    "GramSpec",
    "BuildingSpec",
    "RadialEmbedding",
    "GramSpectrum",
    "OptimalAB",
    "EmbeddingReport",
    "Certificate",
    "BuildingBounds",
    "WangEstimate",
    "cone_over_generalized_triangle",
    "gram_matrix",
    "formula_eigenvalues",
    "gram_eigenvalues",
    "optimal_ab",
    "iota_embedding",
    "map_distortion",
    "delta_mu0_closed_form",
    "delta_mu0_upper",
    "delta_mu0",
    "regular_simplex",
    "pod_embedding",
    "pod_distortion",
    "simplex_embedding",
    "embedding_report",
    "distortion_variance_check",
    "delta_from_distortion",
    "product_radial_distortion",
    "certificate",
    "pod_tip_mean",
    "uniform_vertex_measure",
    "chamber_distance",
    "d_min",
    "building_distances",
    "building_bounds",
    "tangent_cone_bounds",
    "bound_table",
    "wang_estimate",
]
