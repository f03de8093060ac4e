"""Graph domain - finite graphs, standard walks and their spectra."""
from .types import Graph, VertexMeasure, WalkKernel
from .structure import (
    validate_graph,
    from_networkx,
    cycle_graph,
    path_graph,
    star_graph,
    complete_graph,
    petersen_graph,
    hop_distances,
    girth_and_diameter,
    subdivide,
    count_embedded_paths,
)
from .walks import standard_measure, standard_walk, convolve, kernel_power, dense_power
from .spectra import laplacian_spectrum, spectral_gap_real, rayleigh_quotient_real

__all__ = [
    "Graph",
    "VertexMeasure",
    "WalkKernel",
    "validate_graph",
    "from_networkx",
    "cycle_graph",
    "path_graph",
    "star_graph",
    "complete_graph",
    "petersen_graph",
    "hop_distances",
    "girth_and_diameter",
    "subdivide",
    "count_embedded_paths",
    "standard_measure",
    "standard_walk",
    "convolve",
    "kernel_power",
    "dense_power",
    "laplacian_spectrum",
    "spectral_gap_real",
    "rayleigh_quotient_real",
]
