"""Random group domain - labellings of graphs, push-forward walks and the fixed-point constants."""
from .types import (
    SLabelling,
    PushforwardKernel,
    WeightedSumDecomposition,
    WeightedSumReport,
    BernoulliBound,
    TransplantReport,
    PipelineConstants,
    GraphHypotheses,
    ConcentrationReport,
)
from .labellings import check_model_graph, sample_labelling, all_labellings, relators, pushforward_walk
from .weighted_sum import (
    p_profile,
    expected_pushforward,
    exact_pushforward_expectation,
    weighted_sum_check,
    concentration_experiment,
)
from .bounds import (
    BERNOULLI_C_OBSERVED,
    DEFAULT_C_ABS,
    gaussian_reference,
    bernoulli_bound,
    lower_wang_bound,
    spectral_transplant_check,
    fixed_point_pipeline,
    graph_hypotheses,
)

__all__ = [
    "SLabelling",
    "PushforwardKernel",
    "WeightedSumDecomposition",
    "WeightedSumReport",
    "BernoulliBound",
    "TransplantReport",
    "PipelineConstants",
    "GraphHypotheses",
    "ConcentrationReport",
    "check_model_graph",
    "sample_labelling",
    "all_labellings",
    "relators",
    "pushforward_walk",
    "p_profile",
    "expected_pushforward",
    "exact_pushforward_expectation",
    "weighted_sum_check",
    "concentration_experiment",
    "BERNOULLI_C_OBSERVED",
    "DEFAULT_C_ABS",
    "gaussian_reference",
    "bernoulli_bound",
    "lower_wang_bound",
    "spectral_transplant_check",
    "fixed_point_pipeline",
    "graph_hypotheses",
]
