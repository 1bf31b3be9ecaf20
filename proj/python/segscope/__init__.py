"""Group segregation discovery, measurement, and fairness auditing."""

from ._core import (
    DissimilarityReport,
    EoAdjustment,
    GroupAssignment,
    Population,
    Prediction,
    PredictionSet,
    SchellingResult,
    SegscopeError,
    SocialGraph,
    TractMap,
    alignment,
    assortativity,
    detect_network,
    detect_spatial,
    dissimilarity,
    dp_gap,
    eo_adjust,
    eo_gap,
    gen_network,
    gen_outcomes,
    gen_spatial,
    read_individuals,
    reference_assignment,
    write_individuals,
)

__version__ = "1.0.0"

__all__ = [
    "DissimilarityReport",
    "EoAdjustment",
    "GroupAssignment",
    "Population",
    "Prediction",
    "PredictionSet",
    "SchellingResult",
    "SegscopeError",
    "SocialGraph",
    "TractMap",
    "alignment",
    "assortativity",
    "detect_network",
    "detect_spatial",
    "dissimilarity",
    "dp_gap",
    "eo_adjust",
    "eo_gap",
    "gen_network",
    "gen_outcomes",
    "gen_spatial",
    "read_individuals",
    "reference_assignment",
    "write_individuals",
]
