"""Verdicts and batch reports for actions on products of symmetric spaces."""

from symaction.analyze.core import (
    ActionAnalyzer,
    AnalysisReport,
    DimensionBound,
    HyperpolarityResult,
    NonsplitReport,
    analyze,
    check_nonsplit_conditions,
    cohomogeneity,
    decomposition_ranks,
    dim_bound_holds,
    dimension_bound,
    find_regular_point,
    hyperpolarity,
    intersection_algebra,
    is_hyperpolar,
    is_transitive_on,
    normal_space,
    verify_decomposition,
)

__all__ = [
    "ActionAnalyzer",
    "AnalysisReport",
    "DimensionBound",
    "HyperpolarityResult",
    "NonsplitReport",
    "analyze",
    "check_nonsplit_conditions",
    "cohomogeneity",
    "decomposition_ranks",
    "dim_bound_holds",
    "dimension_bound",
    "find_regular_point",
    "hyperpolarity",
    "intersection_algebra",
    "is_hyperpolar",
    "is_transitive_on",
    "normal_space",
    "verify_decomposition",
]
