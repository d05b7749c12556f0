"""Numerical Lie theory for isometric actions on products of compact symmetric spaces."""

from symaction.actions import (
    ActionModel,
    build_chain_action,
    build_chain_reduced,
    build_hermann,
    build_sigma_action,
    expand_factor,
    reduce_factor,
)
from symaction.analyze import ActionAnalyzer, analyze, cohomogeneity, is_hyperpolar
from symaction.spaces import ProductSpace, TypeI, TypeII, sphere

__version__ = "0.1.0"

__all__ = [
    "ActionAnalyzer",
    "ActionModel",
    "ProductSpace",
    "TypeI",
    "TypeII",
    "analyze",
    "build_chain_action",
    "build_chain_reduced",
    "build_hermann",
    "build_sigma_action",
    "cohomogeneity",
    "expand_factor",
    "is_hyperpolar",
    "reduce_factor",
    "sphere",
]
