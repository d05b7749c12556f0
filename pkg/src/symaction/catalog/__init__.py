"""Constructors for the algebras, embeddings and involutions the analyses use."""

from symaction.catalog.classical import CLASSICAL_DIMENSIONS, build_classical, realify
from symaction.catalog.embeddings import EmbeddingSpec, build_embedding, g2_algebra
from symaction.catalog.involutions import (
    Automorphism,
    Involution,
    build_involution,
    classical,
    parse_involution_name,
)
from symaction.catalog.listing import CATALOG_NAMES, catalog_entries
from symaction.catalog.octonions import (
    OCTONIONS,
    OctonionAlgebra,
    spin9_vector_image,
    triality_images,
)

__all__ = [
    "Automorphism",
    "CATALOG_NAMES",
    "CLASSICAL_DIMENSIONS",
    "EmbeddingSpec",
    "Involution",
    "OCTONIONS",
    "OctonionAlgebra",
    "build_classical",
    "build_embedding",
    "build_involution",
    "catalog_entries",
    "classical",
    "g2_algebra",
    "parse_involution_name",
    "realify",
    "spin9_vector_image",
    "triality_images",
]
