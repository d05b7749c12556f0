"""The fixed desk-scale catalog listing printed by ``symaction catalog``."""

from symaction.catalog.classical import CLASSICAL_DIMENSIONS
from symaction.catalog.embeddings import build_embedding
from symaction.catalog.involutions import FIXED_DIMENSIONS, involution_algebra, parse_involution_name

CLASSICAL_NAMES = (
    [f"so({n})" for n in (3, 4, 5, 6, 7, 8, 9, 16)]
    + [f"su({n})" for n in (2, 3, 4, 6)]
    + [f"sp({n})" for n in (1, 2, 3)]
    + [f"u({n})" for n in (1, 2, 3, 4)]
)

EMBEDDING_NAMES = [
    "u4_in_so8", "su4_in_so8", "sp2sp1_in_so8", "sp2u1_in_so8", "sp2_in_so8",
    "so3xso5_in_so8", "so7_in_so8", "g2_in_so7", "spin7_in_so8", "spin9_in_so16",
    "su3_in_g2", "so4_in_g2", "sp2_in_su4", "s(u3xu1)_in_su4", "su3_in_su4",
    "so5xso2_in_so7", "so3irr_in_so7",
]

INVOLUTION_NAMES = ["AI(3)", "AII(2)", "AIII(2,1)", "BDI(4,1)", "DIII(4)", "CI(2)", "CII(1,1)"]

CATALOG_NAMES = CLASSICAL_NAMES + EMBEDDING_NAMES + INVOLUTION_NAMES


def catalog_entries(build=True):
    """Yield ``(name, kind, dim)`` for every listed entry.

    With ``build=True`` embedding dimensions come from the constructed images
    rather than the declared formulas.
    """
    for name in CLASSICAL_NAMES:
        fam, n = name[:-1].split("(")
        yield name, "algebra", CLASSICAL_DIMENSIONS[fam](int(n))
    for name in EMBEDDING_NAMES:
        dim = build_embedding(name).dim if build else build_embedding(name).declared_dim
        yield name, "embedding", dim
    for name in INVOLUTION_NAMES:
        fam, params = parse_involution_name(name)
        yield name, "involution", FIXED_DIMENSIONS[fam](*params)


def algebra_of_involution(name):
    fam, params = parse_involution_name(name)
    alg_fam, n = involution_algebra(fam, params)
    return f"{alg_fam}({n})"
