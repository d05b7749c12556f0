"""Named actions: the worked cohomogeneity-one examples and the acceptance catalog."""

from __future__ import annotations

from functools import lru_cache
from typing import Callable

import numpy as np

from symaction.actions import (
    ActionModel,
    build_chain_action,
    build_chain_reduced,
    build_hermann,
    build_sigma_action,
    build_two_sided,
    expand_factor,
)
from symaction.catalog import (
    Automorphism,
    build_embedding,
    build_involution,
    classical,
    spin9_vector_image,
    triality_images,
)
from symaction.spaces import ProductSpace, TypeI, TypeII, sphere


def _embed_so_block(X, n):
    k = X.shape[-1]
    out = np.zeros(X.shape[:-2] + (n, n))
    out[..., :k, :k] = X
    return out


def triality_action() -> ActionModel:
    """so(8) on S^7 x S^7 x S^7 through the three 8-dimensional representations."""
    S7 = sphere(7)
    space = ProductSpace([S7, S7, S7])
    mats = []
    for A in classical("so", 8).basis:
        B, C = triality_images(A)
        mats.append(space.embed({(0, "g"): A, (1, "g"): B, (2, "g"): C}))
    return ActionModel(space, mats, name="spin8-triality on S7xS7xS7")


def triality_grassmannian_action() -> ActionModel:
    """The same subalgebra acting on S^7 x S^7 x Gr_2(R^8)."""
    S7 = sphere(7)
    gr = TypeI(build_involution("BDI(6,2)"), name="Gr2(R8)")
    space = ProductSpace([S7, S7, gr])
    mats = []
    for A in classical("so", 8).basis:
        B, C = triality_images(A)
        mats.append(space.embed({(0, "g"): A, (1, "g"): B, (2, "g"): C}))
    return ActionModel(space, mats, name="spin8-triality on S7xS7xGr2(R8)")


def spin7_diagonal_action() -> ActionModel:
    """Diagonal spin(7) (spin representation on both factors) on S^7 x S^7."""
    S7 = sphere(7)
    space = ProductSpace([S7, S7])
    spin7 = build_embedding("spin7_in_so8").image.basis
    mats = [space.embed({(0, "g"): X, (1, "g"): X}) for X in spin7]
    return ActionModel(space, mats, name="diag spin7 on S7xS7")


def u3_chain_action() -> ActionModel:
    """u(3) x so(6) x g2 on SO(6) x SO(7) by (h x l^-1, l y k^-1)."""
    so6, so7 = classical("so", 6), classical("so", 7)
    space = ProductSpace([TypeII(so6, name="SO(6)"), TypeII(so7, name="SO(7)")])
    u3 = build_embedding("u3_in_so6").image.basis
    g2 = build_embedding("g2_in_so7").image.basis
    mats = [space.embed({(0, "left"): X}) for X in u3]
    mats += [space.embed({(0, "right"): X, (1, "left"): _embed_so_block(X, 7)}) for X in so6.basis]
    mats += [space.embed({(1, "right"): X}) for X in g2]
    return ActionModel(space, mats, name="u3 x so6 x g2 on SO6xSO7")


def spin9_action() -> ActionModel:
    """spin(9) on S^8 x S^15 by the vector and the spin representation."""
    space = ProductSpace([sphere(8), sphere(15)])
    spin9 = build_embedding("spin9_in_so16").image.basis
    mats = [space.embed({(0, "g"): spin9_vector_image(X), (1, "g"): X}) for X in spin9]
    return ActionModel(space, mats, name="spin9 on S8xS15")


# (builder, grouping used for the nonsplit conditions)
COHOM_ONE_EXAMPLES: dict[str, tuple[Callable[[], ActionModel], tuple]] = {
    "ex1-triality": (triality_action, ((0, 1), (2,))),
    "ex2-triality-grassmannian": (triality_grassmannian_action, ((0, 1), (2,))),
    "ex3-spin7-diagonal": (spin7_diagonal_action, ((0,), (1,))),
    "ex4-u3-chain": (u3_chain_action, ((0,), (1,))),
    "ex5-spin9": (spin9_action, ((0,), (1,))),
}


def sphere_isotropy(n: int) -> ActionModel:
    return build_hermann(tau=f"BDI({n},1)", sigma=f"BDI({n},1)", name=f"so({n}) on S^{n}")


def isotropy_squared(n: int) -> ActionModel:
    """K x K on SO(n+1): the sphere isotropy action with its factor expanded."""
    return expand_factor(sphere_isotropy(n), 0).renamed(f"so({n})xso({n}) on SO({n + 1})")


def principal_left_translation() -> ActionModel:
    """so(3) (irreducible on C^3) acting on SU(3) by left translation; not hyperpolar."""
    so3 = build_involution("AI(3)").fixed()
    return build_two_sided(classical("su", 3), so3, None, name="so(3) left on SU(3)")


def sigma_conjugation_su3() -> ActionModel:
    """su(3) on SU(3) by g x sigma(g)^-1 with sigma complex conjugation."""
    ai = build_involution("AI(3)")
    return build_sigma_action(ai.algebra, 1, Automorphism(ai.algebra, ai.matrix, name="conj"),
                              name="sigma-action su(3), sigma=conj")


def acceptance_catalog() -> dict[str, Callable[[], ActionModel]]:
    """Builders for the actions the invariance and hyperpolarity suites run over."""
    su2, su3, so5 = classical("su", 2), classical("su", 3), classical("so", 5)
    cat = {
        "hermann-S3": lambda: sphere_isotropy(3),
        "hermann-S4": lambda: sphere_isotropy(4),
        "hermann-so5-BDI(3,2)-on-S4": lambda: build_hermann(tau="BDI(3,2)", sigma="BDI(4,1)"),
        "hermann-su3-AI-on-CP2": lambda: build_hermann(tau="AI(3)", sigma="AIII(2,1)"),
        "sigma-su3-n1": lambda: build_sigma_action(su3, 1),
        "sigma-su2-n2": lambda: build_sigma_action(su2, 2),
        "sigma-so5-n1": lambda: build_sigma_action(so5, 1),
        "sigma-su3-conj": sigma_conjugation_su3,
        "chain-su3-n1": lambda: build_chain_action(su3, 1, "AI(3)", "AIII(2,1)"),
        "chain-su2-n2": lambda: build_chain_action(su2, 2, "AI(2)", "AI(2)"),
        "chain-so5-n1": lambda: build_chain_action(so5, 1, "BDI(4,1)", "BDI(3,2)"),
        "chain-reduced-su3-n2": lambda: build_chain_reduced(su3, 2, "AI(3)", "AIII(2,1)", "last"),
        "chain-both-reduced-su2-n2": lambda: build_chain_reduced(su2, 2, "AI(2)", "AI(2)", "both"),
        "isotropy-squared-SO4": lambda: isotropy_squared(3),
        "principal-so3-left-SU3": principal_left_translation,
    }
    for key, (builder, _) in COHOM_ONE_EXAMPLES.items():
        cat[key] = builder
    return cat


@lru_cache(maxsize=None)
def named_action(name: str) -> ActionModel:
    """Build one action of :func:`acceptance_catalog` by name."""
    cat = acceptance_catalog()
    if name not in cat:
        raise ValueError(f"unknown named action {name!r}")
    return cat[name]()


def hermann_suite() -> dict[str, Callable[[], ActionModel]]:
    """Shapes (chain, chain reduced once, reduced at both ends, sigma) at desk scale."""
    out = {}
    algebras = {"su2": ("su", 2, "AI(2)", "AI(2)"),
                "su3": ("su", 3, "AI(3)", "AIII(2,1)"),
                "so5": ("so", 5, "BDI(4,1)", "BDI(3,2)")}
    for key, (fam, m, h, k) in algebras.items():
        L = classical(fam, m)
        for n in (1, 2, 3):
            out[f"chain-{key}-n{n}"] = (lambda L=L, n=n, h=h, k=k: build_chain_action(L, n, h, k))
            out[f"reduced-{key}-n{n}"] = (
                lambda L=L, n=n, h=h, k=k: build_chain_reduced(L, n, h, k, "last"))
            if n >= 2:
                out[f"both-reduced-{key}-n{n}"] = (
                    lambda L=L, n=n, h=h, k=k: build_chain_reduced(L, n, h, k, "both"))
            out[f"sigma-{key}-n{n}"] = (lambda L=L, n=n: build_sigma_action(L, n))
    return out
