import numpy as np
import pytest

from symaction.catalog import (
    CATALOG_NAMES,
    OCTONIONS,
    build_classical,
    build_embedding,
    build_involution,
    catalog_entries,
    classical,
    g2_algebra,
    parse_involution_name,
    spin9_vector_image,
    triality_images,
)
from symaction.catalog.embeddings import so3_irreducible
from symaction.catalog.octonions import spin9_clifford_generators
from symaction.liealg import AlgebraSubspace, bracket, centralizer_of, null_space

from conftest import random_skew

EMBEDDING_DIMS = {
    "u4_in_so8": 16, "su4_in_so8": 15, "sp2sp1_in_so8": 13, "sp2u1_in_so8": 11, "sp2_in_so8": 10,
    "so3xso5_in_so8": 13, "so7_in_so8": 21, "g2_in_so7": 14, "spin7_in_so8": 21,
    "spin9_in_so16": 36, "su3_in_g2": 8, "so4_in_g2": 6, "sp2_in_su4": 10,
    "s(u3xu1)_in_su4": 9, "su3_in_su4": 8, "so5xso2_in_so7": 11, "so3irr_in_so7": 3,
}

# (name, dim of fixed algebra, dim of the symmetric space)
INVOLUTIONS = [("AI(3)", 3, 5), ("AII(2)", 10, 5), ("AIII(2,1)", 4, 4), ("BDI(4,1)", 6, 4),
               ("BDI(3,2)", 4, 6), ("DIII(4)", 16, 12), ("CI(2)", 4, 6), ("CII(1,1)", 6, 4)]


@pytest.mark.parametrize("name,dim", sorted(EMBEDDING_DIMS.items()))
def test_embedding_image_is_subalgebra_of_declared_dim(name, dim):
    e = build_embedding(name)
    assert e.dim == dim == e.declared_dim
    assert e.image.closure_residual() < 1e-10
    assert e.image.is_subalgebra()


@pytest.mark.parametrize("name,kdim,pdim", INVOLUTIONS)
def test_involution_eigenspaces(name, kdim, pdim):
    inv = build_involution(name)
    assert inv.fixed().dim == kdim
    assert inv.anti_fixed().dim == pdim
    assert inv.involution_residual() < 1e-12
    assert inv.automorphism_residual() < 1e-12


def test_unknown_identifiers_rejected():
    with pytest.raises(ValueError):
        build_involution("ZZ(3)")
    with pytest.raises(ValueError):
        build_embedding("e8_in_so16")
    with pytest.raises(ValueError):
        build_classical("so", 0)
    assert parse_involution_name("BDI(4,1)") == ("BDI", (4, 1))


def test_catalog_listing_is_consistent():
    entries = list(catalog_entries())
    assert [e[0] for e in entries] == list(CATALOG_NAMES)
    assert len(entries) == 43
    lookup = {n: d for n, _, d in entries}
    assert lookup["g2_in_so7"] == 14
    assert lookup["so(5)"] == 10
    assert lookup == {n: d for n, _, d in catalog_entries(build=False)}


def test_octonions_are_a_normed_alternative_algebra(rng):
    x, y = rng.standard_normal(8), rng.standard_normal(8)
    m = OCTONIONS.multiply
    assert np.isclose(np.linalg.norm(m(x, y)), np.linalg.norm(x) * np.linalg.norm(y))
    assert np.allclose(m(x, m(x, y)), m(m(x, x), y))
    assert np.allclose(m(m(y, x), x), m(y, m(x, x)))
    for i in range(1, 8):
        e = np.eye(8)[i]
        assert np.allclose(m(e, e), -np.eye(8)[0])
    # not associative
    e1, e2, e4 = np.eye(8)[1], np.eye(8)[2], np.eye(8)[4]
    assert not np.allclose(m(m(e1, e2), e4), m(e1, m(e2, e4)))


def test_g2_annihilates_the_product(rng):
    g2 = g2_algebra()
    assert g2.dim == 14
    x, y = rng.standard_normal(8), rng.standard_normal(8)
    m = OCTONIONS.multiply
    for D8 in build_embedding("g2_in_so7").image.basis:
        D = np.zeros((8, 8))
        D[1:, 1:] = D8
        assert np.allclose(D @ m(x, y), m(D @ x, y) + m(x, D @ y), atol=1e-12)


def test_clifford_relations_for_spin9():
    g = spin9_clifford_generators()
    assert g.shape == (9, 16, 16)
    for i in range(9):
        for j in range(9):
            anti = g[i] @ g[j] + g[j] @ g[i]
            assert np.allclose(anti, 2.0 * (i == j) * np.eye(16))


def test_spin9_vector_image_is_a_homomorphism(rng):
    spin9 = build_embedding("spin9_in_so16").image
    a, b = rng.standard_normal((2, spin9.dim))
    X = np.einsum("k,kij->ij", a, spin9.basis)
    Y = np.einsum("k,kij->ij", b, spin9.basis)
    v = spin9_vector_image
    assert v(X).shape == (9, 9)
    assert np.allclose(v(bracket(X, Y)), bracket(v(X), v(Y)), atol=1e-10)


def test_triality_images_are_representations(rng):
    A1, A2 = random_skew(rng, 8), random_skew(rng, 8)
    B1, C1 = triality_images(A1)
    B2, C2 = triality_images(A2)
    B12, C12 = triality_images(bracket(A1, A2))
    assert np.allclose(B12, bracket(B1, B2), atol=1e-9)
    assert np.allclose(C12, bracket(C1, C2), atol=1e-9)


def test_triality_representations_are_inequivalent():
    # intertwiners between the vector and a half-spin representation vanish
    so8 = classical("so", 8).basis
    imgs = [triality_images(A) for A in so8]
    for which in (0, 1):
        rows = []
        for A, BC in zip(so8, imgs):
            B = BC[which]
            # T A - B T = 0 as a linear system in T
            rows.append(np.kron(np.eye(8), A.T) - np.kron(B, np.eye(8)))
        assert null_space(np.vstack(rows)).shape[0] == 0


def test_so3_irreducible_has_trivial_commutant():
    mats = so3_irreducible(3)
    assert mats.shape == (3, 7, 7)
    so7 = classical("so", 7)
    image = AlgebraSubspace.span(so7, mats)
    assert image.is_subalgebra()
    assert centralizer_of(so7.full(), image).dim == 0
