import numpy as np
import pytest

from symaction.catalog import build_involution, classical
from symaction.spaces import (
    OrbitMap,
    ProductSpace,
    TypeI,
    TypeII,
    base_point,
    cartan_decomposition,
    factor_rank,
    largest_ideal_in,
    sample_points,
    space_rank,
    sphere,
)
from symaction.liealg import AlgebraSubspace, numerical_rank

# (involution, dim of the space, rank)
TYPE_I = [("BDI(3,1)", 3, 1), ("BDI(6,2)", 12, 2), ("AI(3)", 5, 2), ("AIII(2,1)", 4, 1),
          ("AII(2)", 5, 1), ("DIII(4)", 12, 2), ("CI(2)", 6, 2), ("CII(1,1)", 4, 1)]


@pytest.mark.parametrize("name,dim,rank", TYPE_I)
def test_type_one_dimension_rank_and_cartan_relations(name, dim, rank):
    f = TypeI(build_involution(name))
    assert f.dim == dim
    assert factor_rank(f, np.random.default_rng(0)) == rank
    res = f.cartan_residuals()
    assert max(res.values()) < 1e-12


@pytest.mark.parametrize("fam,n,rank", [("su", 2, 1), ("su", 3, 2), ("so", 5, 2), ("so", 7, 3),
                                        ("sp", 2, 2)])
def test_type_two_rank(fam, n, rank):
    f = TypeII(classical(fam, n))
    assert f.dim == classical(fam, n).dim
    assert factor_rank(f, np.random.default_rng(1)) == rank


def test_cartan_decomposition_is_orthogonal_and_complete():
    inv = build_involution("BDI(4,1)")
    k, p = cartan_decomposition(inv.algebra, inv)
    assert k.dim + p.dim == inv.algebra.dim
    assert np.allclose(k.flat @ p.flat.T, 0, atol=1e-12)


def test_largest_ideal_detects_effectiveness():
    so5 = classical("so", 5)
    k = build_involution("BDI(4,1)").fixed()
    assert largest_ideal_in(k, so5).dim == 0
    # an ideal of a direct sum survives
    L = classical("so", 4)
    assert largest_ideal_in(L.full(), L).dim == L.dim


def test_product_space_blocks_and_embedding():
    space = ProductSpace([sphere(2), TypeII(classical("su", 2))])
    assert space.dim == 2 + 3
    assert space.factor_dims == [2, 3]
    assert [b.side for b in space.blocks] == ["g", "left", "right"]
    assert space.ambient.dim == 3 + 3 + 3
    X = classical("so", 3).basis[0]
    M = space.embed({(0, "g"): X})
    assert space.ambient.contains(M)
    assert np.allclose(space.sub_blocks(M[None], [0])[0], X)
    with pytest.raises(KeyError):
        space.block(0, "left")


def test_sample_points_reproducible_and_orthogonal():
    space = ProductSpace([sphere(3), TypeII(classical("so", 4))])
    a = sample_points(space, 7, 3)
    b = sample_points(space, 7, 3)
    for p, q in zip(a, b):
        for g, h in zip(p.elements, q.elements):
            assert np.array_equal(g, h)
        assert p.residual() < 1e-12
    c = sample_points(space, 8, 1)[0]
    assert not np.allclose(a[0].elements[0], c.elements[0])


def test_full_isometry_algebra_is_transitive():
    space = ProductSpace([sphere(4), TypeI(build_involution("AIII(2,1)")), TypeII(classical("su", 2))])
    for point in [base_point(space)] + sample_points(space, 3, 2):
        images = OrbitMap(space, point).on(space.ambient.basis)
        assert numerical_rank(images) == space.dim


def test_orbit_map_at_base_point_kills_isotropy():
    inv = build_involution("BDI(4,1)")
    f = TypeI(inv)
    space = ProductSpace([f])
    om = OrbitMap(space, base_point(space))
    assert np.allclose(om.on(f.k.basis), 0, atol=1e-14)
    assert numerical_rank(om.on(f.p.basis)) == f.dim


def test_type_two_orbit_map_at_identity_is_difference():
    L = classical("su", 2)
    space = ProductSpace([TypeII(L)])
    om = OrbitMap(space, base_point(space))
    X = L.basis[1]
    assert np.allclose(om(space.embed({(0, "left"): X, (0, "right"): X})), 0)
    assert numerical_rank(om.on(space.embed({(0, "left"): X})[None])) == 1


def test_orbit_map_equivariance(rng):
    # tangent image at g.o of X equals the image at o of Ad(g^-1) X
    f = sphere(3)
    space = ProductSpace([f])
    point = sample_points(space, 11, 1)[0]
    g = point.elements[0]
    X = f.algebra.element(rng.standard_normal(f.algebra.dim))
    lhs = OrbitMap(space, point)(X)
    rhs = OrbitMap(space, base_point(space))(g.T @ X @ g)
    assert np.allclose(lhs, rhs)


def test_tangent_matrices_split_coordinates():
    space = ProductSpace([sphere(2), sphere(3)])
    om = OrbitMap(space, base_point(space))
    coords = np.arange(space.dim, dtype=float)
    mats = om.tangent_matrices(coords)
    assert [m.shape for m in mats] == [(3, 3), (4, 4)]
    p0 = AlgebraSubspace.span(space.factors[0].algebra, space.factors[0].p_basis)
    assert p0.contains(mats[0])


def test_space_rank_adds_over_factors():
    space = ProductSpace([sphere(7), sphere(7), TypeI(build_involution("BDI(6,2)"))])
    assert space_rank(space, seed=0) == 4
    assert space_rank(space, seed=5) == 4


def test_point_component_shape_checked():
    space = ProductSpace([sphere(2)])
    other = base_point(ProductSpace([sphere(3)]))
    with pytest.raises(ValueError):
        OrbitMap(space, other)
