import numpy as np
import pytest
from scipy.linalg import expm

from symaction.catalog import classical, realify
from symaction.liealg import (
    DEFAULT_TOL,
    AlgebraSubspace,
    DimensionError,
    MatrixLieAlgebra,
    Tolerance,
    bracket,
    centralizer_in,
    centralizer_of,
    flatness_residual,
    inner,
    intersect,
    is_abelian,
    kernel,
    matrix_exp,
    null_space,
    numerical_rank,
    orthocomplement,
    orthonormal_rows,
    subspace_sum,
)

from conftest import random_skew


def E(i, j, n=3):
    X = np.zeros((n, n))
    X[i, j], X[j, i] = -1.0, 1.0
    return X


def test_bracket_so3_structure_constants():
    # infinitesimal rotations about the coordinate axes
    Lx, Ly, Lz = E(1, 2), E(2, 0), E(0, 1)
    assert np.allclose(bracket(Lx, Ly), Lz)
    assert np.allclose(bracket(Ly, Lz), Lx)
    assert np.allclose(bracket(Lz, Lx), Ly)


def test_bracket_shape_mismatch():
    with pytest.raises(DimensionError):
        bracket(np.zeros((2, 2)), np.zeros((3, 3)))


def test_inner_is_minus_trace_and_frobenius(rng):
    X, Y = random_skew(rng, 5), random_skew(rng, 5)
    assert inner(X, Y) == pytest.approx(-np.trace(X @ Y))
    assert inner(X, Y) == pytest.approx(np.sum(X * Y))


def test_jacobi_identity(rng):
    X, Y, Z = (random_skew(rng, 6) for _ in range(3))
    J = bracket(X, bracket(Y, Z)) + bracket(Y, bracket(Z, X)) + bracket(Z, bracket(X, Y))
    assert np.linalg.norm(J) < 1e-12


def test_numerical_rank_respects_tolerance():
    v = np.eye(4)[:3].copy()
    v[2] = v[0] + 1e-12 * v[1]
    assert numerical_rank(v) == 2
    v[2] = v[0] + 1e-3 * v[2] + 1e-3 * np.eye(4)[2]
    assert numerical_rank(v) == 3
    assert numerical_rank(np.zeros((3, 4))) == 0


def test_orthonormal_rows_and_null_space(rng):
    A = rng.standard_normal((3, 7))
    Q = orthonormal_rows(A)
    assert Q.shape == (3, 7)
    assert np.allclose(Q @ Q.T, np.eye(3))
    N = null_space(A)
    assert N.shape == (4, 7)
    assert np.allclose(A @ N.T, 0, atol=1e-12)


def test_tolerance_validation():
    with pytest.raises(ValueError):
        Tolerance(rel_eps=1e-12, abs_eps=1e-8)
    with pytest.raises(ValueError):
        Tolerance(rel_eps=2.0)


@pytest.mark.parametrize("fam,n,dim", [("so", 3, 3), ("so", 5, 10), ("su", 3, 8), ("u", 2, 4),
                                       ("sp", 2, 10), ("so", 16, 120)])
def test_classical_dims_and_closure(fam, n, dim):
    L = classical(fam, n)
    assert L.dim == dim
    assert L.closure_residual() < 1e-12


def test_non_closed_basis_rejected():
    with pytest.raises(ValueError):
        MatrixLieAlgebra(np.array([E(0, 1), E(1, 2)]))


def test_coords_roundtrip(rng):
    L = classical("su", 3)
    c = rng.standard_normal(L.dim)
    X = L.element(c)
    assert np.allclose(L.coords(X), c)
    assert L.contains(X)
    assert L.contains(realify(1j * np.diag([1.0, -1.0, 0.0])))
    # the centre of u(3) lies outside su(3)
    assert not L.contains(realify(1j * np.eye(3)))


def test_orthocomplement_twice_is_identity(rng):
    L = classical("so", 5)
    S = AlgebraSubspace.span(L, np.einsum("ki,iab->kab", rng.standard_normal((3, L.dim)), L.basis))
    C = orthocomplement(S)
    assert C.dim == L.dim - 3
    assert orthocomplement(C).same_span(S)
    assert np.allclose(S.flat @ C.flat.T, 0, atol=1e-12)


def test_intersection_and_sum_dimensions(rng):
    L = classical("so", 4)
    basis = L.basis
    S = AlgebraSubspace.span(L, basis[:4])
    T = AlgebraSubspace.span(L, basis[2:])
    assert intersect(S, T).dim == 2
    assert subspace_sum(S, T).dim == 6


def test_kernel_of_coordinate_map():
    L = classical("so", 4)
    full = L.full()
    M = np.zeros((2, full.dim))
    M[0, 0], M[1, 1] = 1.0, 1.0
    assert kernel(full, M).dim == full.dim - 2


def test_centralizers():
    L = classical("so", 4)
    full = L.full()
    X = E(0, 1, 4)
    C = centralizer_in(full, X)
    # so(2) + so(2) acting on the two coordinate planes
    assert C.dim == 2
    assert centralizer_of(full, full).dim == 0
    u2 = classical("u", 2)
    assert centralizer_of(u2.full(), u2.full()).dim == 1


def test_flatness(rng):
    L = classical("so", 4)
    torus = AlgebraSubspace.span(L, np.array([E(0, 1, 4), E(2, 3, 4)]))
    assert is_abelian(torus)
    assert flatness_residual(torus.basis) < 1e-14
    assert not is_abelian(L.full())


def test_matrix_exp_matches_scipy(rng):
    for n, scale in [(3, 0.1), (5, 1.0), (8, 7.0), (6, 40.0)]:
        X = scale * random_skew(rng, n)
        assert np.allclose(matrix_exp(X), expm(X), atol=1e-10 * max(1.0, scale))


def test_matrix_exp_rotation():
    t = 0.7
    R = matrix_exp(t * E(0, 1, 2))
    assert np.allclose(R, [[np.cos(t), -np.sin(t)], [np.sin(t), np.cos(t)]])


def test_matrix_exp_inverse_and_orthogonal(rng):
    X = random_skew(rng, 7)
    G = matrix_exp(X)
    assert np.allclose(G @ matrix_exp(-X), np.eye(7), atol=1e-12)
    assert np.allclose(G.T @ G, np.eye(7), atol=1e-12)


def test_direct_sum_dims():
    S = MatrixLieAlgebra.direct_sum([classical("so", 3), classical("su", 2)])
    assert S.dim == 6
    assert S.closure_residual() < 1e-12


def test_default_tolerance_values():
    assert DEFAULT_TOL.rel_eps == 1e-8
    assert DEFAULT_TOL.abs_eps == 1e-10
