"""Octonion arithmetic, G2 as derivations, local triality and Clifford models.

Sign convention (the single source for every construction in this package):
basis e0..e7 with e0 the unit, e_i^2 = -e0 for i >= 1, and e_a e_b = e_c for
each cyclically ordered Fano triple

    (1,2,3) (1,4,5) (1,7,6) (2,4,6) (2,5,7) (3,4,7) (3,6,5)

with e_b e_a = -e_c. The span of e0..e3 is a quaternion subalgebra.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from symaction.catalog.classical import so_basis
from symaction.liealg import (
    DEFAULT_TOL,
    NumericalError,
    PreconditionError,
    null_space,
)

FANO_TRIPLES = ((1, 2, 3), (1, 4, 5), (1, 7, 6), (2, 4, 6), (2, 5, 7), (3, 4, 7), (3, 6, 5))


class OctonionAlgebra:
    """Structure constants ``mult_table[i, j, k]`` with e_i e_j = sum_k T[i,j,k] e_k."""

    def __init__(self, triples=FANO_TRIPLES):
        T = np.zeros((8, 8, 8))
        for i in range(8):
            T[0, i, i] = T[i, 0, i] = 1.0
        for i in range(1, 8):
            T[i, i, 0] = -1.0
        for a, b, c in triples:
            for x, y, z in ((a, b, c), (b, c, a), (c, a, b)):
                T[x, y, z] = 1.0
                T[y, x, z] = -1.0
        self.mult_table = T

    def multiply(self, x, y):
        return np.einsum("ijk,i,j->k", self.mult_table, x, y)

    def conj(self, x):
        x = np.asarray(x, dtype=float)
        return np.r_[x[0], -x[1:]]

    def left(self, u):
        """Matrix of y -> u y."""
        return np.einsum("ijk,i->kj", self.mult_table, np.asarray(u, dtype=float))

    def right(self, v):
        """Matrix of x -> x v."""
        return np.einsum("ijk,j->ki", self.mult_table, np.asarray(v, dtype=float))


OCTONIONS = OctonionAlgebra()


def _unit(i):
    e = np.zeros(8)
    e[i] = 1.0
    return e


def derivation_system(oct_alg: OctonionAlgebra = OCTONIONS) -> np.ndarray:
    """Linear map D -> (D(e_i e_j) - D(e_i) e_j - e_i D(e_j))_{i,j} on gl(8).

    Returned as a (512, 64) matrix acting on row-major vec(D).
    """
    T = oct_alg.mult_table
    cols = []
    for a in range(64):
        D = np.zeros(64)
        D[a] = 1.0
        D = D.reshape(8, 8)
        # D(e_i e_j) = sum_k T[i,j,k] D e_k
        lhs = np.einsum("ijk,lk->ijl", T, D)
        # D(e_i) e_j: (D e_i)_m T[m,j,l]
        t1 = np.einsum("mi,mjl->ijl", D, T)
        t2 = np.einsum("mj,iml->ijl", D, T)
        cols.append((lhs - t1 - t2).ravel())
    return np.array(cols).T


@lru_cache(maxsize=None)
def g2_derivations_8() -> np.ndarray:
    """Derivations of the octonions as 8x8 matrices, orthonormal, shape (14, 8, 8)."""
    kern = null_space(derivation_system(), DEFAULT_TOL)
    mats = kern.reshape(-1, 8, 8)
    if mats.shape[0] != 14:
        raise NumericalError(f"derivation algebra has dimension {mats.shape[0]}, expected 14")
    return mats


@lru_cache(maxsize=None)
def spin7_generators() -> np.ndarray:
    """lambda_{e_i} lambda_{e_j}, 1 <= i < j <= 7: spans the spin-type spin(7) in so(8)."""
    L = [OCTONIONS.left(_unit(i)) for i in range(1, 8)]
    return np.array([L[i] @ L[j] for i in range(7) for j in range(i + 1, 7)])


@lru_cache(maxsize=None)
def spin9_clifford_generators() -> np.ndarray:
    """Nine symmetric 16x16 matrices P_a with P_a P_b + P_b P_a = 2 delta_ab I.

    On R^16 = O + O, P_u(x, y) = (conj(u) y, u x) for unit octonions u, and
    the ninth generator is diag(I, -I).
    """
    gens = []
    Z = np.zeros((8, 8))
    for i in range(8):
        u = _unit(i)
        gens.append(np.block([[Z, OCTONIONS.left(OCTONIONS.conj(u))], [OCTONIONS.left(u), Z]]))
    gens.append(np.diag(np.r_[np.ones(8), -np.ones(8)]))
    return np.array(gens)


@lru_cache(maxsize=None)
def spin9_generators() -> np.ndarray:
    P = spin9_clifford_generators()
    return np.array([P[a] @ P[b] for a in range(9) for b in range(a + 1, 9)])


def spin9_vector_image(X, tol=DEFAULT_TOL) -> np.ndarray:
    """The so(9) element A with [X, P_v] = P_{A v}, for X in spin(9) inside so(16)."""
    P = spin9_clifford_generators()
    X = np.asarray(X, dtype=float)
    # unknown A (9x9): [X, P_b] = sum_a A[a, b] P_a
    Pflat = P.reshape(9, -1).T
    rhs = np.array([(X @ P[b] - P[b] @ X).ravel() for b in range(9)]).T
    A, *_ = np.linalg.lstsq(Pflat, rhs, rcond=None)
    res = np.abs(Pflat @ A - rhs).max() if rhs.size else 0.0
    if res > tol.rel_eps * max(1.0, np.abs(rhs).max()):
        raise NumericalError(f"element is not in spin(9) (residual {res:.2e})")
    return A


@lru_cache(maxsize=None)
def _triality_system():
    """Matrix of (B, C) -> (B(e_i) e_j + e_i C(e_j))_{i,j} and its pseudo-inverse."""
    T = OCTONIONS.mult_table
    basis = so_basis(8)
    cols = []
    for E in basis:
        cols.append(np.einsum("mi,mjl->ijl", E, T).ravel())
    for E in basis:
        cols.append(np.einsum("mj,iml->ijl", E, T).ravel())
    M = np.array(cols).T
    if np.linalg.matrix_rank(M) != 56:
        raise NumericalError("local triality system is not uniquely solvable")
    return basis, M, np.linalg.pinv(M)


def triality_images(A, tol=DEFAULT_TOL):
    """The unique (B, C) in so(8)^2 with A(xy) = B(x) y + x C(y) for all octonions.

    Raises:
        NumericalError: if no such pair exists (A is not in so(8)).
    """
    A = np.asarray(A, dtype=float)
    if A.shape != (8, 8):
        raise PreconditionError(f"triality needs an 8x8 matrix, got {A.shape}")
    basis, M, Minv = _triality_system()
    rhs = np.einsum("ijk,lk->ijl", OCTONIONS.mult_table, A).ravel()
    sol = Minv @ rhs
    res = np.abs(M @ sol - rhs).max()
    if res > tol.rel_eps * max(1.0, np.abs(A).max()):
        raise NumericalError(f"local triality system inconsistent (residual {res:.2e}); input not in so(8)")
    B = np.tensordot(sol[:28], basis, axes=1)
    C = np.tensordot(sol[28:], basis, axes=1)
    return B, C
