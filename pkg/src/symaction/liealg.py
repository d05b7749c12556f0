"""Dense real matrix Lie algebras and tolerance-governed subspace numerics.

Every algebra handled here is a subalgebra of some so(N): complex and
quaternionic matrices are realified before they get here. On skew-symmetric
matrices the invariant form mu(X, Y) = -trace(XY) coincides with the Frobenius
inner product, so orthonormal bases in the Frobenius sense are mu-orthonormal
and coordinates can be handled with plain Euclidean linear algebra.

Equality and containment of subspaces are always decided by numerical rank of
stacked bases, never by entrywise comparison.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from symaction._validation import check_matrices, check_matrix


class DimensionError(ValueError):
    """Operands have incompatible matrix sizes."""


class PreconditionError(ValueError):
    """A mathematical precondition of an operation does not hold."""


class NumericalError(ArithmeticError):
    """A linear system or decomposition failed beyond tolerance."""


@dataclass(frozen=True)
class Tolerance:
    """Singular-value cutoffs used for every rank decision.

    ``rel_eps`` is relative to the largest singular value of the family being
    ranked; ``abs_eps`` decides when a whole family counts as zero.
    """

    rel_eps: float = 1e-8
    abs_eps: float = 1e-10

    def __post_init__(self):
        if not (0 < self.abs_eps <= self.rel_eps < 1):
            raise ValueError(
                f"need 0 < abs_eps <= rel_eps < 1, got abs_eps={self.abs_eps}, "
                f"rel_eps={self.rel_eps}"
            )


DEFAULT_TOL = Tolerance()


def bracket(X, Y):
    """Matrix commutator ``XY - YX``."""
    X = check_matrix(X, "X")
    Y = check_matrix(Y, "Y")
    if X.shape != Y.shape:
        raise DimensionError(f"cannot bracket {X.shape} with {Y.shape}")
    return X @ Y - Y @ X


def inner(X, Y):
    """Invariant form mu(X, Y) = -trace(XY)."""
    return -float(np.trace(X @ Y))


def _rank_from_singular_values(s, tol: Tolerance) -> int:
    if s.size == 0 or s[0] <= tol.abs_eps:
        return 0
    return int(np.count_nonzero(s > tol.rel_eps * s[0]))


def _as_rows(vectors) -> np.ndarray:
    arr = np.asarray(vectors, dtype=float)
    if arr.ndim == 1:
        return arr[None, :]
    return arr.reshape(arr.shape[0], -1)


def numerical_rank(vectors, tol: Tolerance = DEFAULT_TOL) -> int:
    """Rank of a family of equally sized matrices (or vectors).

    Raises:
        ValueError: if the family is empty.
    """
    if len(vectors) == 0:
        raise ValueError("numerical_rank needs a nonempty family")
    rows = _as_rows(vectors)
    if not np.all(np.isfinite(rows)):
        raise ValueError("family contains non-finite entries")
    s = np.linalg.svd(rows, compute_uv=False)
    return _rank_from_singular_values(s, tol)


def orthonormal_rows(vectors, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """Orthonormal basis (as rows) of the span of a family of vectors."""
    rows = _as_rows(vectors)
    if rows.shape[0] == 0:
        return np.zeros((0, rows.shape[1]))
    _, s, vt = np.linalg.svd(rows, full_matrices=False)
    r = _rank_from_singular_values(s, tol)
    return vt[:r].copy()


def null_space(matrix, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """Orthonormal basis of ``{x : matrix @ x = 0}``, returned as rows.

    The cutoff is relative to the largest singular value of ``matrix``; an
    all-zero map (below ``abs_eps``) has the whole domain as kernel.
    """
    A = np.atleast_2d(np.asarray(matrix, dtype=float))
    n = A.shape[1]
    if A.shape[0] == 0:
        return np.eye(n)
    # a tall map already yields the full right-singular basis without the big U
    _, s, vt = np.linalg.svd(A, full_matrices=A.shape[0] < n)
    r = _rank_from_singular_values(s, tol)
    return vt[r:].copy()


class MatrixLieAlgebra:
    """Real matrix Lie algebra inside so(n), held through a mu-orthonormal basis.

    The basis passed in is orthonormalized; the span is what matters. With
    ``check=True`` the constructor verifies skew-symmetry, linear independence
    and bracket closure at ``tol``.
    """

    def __init__(self, basis, name: str | None = None, tol: Tolerance = DEFAULT_TOL,
                 check: bool = True):
        mats = check_matrices(basis, "basis")
        k, n, _ = mats.shape
        skew = np.abs(mats + mats.transpose(0, 2, 1)).max() if k else 0.0
        scale = max(np.abs(mats).max() if k else 0.0, 1.0)
        if skew > tol.rel_eps * scale:
            raise PreconditionError(
                f"basis is not skew-symmetric (residual {skew:.2e}); realify first"
            )
        rows = orthonormal_rows(mats, tol)
        if rows.shape[0] != k:
            raise PreconditionError(
                f"basis of {k} matrices has numerical rank {rows.shape[0]}"
            )
        self.ambient_size = n
        self.basis = rows.reshape(k, n, n)
        self.name = name or f"algebra(dim={k}, n={n})"
        self.tol = tol
        if check and k:
            res = self.closure_residual()
            if res > tol.rel_eps:
                raise PreconditionError(
                    f"{self.name}: not closed under brackets (residual {res:.2e})"
                )

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    @property
    def flat(self) -> np.ndarray:
        return self.basis.reshape(self.dim, -1)

    def __repr__(self):
        return f"MatrixLieAlgebra({self.name!r}, dim={self.dim}, n={self.ambient_size})"

    def coords(self, X) -> np.ndarray:
        """mu-orthogonal projection coordinates of one or several matrices."""
        X = np.asarray(X, dtype=float)
        if X.ndim == 2:
            return self.flat @ X.ravel()
        return X.reshape(X.shape[0], -1) @ self.flat.T

    def element(self, coords) -> np.ndarray:
        c = np.asarray(coords, dtype=float)
        return np.tensordot(c, self.basis, axes=(c.ndim - 1, 0))

    def residual(self, X) -> float:
        """Relative distance of ``X`` from the span (0 for members)."""
        X = np.asarray(X, dtype=float)
        if X.shape != (self.ambient_size, self.ambient_size):
            raise DimensionError(
                f"{X.shape} matrix is not in a {self.ambient_size}x{self.ambient_size} algebra"
            )
        norm = np.linalg.norm(X)
        if norm <= self.tol.abs_eps:
            return 0.0
        return float(np.linalg.norm(X - self.element(self.coords(X))) / norm)

    def contains(self, X, tol: Tolerance | None = None) -> bool:
        return self.residual(X) <= (tol or self.tol).rel_eps

    def closure_residual(self) -> float:
        return _closure_residual(self.basis, self.flat, self.tol)

    def full(self) -> "AlgebraSubspace":
        return AlgebraSubspace(self, self.basis, check=False)

    @classmethod
    def direct_sum(cls, algebras: Sequence["MatrixLieAlgebra"], name=None,
                   tol: Tolerance = DEFAULT_TOL) -> "MatrixLieAlgebra":
        """Block-diagonal direct sum, blocks in the given order."""
        sizes = [a.ambient_size for a in algebras]
        N = sum(sizes)
        mats = []
        offset = 0
        for alg, n in zip(algebras, sizes):
            for B in alg.basis:
                M = np.zeros((N, N))
                M[offset:offset + n, offset:offset + n] = B
                mats.append(M)
            offset += n
        out = cls.__new__(cls)
        out.ambient_size = N
        out.basis = np.array(mats).reshape(len(mats), N, N)
        out.name = name or " + ".join(a.name for a in algebras)
        out.tol = tol
        return out


def _closure_residual(basis: np.ndarray, flat: np.ndarray, tol: Tolerance) -> float:
    """Largest relative component of [B_i, B_j] outside span(basis)."""
    k = basis.shape[0]
    worst = 0.0
    for i in range(k):
        prods = basis[i] @ basis[i + 1:] - basis[i + 1:] @ basis[i]
        if prods.shape[0] == 0:
            continue
        P = prods.reshape(prods.shape[0], -1)
        norms = np.linalg.norm(P, axis=1)
        off = P - (P @ flat.T) @ flat
        mask = norms > tol.abs_eps
        if np.any(mask):
            worst = max(worst, float(np.max(np.linalg.norm(off[mask], axis=1) / norms[mask])))
    return worst


class AlgebraSubspace:
    """Linear subspace of a parent algebra, held through a mu-orthonormal basis."""

    def __init__(self, parent: MatrixLieAlgebra, basis, check: bool = True,
                 tol: Tolerance | None = None):
        self.parent = parent
        self.tol = tol or parent.tol
        n = parent.ambient_size
        mats = np.asarray(basis, dtype=float).reshape(-1, n, n)
        if check and mats.shape[0]:
            for i, X in enumerate(mats):
                res = parent.residual(X)
                if res > self.tol.rel_eps:
                    raise PreconditionError(
                        f"element {i} lies outside {parent.name} (residual {res:.2e})"
                    )
        flat = mats.reshape(mats.shape[0], n * n)
        if mats.shape[0] == 0:
            rows = np.zeros((0, n * n))
        elif np.abs(flat @ flat.T - np.eye(len(flat))).max() < 1e-12:
            # keep an orthonormal basis as given so coordinates stay aligned
            rows = flat.copy()
        else:
            rows = orthonormal_rows(mats, self.tol)
        if check and rows.shape[0] != mats.shape[0]:
            raise PreconditionError(
                f"{mats.shape[0]} spanning matrices have rank {rows.shape[0]}"
            )
        self.basis = rows.reshape(-1, n, n)

    @classmethod
    def span(cls, parent: MatrixLieAlgebra, mats, tol: Tolerance | None = None):
        """Subspace spanned by a possibly dependent family."""
        tol = tol or parent.tol
        n = parent.ambient_size
        mats = np.asarray(mats, dtype=float).reshape(-1, n, n)
        rows = orthonormal_rows(mats, tol) if mats.shape[0] else np.zeros((0, n * n))
        return cls(parent, rows.reshape(-1, n, n), check=False, tol=tol)

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    @property
    def flat(self) -> np.ndarray:
        return self.basis.reshape(self.dim, -1)

    def __repr__(self):
        return f"AlgebraSubspace(dim={self.dim} in {self.parent.name})"

    def parent_coords(self) -> np.ndarray:
        """Basis expressed in the parent's orthonormal coordinates, (dim, parent.dim)."""
        return self.flat @ self.parent.flat.T

    def contains(self, X) -> bool:
        X = np.asarray(X, dtype=float)
        norm = np.linalg.norm(X)
        if norm <= self.tol.abs_eps:
            return True
        v = X.ravel()
        off = v - (self.flat @ v) @ self.flat
        return np.linalg.norm(off) / norm <= self.tol.rel_eps

    def contains_subspace(self, other: "AlgebraSubspace") -> bool:
        return all(self.contains(X) for X in other.basis)

    def same_span(self, other: "AlgebraSubspace") -> bool:
        if self.dim != other.dim:
            return False
        if self.dim == 0:
            return True
        stacked = np.vstack([self.flat, other.flat])
        return numerical_rank(stacked, self.tol) == self.dim

    def closure_residual(self) -> float:
        if self.dim == 0:
            return 0.0
        return _closure_residual(self.basis, self.flat, self.tol)

    def is_subalgebra(self) -> bool:
        return self.closure_residual() <= self.tol.rel_eps


def _check_same_parent(S: AlgebraSubspace, T: AlgebraSubspace):
    if S.parent is not T.parent and S.parent.ambient_size != T.parent.ambient_size:
        raise ValueError("subspaces live in different parent algebras")


def orthocomplement(S: AlgebraSubspace) -> AlgebraSubspace:
    """mu-orthogonal complement of ``S`` inside its parent."""
    C = S.parent_coords()
    kern = null_space(C, S.tol) if S.dim else np.eye(S.parent.dim)
    mats = S.parent.element(kern) if kern.shape[0] else np.zeros((0,) + S.basis.shape[1:])
    return AlgebraSubspace(S.parent, mats, check=False, tol=S.tol)


def intersect(S: AlgebraSubspace, T: AlgebraSubspace) -> AlgebraSubspace:
    """Intersection via the kernel of (a, b) -> a.S - b.T on stacked bases."""
    _check_same_parent(S, T)
    n = S.parent.ambient_size
    if S.dim == 0 or T.dim == 0:
        return AlgebraSubspace(S.parent, np.zeros((0, n, n)), check=False, tol=S.tol)
    stacked = np.vstack([S.flat, -T.flat]).T
    kern = null_space(stacked, S.tol)
    mats = kern[:, :S.dim] @ S.flat
    return AlgebraSubspace.span(S.parent, mats.reshape(-1, n, n), S.tol)


def subspace_sum(S: AlgebraSubspace, T: AlgebraSubspace) -> AlgebraSubspace:
    _check_same_parent(S, T)
    return AlgebraSubspace.span(S.parent, np.concatenate([S.basis, T.basis]), S.tol)


def kernel(S: AlgebraSubspace, matrix) -> AlgebraSubspace:
    """Kernel of a linear map given on the basis of ``S``.

    Args:
        S: domain subspace.
        matrix: array of shape (m, S.dim); column j is the image of basis
            element j in some real coordinate space.
    """
    A = np.asarray(matrix, dtype=float)
    if A.ndim != 2 or A.shape[1] != S.dim:
        raise DimensionError(f"map of shape {A.shape} does not act on a {S.dim}-dim space")
    kern = null_space(A, S.tol) if S.dim else np.zeros((0, 0))
    n = S.parent.ambient_size
    mats = (kern @ S.flat).reshape(-1, n, n) if kern.shape[0] else np.zeros((0, n, n))
    return AlgebraSubspace(S.parent, mats, check=False, tol=S.tol)


def centralizer_in(S: AlgebraSubspace, X) -> AlgebraSubspace:
    """``{Y in S : [X, Y] = 0}``.

    Raises:
        PreconditionError: if ``X`` is not in the parent algebra.
    """
    X = np.asarray(X, dtype=float)
    if not S.parent.contains(X):
        raise PreconditionError("X is outside the parent algebra")
    if S.dim == 0:
        return S
    images = X @ S.basis - S.basis @ X
    return kernel(S, images.reshape(S.dim, -1).T)


def centralizer_of(S: AlgebraSubspace, T: AlgebraSubspace) -> AlgebraSubspace:
    """Elements of ``S`` commuting with every element of ``T``."""
    if S.dim == 0 or T.dim == 0:
        return S
    blocks = [(X @ S.basis - S.basis @ X).reshape(S.dim, -1).T for X in T.basis]
    return kernel(S, np.vstack(blocks))


def flatness_residual(mats) -> float:
    """Largest ||[A, B]|| / (||A|| ||B||) over pairs of a family."""
    mats = np.asarray(mats, dtype=float)
    worst = 0.0
    for i in range(len(mats)):
        ni = np.linalg.norm(mats[i])
        for j in range(i + 1, len(mats)):
            nj = np.linalg.norm(mats[j])
            if ni == 0 or nj == 0:
                continue
            c = mats[i] @ mats[j] - mats[j] @ mats[i]
            worst = max(worst, float(np.linalg.norm(c) / (ni * nj)))
    return worst


def is_abelian(S: AlgebraSubspace) -> bool:
    return flatness_residual(S.basis) <= S.tol.rel_eps


# Pade(13) coefficients and the 1-norm/inf-norm threshold theta_13.
_PADE13 = (
    64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
    1187353796428800.0, 129060195264000.0, 10559470521600.0,
    670442572800.0, 33522128640.0, 1323241920.0, 40840800.0,
    960960.0, 16380.0, 182.0, 1.0,
)
_THETA13 = 5.371920351148152


def matrix_exp(X) -> np.ndarray:
    """Matrix exponential by scaling and squaring with a degree-13 Pade approximant."""
    A = check_matrix(X, "X")
    n = A.shape[0]
    norm = np.linalg.norm(A, np.inf)
    s = 0
    if norm > _THETA13:
        s = int(np.ceil(np.log2(norm / _THETA13)))
    A = A / (2.0 ** s)
    b = _PADE13
    ident = np.eye(n)
    A2 = A @ A
    A4 = A2 @ A2
    A6 = A4 @ A2
    U = A @ (A6 @ (b[13] * A6 + b[11] * A4 + b[9] * A2)
             + b[7] * A6 + b[5] * A4 + b[3] * A2 + b[1] * ident)
    V = (A6 @ (b[12] * A6 + b[10] * A4 + b[8] * A2)
         + b[6] * A6 + b[4] * A4 + b[2] * A2 + b[0] * ident)
    R = np.linalg.solve(V - U, V + U)
    for _ in range(s):
        R = R @ R
    return R
