"""Products of compact symmetric spaces and their infinitesimal orbit maps.

A Type I factor G/K is stored as (g, theta) with k = fix(theta) and p the
(-1)-eigenspace; its isometry algebra g occupies one diagonal block of the
ambient algebra. A Type II factor is a simple group L with isometry algebra
l + l acting by (a, b).x = a x b^-1; it occupies two consecutive blocks (left,
right) and its tangent model is l itself, reached by right translation to the
identity.

Metrics are -trace per block. Cohomogeneity and flatness verdicts do not
depend on the relative scaling of factors, so no other normalization is made.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

import numpy as np

from symaction._validation import check_factor_subset, check_seed
from symaction.catalog.involutions import Automorphism, Involution
from symaction.liealg import (
    DEFAULT_TOL,
    AlgebraSubspace,
    MatrixLieAlgebra,
    PreconditionError,
    Tolerance,
    centralizer_in,
    matrix_exp,
)


def cartan_decomposition(algebra: MatrixLieAlgebra, theta: Automorphism):
    """Split ``algebra`` into the +1 and -1 eigenspaces (k, p) of ``theta``.

    Raises:
        PreconditionError: if ``theta`` does not square to the identity.
    """
    if theta.algebra is not algebra and theta.algebra.dim != algebra.dim:
        raise PreconditionError("involution acts on a different algebra")
    M = theta.matrix
    res = float(np.abs(M @ M - np.eye(algebra.dim)).max())
    if res > algebra.tol.rel_eps:
        raise PreconditionError(f"theta^2 != id (residual {res:.2e})")
    I = np.eye(algebra.dim)
    k = AlgebraSubspace.span(algebra, algebra.element(((I + M) / 2).T))
    p = AlgebraSubspace.span(algebra, algebra.element(((I - M) / 2).T))
    return k, p


def largest_ideal_in(sub: AlgebraSubspace, algebra: MatrixLieAlgebra) -> AlgebraSubspace:
    """Largest ad(algebra)-invariant subspace of ``sub``."""
    from symaction.liealg import kernel

    S = sub
    while S.dim:
        # Y in S with [X, Y] in S for every basis X
        blocks = []
        for X in algebra.basis:
            img = (X @ S.basis - S.basis @ X).reshape(S.dim, -1)
            off = img - (img @ S.flat.T) @ S.flat
            blocks.append(off.T)
        nxt = kernel(S, np.vstack(blocks))
        if nxt.dim == S.dim:
            return S
        S = nxt
    return S


class SpaceFactor:
    kind: str
    algebra: MatrixLieAlgebra
    name: str

    @property
    def dim(self) -> int:
        return self.p_basis.shape[0]

    @property
    def block_algebras(self) -> list[MatrixLieAlgebra]:
        raise NotImplementedError

    @property
    def isometry_dim(self) -> int:
        return sum(a.dim for a in self.block_algebras)

    def __repr__(self):
        return f"{type(self).__name__}({self.name})"


class TypeI(SpaceFactor):
    """Irreducible G/K given by an involution theta of g, K = fix(theta)."""

    kind = "I"

    def __init__(self, involution: Involution, name: str | None = None, check: bool = True):
        self.involution = involution
        self.algebra = involution.algebra
        self.k, self.p = cartan_decomposition(self.algebra, involution)
        self.name = name or f"{self.algebra.name}/{involution.name}"
        if check:
            ideal = largest_ideal_in(self.k, self.algebra)
            if ideal.dim:
                raise PreconditionError(
                    f"{self.name}: k contains a {ideal.dim}-dim ideal of g (presentation not almost effective)"
                )

    @property
    def p_basis(self):
        return self.p.basis

    @property
    def block_algebras(self):
        return [self.algebra]

    def cartan_residuals(self) -> dict:
        """Relative components violating [k,k] in k, [k,p] in p, [p,p] in k."""
        def leak(A, B, target):
            worst = 0.0
            for X in A.basis:
                imgs = (X @ B.basis - B.basis @ X).reshape(B.dim, -1)
                norms = np.linalg.norm(imgs, axis=1)
                off = imgs - (imgs @ target.flat.T) @ target.flat
                mask = norms > 1e-12
                if np.any(mask):
                    worst = max(worst, float(np.max(np.linalg.norm(off[mask], axis=1) / norms[mask])))
            return worst

        return {
            "kk": leak(self.k, self.k, self.k),
            "kp": leak(self.k, self.p, self.p),
            "pp": leak(self.p, self.p, self.k),
        }


class TypeII(SpaceFactor):
    """Simple compact group L with bi-invariant metric, acted on by l + l."""

    kind = "II"

    def __init__(self, algebra: MatrixLieAlgebra, name: str | None = None):
        self.algebra = algebra
        self.name = name or algebra.name

    @property
    def p_basis(self):
        return self.algebra.basis

    @property
    def block_algebras(self):
        return [self.algebra, self.algebra]


@dataclass(frozen=True)
class Block:
    factor: int
    side: str  # "g" for Type I, "left"/"right" for Type II
    algebra: MatrixLieAlgebra
    offset: int

    @property
    def size(self):
        return self.algebra.ambient_size

    @property
    def slice(self):
        return slice(self.offset, self.offset + self.size)


class ProductSpace:
    """Ordered product of Type I / Type II factors with block-diagonal ambient algebra."""

    def __init__(self, factors: Sequence[SpaceFactor]):
        if not factors:
            raise ValueError("a product space needs at least one factor")
        self.factors = tuple(factors)
        blocks = []
        offset = 0
        for i, f in enumerate(self.factors):
            sides = ("g",) if f.kind == "I" else ("left", "right")
            for side, alg in zip(sides, f.block_algebras):
                blocks.append(Block(i, side, alg, offset))
                offset += alg.ambient_size
        self.blocks = tuple(blocks)
        self.ambient_size = offset

    def __len__(self):
        return len(self.factors)

    def __repr__(self):
        return "ProductSpace(" + " x ".join(f.name for f in self.factors) + ")"

    @property
    def dim(self) -> int:
        return sum(f.dim for f in self.factors)

    @property
    def factor_dims(self) -> list[int]:
        return [f.dim for f in self.factors]

    @cached_property
    def ambient(self) -> MatrixLieAlgebra:
        """Direct sum of the block algebras (isometry algebra of the product)."""
        return MatrixLieAlgebra.direct_sum([b.algebra for b in self.blocks], name=f"isom{self!r}")

    def blocks_of(self, i) -> list[Block]:
        return [b for b in self.blocks if b.factor == i]

    def block(self, i, side) -> Block:
        for b in self.blocks:
            if b.factor == i and b.side == side:
                return b
        raise KeyError((i, side))

    def embed(self, parts: dict) -> np.ndarray:
        """Assemble one ambient element from ``{(factor, side): matrix}``."""
        M = np.zeros((self.ambient_size, self.ambient_size))
        for (i, side), X in parts.items():
            b = self.block(i, side)
            M[b.slice, b.slice] = X
        return M

    def sub_blocks(self, mats, subset) -> np.ndarray:
        """Restrict ambient elements to the blocks of the factors in ``subset``."""
        mats = np.asarray(mats, dtype=float).reshape(-1, self.ambient_size, self.ambient_size)
        sub = self.subproduct(subset)
        out = np.zeros((len(mats), sub.ambient_size, sub.ambient_size))
        for new_i, i in enumerate(sorted(subset)):
            for b in self.blocks_of(i):
                nb = sub.block(new_i, b.side)
                out[:, nb.slice, nb.slice] = mats[:, b.slice, b.slice]
        return out

    def subproduct(self, subset) -> "ProductSpace":
        idx = check_factor_subset(subset, len(self.factors))
        return ProductSpace([self.factors[i] for i in idx])

    def replace(self, i, new_factors) -> "ProductSpace":
        fs = list(self.factors)
        fs[i:i + 1] = list(new_factors)
        return ProductSpace(fs)


@dataclass(frozen=True)
class PointSample:
    """A point of a product space: one group element per factor.

    For Type I factors the element g stands for the coset gK; for Type II it
    is the point itself. ``generators`` holds the Z with g = exp(Z), ``seed``
    the generator seed it was drawn with (``None`` for the base point).
    """

    elements: tuple
    generators: tuple
    seed: int | None = None
    index: int = 0

    def restrict(self, subset) -> "PointSample":
        idx = sorted(subset)
        return PointSample(
            tuple(self.elements[i] for i in idx),
            tuple(self.generators[i] for i in idx),
            self.seed,
            self.index,
        )

    def residual(self) -> float:
        """Largest deviation of an element from orthogonality."""
        return max(float(np.abs(g.T @ g - np.eye(len(g))).max()) for g in self.elements)


def base_point(space: ProductSpace) -> PointSample:
    gens = tuple(np.zeros((f.algebra.ambient_size,) * 2) for f in space.factors)
    return PointSample(tuple(np.eye(len(z)) for z in gens), gens, None)


def sample_point(space: ProductSpace, rng: np.random.Generator, seed=None, index=0) -> PointSample:
    """Random point g_i = exp(Z_i), Z_i with standard normal coordinates in g_i (or l_i)."""
    gens = []
    for f in space.factors:
        gens.append(f.algebra.element(rng.standard_normal(f.algebra.dim)))
    return PointSample(tuple(matrix_exp(Z) for Z in gens), tuple(gens), seed, index)


def sample_points(space: ProductSpace, seed, count: int) -> list[PointSample]:
    seed = check_seed(seed)
    rng = np.random.default_rng(seed)
    return [sample_point(space, rng, seed, j) for j in range(count)]


class OrbitMap:
    """Linear map from the ambient isometry algebra to the tangent model at a point.

    Type II factor at g: (X1, X2) -> X1 - Ad(g) X2 in l.
    Type I factor at gK: X -> proj_p(Ad(g^-1) X) in p.
    Images are returned as coordinates in the concatenated orthonormal bases
    of the factors' tangent models.
    """

    def __init__(self, space: ProductSpace, point: PointSample):
        if len(point.elements) != len(space.factors):
            raise ValueError(
                f"point has {len(point.elements)} components, space has {len(space.factors)} factors"
            )
        for f, g in zip(space.factors, point.elements):
            if g.shape != (f.algebra.ambient_size,) * 2:
                raise ValueError(f"point component of shape {g.shape} does not fit factor {f.name}")
        self.space = space
        self.point = point

    def on(self, mats) -> np.ndarray:
        """Images of a stack of ambient elements, shape (k, dim M)."""
        sp = self.space
        mats = np.asarray(mats, dtype=float).reshape(-1, sp.ambient_size, sp.ambient_size)
        k = len(mats)
        cols = []
        for i, (f, g) in enumerate(zip(sp.factors, self.point.elements)):
            if f.kind == "I":
                b = sp.block(i, "g")
                X = mats[:, b.slice, b.slice]
                Y = g.T @ X @ g
                P = f.p_basis.reshape(f.dim, -1)
            else:
                bl, br = sp.block(i, "left"), sp.block(i, "right")
                Y = mats[:, bl.slice, bl.slice] - g @ mats[:, br.slice, br.slice] @ g.T
                P = f.algebra.flat
            cols.append(Y.reshape(k, -1) @ P.T)
        return np.hstack(cols)

    def __call__(self, X) -> np.ndarray:
        return self.on(np.asarray(X)[None])[0]

    def tangent_matrices(self, coords) -> list[np.ndarray]:
        """Split tangent-model coordinates into per-factor matrices (in p_i or l_i)."""
        coords = np.asarray(coords, dtype=float)
        out = []
        start = 0
        for f in self.space.factors:
            c = coords[..., start:start + f.dim]
            out.append(np.tensordot(c, f.p_basis, axes=(c.ndim - 1, 0)))
            start += f.dim
        return out


def orbit_map_at(space: ProductSpace, point: PointSample) -> OrbitMap:
    return OrbitMap(space, point)


def factor_rank(factor: SpaceFactor, rng: np.random.Generator, samples: int = 5,
                tol: Tolerance = DEFAULT_TOL) -> int:
    """Rank as the minimal centralizer dimension of random tangent vectors."""
    if factor.kind == "I":
        p = factor.p
    else:
        p = factor.algebra.full()
    best = None
    for _ in range(samples):
        X = p.parent.element(rng.standard_normal(p.dim) @ p.parent_coords())
        c = centralizer_in(p, X).dim
        best = c if best is None else min(best, c)
    return int(best)


def space_rank(space: ProductSpace, seed=0, samples: int = 5, tol: Tolerance = DEFAULT_TOL) -> int:
    """Sum over factors of the generic centralizer dimension in p_i (min over samples)."""
    rng = np.random.default_rng(check_seed(seed))
    return sum(factor_rank(f, rng, samples, tol) for f in space.factors)


def sphere(n: int) -> TypeI:
    """S^n = SO(n+1)/SO(n)."""
    from symaction.catalog.involutions import build_involution

    return TypeI(build_involution(f"BDI({n},1)"), name=f"S^{n}")
