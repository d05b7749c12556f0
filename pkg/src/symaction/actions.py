"""Isometric actions on product spaces and the constructions between them.

An action is a subalgebra h of the ambient isometry algebra of a
:class:`~symaction.spaces.ProductSpace`. Everything is decided at the Lie
algebra level, so groups are implicitly connected and taken up to coverings.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from symaction._validation import check_factor_index, check_factor_subset
from symaction.catalog.involutions import Automorphism, Involution, build_involution
from symaction.liealg import (
    AlgebraSubspace,
    MatrixLieAlgebra,
    PreconditionError,
    kernel,
    numerical_rank,
)
from symaction.spaces import (
    PointSample,
    ProductSpace,
    TypeI,
    TypeII,
    base_point,
    orbit_map_at,
)


class ActionModel:
    """Subalgebra ``h`` of the isometry algebra of ``space``.

    ``generators`` may be linearly dependent; the span is taken. With
    ``check=True`` membership in the ambient algebra and bracket closure are
    verified.
    """

    def __init__(self, space: ProductSpace, generators, name: str = "action",
                 notes: Sequence[str] = (), check: bool = True):
        N = space.ambient_size
        mats = np.asarray(generators, dtype=float).reshape(-1, N, N)
        self.space = space
        self.name = name
        self.notes = tuple(notes)
        if check:
            _check_in_ambient(space, mats)
        self.h = AlgebraSubspace.span(space.ambient, mats) if len(mats) else \
            AlgebraSubspace(space.ambient, np.zeros((0, N, N)), check=False)
        if check:
            res = self.h.closure_residual()
            if res > self.h.tol.rel_eps:
                raise PreconditionError(f"{name}: generators do not span a subalgebra (residual {res:.2e})")

    @property
    def dim(self) -> int:
        return self.h.dim

    def __repr__(self):
        return f"ActionModel({self.name!r}, dim h={self.dim}, on {self.space!r})"

    def renamed(self, name, note=None) -> "ActionModel":
        notes = self.notes + ((note,) if note else ())
        return ActionModel(self.space, self.h.basis, name=name, notes=notes, check=False)


def _check_in_ambient(space: ProductSpace, mats):
    """Blockwise membership test (cheaper than projecting on the whole ambient)."""
    tol = space.blocks[0].algebra.tol
    mask = np.zeros((space.ambient_size,) * 2, dtype=bool)
    for b in space.blocks:
        mask[b.slice, b.slice] = True
    for X in mats:
        norm = np.linalg.norm(X)
        if norm == 0:
            continue
        if np.linalg.norm(X[~mask]) > tol.rel_eps * norm:
            raise PreconditionError("generator has entries outside the diagonal blocks")
        for b in space.blocks:
            Y = X[b.slice, b.slice]
            if np.linalg.norm(Y) > tol.abs_eps and b.algebra.residual(Y) > tol.rel_eps:
                raise PreconditionError(
                    f"generator block ({b.factor}, {b.side}) is outside {b.algebra.name}"
                )


def _same_algebra(a: MatrixLieAlgebra, b: MatrixLieAlgebra) -> bool:
    if a is b:
        return True
    if a.ambient_size != b.ambient_size or a.dim != b.dim:
        return False
    return numerical_rank(np.vstack([a.flat, b.flat]), a.tol) == a.dim


def _transport(old: ProductSpace, new: ProductSpace, mats, mapping: dict) -> np.ndarray:
    """Copy blocks of ambient elements along ``{(i, side): (j, side')}``."""
    mats = np.asarray(mats, dtype=float).reshape(-1, old.ambient_size, old.ambient_size)
    out = np.zeros((len(mats), new.ambient_size, new.ambient_size))
    for (i, side), (j, side2) in mapping.items():
        b, nb = old.block(i, side), new.block(j, side2)
        out[:, nb.slice, nb.slice] = mats[:, b.slice, b.slice]
    return out


def restrict_action(action: ActionModel, sub, name=None) -> ActionModel:
    """Subaction of a subalgebra of h.

    Raises:
        PreconditionError: if ``sub`` is not contained in h.
    """
    mats = sub.basis if isinstance(sub, AlgebraSubspace) else np.asarray(sub, dtype=float)
    mats = mats.reshape(-1, action.space.ambient_size, action.space.ambient_size)
    for X in mats:
        if not action.h.contains(X):
            raise PreconditionError("restriction is not a subspace of h")
    return ActionModel(action.space, mats, name=name or f"{action.name}|sub", check=True)


def projection_action(action: ActionModel, subset) -> ActionModel:
    """The action of h on the subproduct of the factors in ``subset``."""
    idx = check_factor_subset(subset, len(action.space))
    sub = action.space.subproduct(idx)
    mats = action.space.sub_blocks(action.h.basis, idx)
    return ActionModel(sub, mats, name=f"{action.name}|proj{idx}", check=True)


def _point_on(action, subset, point):
    idx = sorted(subset)
    if point is None:
        return base_point(action.space.subproduct(idx))
    if len(point.elements) == len(action.space) and len(idx) != len(action.space):
        return point.restrict(idx)
    return point


def partial_isotropy(action: ActionModel, subset, point: PointSample | None = None) -> AlgebraSubspace:
    """Elements of h fixing ``point`` of the subproduct on ``subset`` (base point by default)."""
    idx = check_factor_subset(subset, len(action.space))
    sub = action.space.subproduct(idx)
    pt = _point_on(action, idx, point)
    if action.dim == 0:
        return action.h
    images = orbit_map_at(sub, pt).on(action.space.sub_blocks(action.h.basis, idx))
    return kernel(action.h, images.T)


def intersection_action(action: ActionModel, subset, point: PointSample | None = None) -> ActionModel:
    """Partial isotropy at a point of the ``subset`` factors, acting on the other factors."""
    idx = check_factor_subset(subset, len(action.space))
    rest = [j for j in range(len(action.space)) if j not in idx]
    if not rest:
        raise ValueError("intersection action needs a nonempty complementary set of factors")
    iso = partial_isotropy(action, idx, point)
    sub = action.space.subproduct(rest)
    mats = action.space.sub_blocks(iso.basis, rest)
    return ActionModel(sub, mats, name=f"{action.name}|iso{idx}->{rest}", check=True)


def expand_factor(action: ActionModel, i: int) -> ActionModel:
    """Expand factor ``i``: G/K becomes G with K acting on the right; L becomes L x L.

    For a Type I factor the new algebra is h + k_i with k_i on the right block.
    For a Type II factor L the new factors are (L, L); h's left and right
    blocks become the left blocks of the two copies and the diagonal of l acts
    on both right blocks.
    """
    sp = action.space
    i = check_factor_index(i, len(sp))
    f = sp.factors[i]
    if f.kind == "I":
        new = sp.replace(i, [TypeII(f.algebra, name=f.algebra.name)])
        mapping = {(b.factor, b.side): (b.factor, b.side) for b in sp.blocks if b.factor != i}
        mapping[(i, "g")] = (i, "left")
        extra = np.array([new.embed({(i, "right"): K}) for K in f.k.basis]).reshape(
            -1, new.ambient_size, new.ambient_size)
        label = f"expand {f.name} by {f.involution.name}"
    else:
        new = sp.replace(i, [TypeII(f.algebra, name=f.name), TypeII(f.algebra, name=f.name)])
        mapping = {}
        for b in sp.blocks:
            if b.factor < i:
                mapping[(b.factor, b.side)] = (b.factor, b.side)
            elif b.factor > i:
                mapping[(b.factor, b.side)] = (b.factor + 1, b.side)
        mapping[(i, "left")] = (i, "left")
        mapping[(i, "right")] = (i + 1, "left")
        extra = np.array([new.embed({(i, "right"): Y, (i + 1, "right"): Y}) for Y in f.algebra.basis])
        label = f"expand {f.name} into {f.name} x {f.name}"
    mats = np.concatenate([_transport(sp, new, action.h.basis, mapping), extra])
    return ActionModel(new, mats, name=f"{action.name}+exp{i}", notes=action.notes + (label,),
                       check=False)


def reduce_factor(action: ActionModel, i, involution: Involution | str | None = None,
                  side: str = "right") -> ActionModel:
    """Undo an expansion after verifying the declared split h = h' + k.

    Two forms:

    * ``reduce_factor(A, i, theta, side)``: factor ``i`` is Type II, k = fix(theta)
      acts alone on the ``side`` block; the factor becomes the Type I space G/K.
    * ``reduce_factor(A, (i, j))``: factors ``i`` and ``j`` are copies of the same
      L and k = diagonal of l acts on both right blocks; they merge into one L.

    Raises:
        PreconditionError: if the split cannot be verified (the action is
            irreducible at this factor).
    """
    sp = action.space
    if isinstance(i, tuple):
        return _reduce_pair(action, *i)
    i = check_factor_index(i, len(sp))
    if involution is None:
        raise ValueError("reducing a single factor needs the involution defining k")
    if isinstance(involution, str):
        involution = build_involution(involution)
    if side not in ("left", "right"):
        raise ValueError(f"side must be 'left' or 'right', got {side!r}")
    f = sp.factors[i]
    if f.kind != "II":
        raise PreconditionError(f"factor {i} ({f.name}) is not a Type II factor")
    if not _same_algebra(f.algebra, involution.algebra):
        raise PreconditionError(f"{involution.name} does not act on {f.name}")
    other = "left" if side == "right" else "right"
    k = involution.fixed()
    k_mats = np.array([sp.embed({(i, side): K}) for K in k.basis])
    h_prime = _split(action, k_mats, [(i, side)])
    new = sp.replace(i, [TypeI(involution, check=False)])
    mapping = {(b.factor, b.side): (b.factor, b.side) for b in sp.blocks if b.factor != i}
    mapping[(i, other)] = (i, "g")
    mats = _transport(sp, new, h_prime.basis, mapping)
    return ActionModel(new, mats, name=f"{action.name}-red{i}",
                       notes=action.notes + (f"reduce {f.name} by {involution.name}",), check=True)


def _reduce_pair(action, i, j):
    sp = action.space
    i = check_factor_index(i, len(sp))
    j = check_factor_index(j, len(sp))
    fi, fj = sp.factors[i], sp.factors[j]
    if i == j or fi.kind != "II" or fj.kind != "II" or not _same_algebra(fi.algebra, fj.algebra):
        raise PreconditionError("pair reduction needs two distinct copies of the same Type II factor")
    k_mats = np.array([sp.embed({(i, "right"): Y, (j, "right"): Y}) for Y in fi.algebra.basis])
    h_prime = _split(action, k_mats, [(i, "right"), (j, "right")])
    fs = list(sp.factors)
    fs[i] = TypeII(fi.algebra, name=fi.name)
    del fs[j]
    new = ProductSpace(fs)

    def shift(f):
        return f - 1 if f > j else f

    mapping = {(b.factor, b.side): (shift(b.factor), b.side) for b in sp.blocks if b.factor not in (i, j)}
    mapping[(i, "left")] = (shift(i), "left")
    mapping[(j, "left")] = (shift(i), "right")
    mats = _transport(sp, new, h_prime.basis, mapping)
    return ActionModel(new, mats, name=f"{action.name}-red({i},{j})",
                       notes=action.notes + (f"merge factors {i},{j}",), check=True)


def _split(action, k_mats, blocks):
    """Verify h = h' + k with h' vanishing on ``blocks``; return h'."""
    sp = action.space
    for K in k_mats:
        if not action.h.contains(K):
            raise PreconditionError("declared symmetric subalgebra k is not contained in h")
    rows = []
    for (fi, side) in blocks:
        b = sp.block(fi, side)
        rows.append(action.h.basis[:, b.slice, b.slice].reshape(action.dim, -1).T)
    h_prime = kernel(action.h, np.vstack(rows))
    if h_prime.dim + len(k_mats) != action.dim:
        raise PreconditionError(
            f"h does not split as h' + k (dim h = {action.dim}, dim h' = {h_prime.dim}, dim k = {len(k_mats)})"
        )
    return h_prime


def group_lift(action: ActionModel) -> ActionModel:
    """Expand every Type I factor once."""
    out = action
    for i, f in enumerate(action.space.factors):
        if f.kind == "I":
            out = expand_factor(out, i)
    if out is action:
        return action
    return out.renamed(f"lift({action.name})")


@dataclass(frozen=True)
class HermannSpec:
    """h = fix(tau) acting on G/K with K = fix(sigma)."""

    tau: Involution
    sigma: Involution


def _as_involution(x):
    return build_involution(x) if isinstance(x, str) else x


def build_hermann(spec: HermannSpec | None = None, *, tau=None, sigma=None, name=None) -> ActionModel:
    """Hermann action fix(tau) on G/fix(sigma)."""
    if spec is not None:
        tau, sigma = spec.tau, spec.sigma
    tau, sigma = _as_involution(tau), _as_involution(sigma)
    if not _same_algebra(tau.algebra, sigma.algebra):
        raise ValueError(f"{tau.name} and {sigma.name} act on different algebras")
    space = ProductSpace([TypeI(sigma)])
    mats = np.array([space.embed({(0, "g"): X}) for X in tau.fixed().basis])
    return ActionModel(space, mats, name=name or f"hermann[{tau.name} on {sigma.name}]")


def _subalgebra_of(L: MatrixLieAlgebra, x) -> np.ndarray:
    if x is None:
        return np.zeros((0, L.ambient_size, L.ambient_size))
    if isinstance(x, str):
        x = build_involution(x)
    if isinstance(x, Involution):
        if not _same_algebra(x.algebra, L):
            raise ValueError(f"{x.name} does not act on {L.name}")
        return x.fixed().basis
    if isinstance(x, AlgebraSubspace):
        return x.basis
    return np.asarray(x, dtype=float).reshape(-1, L.ambient_size, L.ambient_size)


def build_sigma_action(L: MatrixLieAlgebra, n: int, sigma: Automorphism | None = None,
                       name=None) -> ActionModel:
    """L^n on L^n by (g_j x_j g_{j+1}^-1, ..., g_n x_n sigma(g_1)^-1)."""
    if n < 1:
        raise ValueError("n must be at least 1")
    if sigma is None:
        sigma = Automorphism.identity(L)
    if not _same_algebra(sigma.algebra, L):
        raise ValueError("sigma does not act on L")
    space = ProductSpace([TypeII(L, name=L.name) for _ in range(n)])
    mats = []
    for j in range(n):
        for X in L.basis:
            parts = {(j, "left"): X}
            if j > 0:
                parts[(j - 1, "right")] = X
            else:
                parts[(n - 1, "right")] = sigma(X)
            mats.append(space.embed(parts))
    return ActionModel(space, mats, name=name or f"sigma[{L.name}^{n}, {sigma.name}]")


def build_chain_action(L: MatrixLieAlgebra, n: int, h_left=None, k_right=None, name=None) -> ActionModel:
    """H x L^(n-1) x K on L^n by (h x_1 g_1^-1, g_1 x_2 g_2^-1, ..., g_(n-1) x_n k^-1).

    ``h_left`` and ``k_right`` are involutions (their fixed sets are used),
    involution identifiers, or explicit subalgebras of L.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    H = _subalgebra_of(L, h_left)
    K = _subalgebra_of(L, k_right)
    space = ProductSpace([TypeII(L, name=L.name) for _ in range(n)])
    mats = [space.embed({(0, "left"): X}) for X in H]
    for j in range(1, n):
        mats += [space.embed({(j - 1, "right"): X, (j, "left"): X}) for X in L.basis]
    mats += [space.embed({(n - 1, "right"): X}) for X in K]
    label = name or f"chain[{_label(h_left)} | {L.name}^{n} | {_label(k_right)}]"
    return ActionModel(space, np.array(mats).reshape(-1, space.ambient_size, space.ambient_size),
                       name=label)


def _label(x):
    if x is None:
        return "1"
    if isinstance(x, str):
        return x
    return getattr(x, "name", "sub")


def build_chain_reduced(L, n, h_left, k_right, reduce: str = "last", name=None) -> ActionModel:
    """Shapes obtained from the chain action by reducing the last ("last") or
    the first and the last ("both") factor."""
    tau, sigma = _as_involution(h_left), _as_involution(k_right)
    A = build_chain_action(L, n, tau, sigma)
    if reduce == "last":
        out = reduce_factor(A, n - 1, sigma, side="right")
    elif reduce == "both":
        if n < 2:
            raise ValueError("reducing both ends needs n >= 2")
        out = reduce_factor(reduce_factor(A, n - 1, sigma, side="right"), 0, tau, side="left")
    else:
        raise ValueError(f"reduce must be 'last' or 'both', got {reduce!r}")
    return out.renamed(name or f"{A.name}-reduced[{reduce}]")


def build_two_sided(L: MatrixLieAlgebra, left, right, name=None) -> ActionModel:
    """Subalgebras acting on L from the left and from the right."""
    return build_chain_action(L, 1, left, right, name=name)


def product_action(actions: Sequence[ActionModel], name=None) -> ActionModel:
    """Direct product of actions on the product of their spaces."""
    space = ProductSpace([f for a in actions for f in a.space.factors])
    mats = []
    start = 0
    for a in actions:
        mapping = {(b.factor, b.side): (b.factor + start, b.side) for b in a.space.blocks}
        mats.append(_transport(a.space, space, a.h.basis, mapping))
        start += len(a.space)
    return ActionModel(space, np.concatenate(mats), name=name or " x ".join(a.name for a in actions))
