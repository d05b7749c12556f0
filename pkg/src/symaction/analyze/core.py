"""Verdict engines: cohomogeneity, transitivity, hyperpolarity and friends.

All verdicts are computed at the Lie algebra level on seeded random points.
A point is taken as regular when its orbit has maximal dimension among the
samples drawn; the normal space there is the mu-orthogonal complement of the
orbit tangent inside the tangent model, and hyperpolarity is flatness of that
normal space (vanishing brackets factor by factor).
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field

import numpy as np
from sklearn.base import BaseEstimator

from symaction._validation import check_factor_subset, check_seed
from symaction.actions import ActionModel, intersection_action, projection_action
from symaction.catalog.embeddings import EmbeddingSpec
from symaction.liealg import (
    DEFAULT_TOL,
    AlgebraSubspace,
    MatrixLieAlgebra,
    Tolerance,
    intersect,
    matrix_exp,
    null_space,
    numerical_rank,
)
from symaction.spaces import OrbitMap, PointSample, sample_points, space_rank

N_SAMPLES = 5
MAX_SAMPLES = 40


def child_seeds(seed: int, count: int) -> list[int]:
    """Independent integer seeds split off ``seed``."""
    return [int(c.generate_state(1)[0]) for c in np.random.SeedSequence(seed).spawn(count)]


def orbit_images(action: ActionModel, point: PointSample) -> np.ndarray:
    """Orbit-map images of the basis of h at ``point``, shape (dim h, dim M)."""
    if action.dim == 0:
        return np.zeros((0, action.space.dim))
    return OrbitMap(action.space, point).on(action.h.basis)


def _rank(images, tol):
    if images.shape[0] == 0 or images.shape[1] == 0:
        return 0
    return numerical_rank(images, tol)


@dataclass(frozen=True)
class RegularPoint:
    point: PointSample
    orbit_dim: int
    ranks: tuple
    samples_used: int


def find_regular_point(action: ActionModel, seed=0, n_samples: int = N_SAMPLES,
                       max_samples: int = MAX_SAMPLES, tol: Tolerance = DEFAULT_TOL) -> RegularPoint:
    """Sample point of maximal orbit dimension.

    Starts with ``n_samples`` points; whenever a later sample beats the first
    one the run is repeated with twice as many points (same seed, so earlier
    draws are kept), up to ``max_samples``.
    """
    if n_samples < 1 or max_samples < n_samples:
        raise ValueError("need 1 <= n_samples <= max_samples")
    seed = check_seed(seed)
    count = n_samples
    while True:
        pts = sample_points(action.space, seed, count)
        ranks = tuple(_rank(orbit_images(action, p), tol) for p in pts)
        best = int(np.argmax(ranks))
        if max(ranks[1:], default=ranks[0]) <= ranks[0] or count >= max_samples:
            return RegularPoint(pts[best], ranks[best], ranks, count)
        count = min(2 * count, max_samples)


def cohomogeneity(action: ActionModel, seed=0, n_samples: int = N_SAMPLES,
                  max_samples: int = MAX_SAMPLES, tol: Tolerance = DEFAULT_TOL) -> int:
    """dim M minus the maximal sampled orbit dimension."""
    reg = find_regular_point(action, seed, n_samples, max_samples, tol)
    return action.space.dim - reg.orbit_dim


def normal_space(action: ActionModel, point: PointSample, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """Orthonormal coordinates (rows) of the normal space at ``point`` in the tangent model."""
    images = orbit_images(action, point)
    if images.shape[0] == 0:
        return np.eye(action.space.dim)
    return null_space(images, tol)


def normal_flatness_residual(action: ActionModel, point: PointSample, normal_rows) -> float:
    """Largest relative bracket of two normal vectors, summed over factors."""
    normal_rows = np.asarray(normal_rows, dtype=float)
    r = normal_rows.shape[0]
    if r < 2:
        return 0.0
    per_factor = OrbitMap(action.space, point).tangent_matrices(normal_rows)
    worst = 0.0
    norms = np.linalg.norm(normal_rows, axis=1)
    for i in range(r):
        for j in range(i + 1, r):
            sq = 0.0
            for V in per_factor:
                c = V[i] @ V[j] - V[j] @ V[i]
                sq += float(np.sum(c * c))
            worst = max(worst, np.sqrt(sq) / (norms[i] * norms[j]))
    return float(worst)


@dataclass(frozen=True)
class HyperpolarityResult:
    hyperpolar: bool
    inconclusive: bool
    residual: float
    cohomogeneity: int
    normal_dim: int
    normal: np.ndarray = field(repr=False, compare=False)
    point: PointSample = field(repr=False, compare=False)
    samples_used: int = 0


def hyperpolarity(action: ActionModel, seed=0, n_samples: int = N_SAMPLES,
                  max_samples: int = MAX_SAMPLES, tol: Tolerance = DEFAULT_TOL) -> HyperpolarityResult:
    """Flatness test of the normal space at a sampled regular point.

    Residuals within a factor of 10 of ``tol.rel_eps`` (either side) are
    flagged inconclusive; the boolean is still reported.
    """
    reg = find_regular_point(action, seed, n_samples, max_samples, tol)
    nu = normal_space(action, reg.point, tol)
    res = normal_flatness_residual(action, reg.point, nu)
    d = action.space.dim - reg.orbit_dim
    return HyperpolarityResult(
        hyperpolar=res < tol.rel_eps,
        inconclusive=tol.rel_eps / 10 <= res <= 10 * tol.rel_eps,
        residual=res,
        cohomogeneity=d,
        normal_dim=nu.shape[0],
        normal=nu,
        point=reg.point,
        samples_used=reg.samples_used,
    )


def is_hyperpolar(action: ActionModel, seed=0, tol: Tolerance = DEFAULT_TOL, **kw) -> bool:
    return hyperpolarity(action, seed, tol=tol, **kw).hyperpolar


def is_transitive_on(action: ActionModel, subset, seed=0, tol: Tolerance = DEFAULT_TOL, **kw) -> bool:
    """Whether the projection action on the factors ``subset`` (an index or a set) is transitive."""
    if isinstance(subset, (int, np.integer)):
        subset = [int(subset)]
    proj = projection_action(action, subset)
    return cohomogeneity(proj, seed, tol=tol, **kw) == 0


@dataclass(frozen=True)
class DimensionBound:
    dim_h: int
    dim_M: int
    rank: int

    @property
    def required(self) -> int:
        return self.dim_M - self.rank

    @property
    def holds(self) -> bool:
        return self.dim_h >= self.required


def dimension_bound(action: ActionModel, seed=0, rank: int | None = None) -> DimensionBound:
    """dim h against dim M - rk M; ``rank`` overrides the sampled space rank."""
    rk = space_rank(action.space, seed) if rank is None else int(rank)
    return DimensionBound(action.dim, action.space.dim, rk)


def dim_bound_holds(action: ActionModel, seed=0, rank: int | None = None) -> bool:
    """Necessary condition for hyperpolarity: dim h >= dim M - rk M."""
    return dimension_bound(action, seed, rank).holds


def _subspace(x) -> AlgebraSubspace:
    if isinstance(x, EmbeddingSpec):
        return x.image
    if isinstance(x, AlgebraSubspace):
        return x
    if isinstance(x, MatrixLieAlgebra):
        return x.full()
    raise TypeError(f"expected an embedding or subspace, got {type(x).__name__}")


def decomposition_ranks(G: MatrixLieAlgebra, G1, G2, seed=0, samples: int = N_SAMPLES,
                        tol: Tolerance = DEFAULT_TOL) -> list[int]:
    """rank(g' + Ad(g) g'') at ``samples`` random g = exp(Z) in G."""
    A, B = _subspace(G1), _subspace(G2)
    if A.basis.shape[1] != G.ambient_size or B.basis.shape[1] != G.ambient_size:
        raise ValueError("subalgebras do not live in the ambient of G")
    rng = np.random.default_rng(check_seed(seed))
    out = []
    for _ in range(samples):
        g = matrix_exp(G.element(rng.standard_normal(G.dim)))
        moved = g @ B.basis @ g.T
        out.append(numerical_rank(np.concatenate([A.basis, moved]), tol))
    return out


def verify_decomposition(G: MatrixLieAlgebra, G1, G2, seed=0, samples: int = N_SAMPLES,
                         tol: Tolerance = DEFAULT_TOL) -> bool:
    """Infinitesimal transitivity of G' x G'' acting two-sidedly on G."""
    return all(r == G.dim for r in decomposition_ranks(G, G1, G2, seed, samples, tol))


def intersection_algebra(G1, G2) -> AlgebraSubspace:
    """g' intersected with g'' (as placed by the catalog)."""
    return intersect(_subspace(G1), _subspace(G2))


@dataclass(frozen=True)
class NonsplitReport:
    """The four conditions for a two-block grouping plus the cohomogeneity check."""

    grouping: tuple
    conditions: tuple  # (i) .. (iv)
    cohomogeneities: tuple  # (whole action, isotropy of I on J, isotropy of J on I)

    @property
    def all_hold(self) -> bool:
        return all(self.conditions)

    @property
    def cohomogeneities_agree(self) -> bool:
        """If all four conditions hold the three cohomogeneities agree."""
        return (not self.all_hold) or len(set(self.cohomogeneities)) == 1


def _grouping(action, grouping):
    n = len(action.space)
    if grouping is None:
        if n != 2:
            raise ValueError("a grouping is required unless the space has exactly two factors")
        return (0,), (1,)
    I, J = grouping
    I = tuple(check_factor_subset(I, n))
    J = tuple(check_factor_subset(J, n))
    if set(I) & set(J) or len(I) + len(J) != n:
        raise ValueError(f"grouping {grouping} is not a partition of the {n} factors")
    return I, J


def check_nonsplit_conditions(action: ActionModel, grouping=None, seed=0,
                              tol: Tolerance = DEFAULT_TOL) -> NonsplitReport:
    """Transitivity of both projections and hyperpolarity of both intersection actions.

    ``grouping`` is a pair (I, J) partitioning the factors; intersection
    actions are taken at seeded random points of M_I and M_J.
    """
    I, J = _grouping(action, grouping)
    s = child_seeds(check_seed(seed), 6)
    t_I = is_transitive_on(action, I, s[0], tol)
    t_J = is_transitive_on(action, J, s[1], tol)
    o_I = sample_points(action.space.subproduct(I), s[2], 1)[0]
    o_J = sample_points(action.space.subproduct(J), s[3], 1)[0]
    on_J = hyperpolarity(intersection_action(action, I, o_I), s[4], tol=tol)
    on_I = hyperpolarity(intersection_action(action, J, o_J), s[5], tol=tol)
    d = cohomogeneity(action, seed, tol=tol)
    return NonsplitReport(
        grouping=(I, J),
        conditions=(t_I, t_J, on_J.hyperpolar, on_I.hyperpolar),
        cohomogeneities=(d, on_J.cohomogeneity, on_I.cohomogeneity),
    )


@dataclass
class AnalysisReport:
    name: str
    space: str
    dim_M: int
    dim_h: int
    rank: int
    cohomogeneity: int
    transitive: list
    hyperpolar: bool
    inconclusive: bool
    dim_bound_ok: bool
    normal_dim: int
    flatness_residual: float
    closure_residual: float
    seed: int
    samples_used: int

    def to_dict(self) -> dict:
        return asdict(self)

    def verdict_line(self) -> str:
        return (f"d={self.cohomogeneity} hyperpolar={'yes' if self.hyperpolar else 'no'}"
                f"{' (inconclusive)' if self.inconclusive else ''}")

    def to_text(self) -> str:
        trans = ",".join("T" if t else "-" for t in self.transitive)
        return "\n".join([
            f"action: {self.name}",
            f"space: {self.space}",
            f"dim M={self.dim_M} dim h={self.dim_h} rank={self.rank}",
            self.verdict_line(),
            f"inconclusive={'yes' if self.inconclusive else 'no'}",
            f"transitive per factor: {trans}",
            f"dim bound: {'ok' if self.dim_bound_ok else 'violated'} "
            f"({self.dim_h} vs {self.dim_M - self.rank})",
            f"normal dim={self.normal_dim} flatness residual={self.flatness_residual:.3e} "
            f"closure residual={self.closure_residual:.3e}",
            f"seed={self.seed} samples={self.samples_used}",
        ])


def analyze(action: ActionModel, seed=0, tol: Tolerance = DEFAULT_TOL,
            n_samples: int = N_SAMPLES, max_samples: int = MAX_SAMPLES) -> AnalysisReport:
    """Full report for one action."""
    seed = check_seed(seed)
    s = child_seeds(seed, 2 + len(action.space))
    hp = hyperpolarity(action, s[0], n_samples, max_samples, tol)
    rank = space_rank(action.space, s[1])
    transitive = [
        is_transitive_on(action, [i], s[2 + i], tol, n_samples=n_samples, max_samples=max_samples)
        for i in range(len(action.space))
    ]
    return AnalysisReport(
        name=action.name,
        space=repr(action.space),
        dim_M=action.space.dim,
        dim_h=action.dim,
        rank=rank,
        cohomogeneity=hp.cohomogeneity,
        transitive=transitive,
        hyperpolar=hp.hyperpolar,
        inconclusive=hp.inconclusive,
        dim_bound_ok=action.dim >= action.space.dim - rank,
        normal_dim=hp.normal_dim,
        flatness_residual=hp.residual,
        closure_residual=action.h.closure_residual(),
        seed=seed,
        samples_used=hp.samples_used,
    )


class ActionAnalyzer(BaseEstimator):
    """Estimator-style wrapper around :func:`analyze`.

    ``fit`` takes an :class:`~symaction.actions.ActionModel` and stores the
    verdicts as trailing-underscore attributes. ``random_state=None`` draws a
    fresh seed, which is recorded in ``seed_``.
    """

    def __init__(self, n_samples=N_SAMPLES, max_samples=MAX_SAMPLES, rel_eps=1e-8, abs_eps=1e-10,
                 random_state=0):
        self.n_samples = n_samples
        self.max_samples = max_samples
        self.rel_eps = rel_eps
        self.abs_eps = abs_eps
        self.random_state = random_state

    def fit(self, action: ActionModel, y=None):
        if not isinstance(action, ActionModel):
            raise TypeError(f"fit expects an ActionModel, got {type(action).__name__}")
        tol = Tolerance(self.rel_eps, self.abs_eps)
        self.seed_ = check_seed(self.random_state)
        rep = analyze(action, self.seed_, tol, self.n_samples, self.max_samples)
        self.report_ = rep
        self.cohomogeneity_ = rep.cohomogeneity
        self.hyperpolar_ = rep.hyperpolar
        self.inconclusive_ = rep.inconclusive
        self.transitive_ = list(rep.transitive)
        self.dim_bound_ok_ = rep.dim_bound_ok
        self.flatness_residual_ = rep.flatness_residual
        self.rank_ = rep.rank
        return self
