"""Automorphisms and the seven classical families of Cartan involutions.

Every involution here is conjugation X -> S X S^T by an orthogonal matrix S
with S^2 = +-I (for the outer ones S contains the realified complex
conjugation). Identifiers are ``AI(n)``, ``AII(n)``, ``AIII(p,q)``,
``BDI(p,q)``, ``DIII(n)``, ``CI(n)`` and ``CII(p,q)``; the algebra is implied
by the identifier:

======== ============ =======================
family   algebra      fixed subalgebra
======== ============ =======================
AI(n)    su(n)        so(n)
AII(n)   su(2n)       sp(n)
AIII     su(p+q)      s(u(p) x u(q))
BDI      so(p+q)      so(p) x so(q)
DIII(n)  so(2n)       u(n)
CI(n)    sp(n)        u(n)
CII      sp(p+q)      sp(p) x sp(q)
======== ============ =======================
"""

from __future__ import annotations

import re
from functools import lru_cache

import numpy as np

from symaction.catalog.classical import (
    aii_matrix,
    build_classical,
    conjugation_matrix,
    realify,
    symplectic_form,
)
from symaction.liealg import AlgebraSubspace, MatrixLieAlgebra, PreconditionError


class Automorphism:
    """Linear bracket automorphism of an algebra, stored on mu-orthonormal coordinates."""

    def __init__(self, algebra: MatrixLieAlgebra, matrix, name: str = "automorphism",
                 check: bool = True):
        M = np.asarray(matrix, dtype=float)
        if M.shape != (algebra.dim, algebra.dim):
            raise ValueError(
                f"automorphism matrix must be {algebra.dim}x{algebra.dim}, got {M.shape}"
            )
        self.algebra = algebra
        self.matrix = M
        self.name = name
        if check:
            res = self.automorphism_residual()
            if res > algebra.tol.rel_eps:
                raise PreconditionError(f"{name} is not a bracket automorphism (residual {res:.2e})")

    @classmethod
    def identity(cls, algebra):
        return cls(algebra, np.eye(algebra.dim), name="id", check=False)

    @classmethod
    def from_conjugation(cls, algebra, S, name="conjugation", check=True):
        """The automorphism X -> S X S^-1 for an orthogonal S preserving the algebra."""
        S = np.asarray(S, dtype=float)
        images = S @ algebra.basis @ S.T
        for X in images:
            if algebra.residual(X) > algebra.tol.rel_eps:
                raise PreconditionError(f"{name} does not preserve {algebra.name}")
        return cls(algebra, algebra.coords(images).T, name=name, check=check)

    def __call__(self, X):
        return self.algebra.element(self.matrix @ self.algebra.coords(X))

    def apply_many(self, mats):
        """Images of a stack of algebra elements."""
        c = self.algebra.coords(np.asarray(mats, dtype=float))
        return self.algebra.element(c @ self.matrix.T)

    def automorphism_residual(self, sample: int | None = None) -> float:
        """max ||phi[X,Y] - [phi X, phi Y]|| over basis pairs."""
        B = self.algebra.basis
        imgs = self.apply_many(B)
        worst = 0.0
        k = len(B)
        for i in range(k):
            lhs = self.apply_many(B[i] @ B[i + 1:] - B[i + 1:] @ B[i]) if i + 1 < k else None
            if lhs is None:
                continue
            rhs = imgs[i] @ imgs[i + 1:] - imgs[i + 1:] @ imgs[i]
            worst = max(worst, float(np.abs(lhs - rhs).max()))
        return worst


class Involution(Automorphism):
    """Involutive automorphism together with its Cartan decomposition."""

    def __init__(self, algebra, matrix, name="involution", check=True):
        super().__init__(algebra, matrix, name=name, check=check)
        if check:
            res = self.involution_residual()
            if res > algebra.tol.rel_eps:
                raise PreconditionError(f"{name} does not square to the identity (residual {res:.2e})")

    @classmethod
    def from_conjugation(cls, algebra, S, name="involution", check=True):
        base = Automorphism.from_conjugation(algebra, S, name=name, check=False)
        return cls(algebra, base.matrix, name=name, check=check)

    def involution_residual(self) -> float:
        return float(np.abs(self.matrix @ self.matrix - np.eye(self.algebra.dim)).max())

    def _eigenspace(self, sign):
        P = 0.5 * (np.eye(self.algebra.dim) + sign * self.matrix)
        return AlgebraSubspace.span(self.algebra, self.algebra.element(P.T))

    def fixed(self) -> AlgebraSubspace:
        """The +1 eigenspace k."""
        return self._eigenspace(+1)

    def anti_fixed(self) -> AlgebraSubspace:
        """The -1 eigenspace p."""
        return self._eigenspace(-1)


def _ipq(p, q):
    return np.diag(np.r_[np.ones(p), -np.ones(q)])


FIXED_DIMENSIONS = {
    "AI": lambda n: n * (n - 1) // 2,
    "AII": lambda n: n * (2 * n + 1),
    "AIII": lambda p, q: p * p + q * q - 1,
    "BDI": lambda p, q: p * (p - 1) // 2 + q * (q - 1) // 2,
    "DIII": lambda n: n * n,
    "CI": lambda n: n * n,
    "CII": lambda p, q: p * (2 * p + 1) + q * (2 * q + 1),
}

_ARITY = {"AI": 1, "AII": 1, "AIII": 2, "BDI": 2, "DIII": 1, "CI": 1, "CII": 2}
_NAME_RE = re.compile(r"^\s*([A-Z]+)\s*\(\s*(\d+)\s*(?:,\s*(\d+)\s*)?\)\s*$")


def parse_involution_name(name: str):
    """Split ``"BDI(4,1)"`` into ``("BDI", (4, 1))``."""
    m = _NAME_RE.match(name)
    if not m or m.group(1) not in _ARITY:
        raise ValueError(f"unknown involution identifier {name!r}")
    fam = m.group(1)
    params = tuple(int(g) for g in m.groups()[1:] if g is not None)
    if len(params) != _ARITY[fam]:
        raise ValueError(f"{fam} takes {_ARITY[fam]} parameter(s), got {name!r}")
    return fam, params


def involution_algebra(family: str, params) -> tuple[str, int]:
    """(classical family, size) of the algebra an involution acts on."""
    if family == "AI":
        return "su", params[0]
    if family == "AII":
        return "su", 2 * params[0]
    if family == "AIII":
        return "su", params[0] + params[1]
    if family == "BDI":
        return "so", params[0] + params[1]
    if family == "DIII":
        return "so", 2 * params[0]
    if family == "CI":
        return "sp", params[0]
    return "sp", params[0] + params[1]


def _conjugator(family, params):
    if family == "AI":
        return conjugation_matrix(params[0])
    if family == "AII":
        return aii_matrix(params[0])
    if family == "AIII":
        return realify(_ipq(*params))
    if family == "BDI":
        return _ipq(*params)
    if family == "DIII":
        return symplectic_form(params[0])
    if family == "CI":
        return conjugation_matrix(2 * params[0])
    p, q = params
    return realify(np.kron(np.eye(2), _ipq(p, q)))


@lru_cache(maxsize=None)
def classical(family: str, n: int) -> MatrixLieAlgebra:
    """Cached :func:`build_classical`; involutions are built on these instances."""
    return build_classical(family, n)


@lru_cache(maxsize=None)
def build_involution(name: str) -> Involution:
    """Involution from an identifier such as ``"AII(2)"`` or ``"BDI(7,1)"``.

    Raises:
        ValueError: for malformed identifiers or parameters out of range.
    """
    family, params = parse_involution_name(name)
    minimum = {"AI": 2, "AII": 1, "DIII": 1, "CI": 1}
    if family in minimum and params[0] < minimum[family]:
        raise ValueError(f"{name}: parameter below {minimum[family]}")
    if family in ("AIII", "BDI", "CII") and (min(params) < 1 or sum(params) < 2):
        raise ValueError(f"{name}: both block sizes must be positive")
    if family == "DIII" and params[0] < 2:
        raise ValueError(f"{name}: need n >= 2")
    fam, n = involution_algebra(family, params)
    algebra = classical(fam, n)
    canonical = f"{family}({','.join(map(str, params))})"
    inv = Involution.from_conjugation(algebra, _conjugator(family, params), name=canonical)
    expected = FIXED_DIMENSIONS[family](*params)
    if inv.fixed().dim != expected:
        raise AssertionError(f"{canonical}: fixed set has dim {inv.fixed().dim}, expected {expected}")
    return inv
