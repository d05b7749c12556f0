"""Named subalgebra embeddings used by the decomposition table and the examples.

Names are stable identifiers (also used in action-spec files). Parametric
families take their sizes from the name:

    so{k}_in_so{n}            so(k) on the first k coordinates, k < n
    so{k}xso{m}_in_so{n}      block diagonal on the first k + m <= n coordinates
    so3irr_in_so{2j+1}        so(3) acting irreducibly (harmonic polynomials of degree j)
    u{n}_in_so{2n}            realified u(n)
    su{n}_in_so{2n}           realified su(n)
    sp{n}_in_so{4n}           realified sp(n)
    sp{n}sp1_in_so{4n}        sp(n) plus its commutant sp(1) in so(4n)
    sp{n}u1_in_so{4n}         sp(n) plus the realified complex structure
    sp{n}_in_su{2n}           fixed set of AII(n)
    s(u{p}xu{q})_in_su{p+q}   fixed set of AIII(p,q)
    su{k}_in_su{n}            upper-left complex block, k < n

and the fixed names ``g2_in_so7``, ``spin7_in_so8``, ``spin9_in_so16``,
``su3_in_g2``, ``so4_in_g2``.

Conjugacy representatives: ``spin7_in_so8`` is the spin-type Spin(7) spanned
by products of two left multiplications by imaginary octonions (it acts
transitively on S^7); ``su3_in_g2`` is the stabilizer of e1; ``so4_in_g2`` is
the fixed set of the automorphism that is +1 on the quaternions span(e0..e3)
and -1 on their complement.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations_with_replacement
from math import factorial, sqrt

import numpy as np

from symaction.catalog.classical import realify, so_basis, u_complex_basis
from symaction.catalog.involutions import build_involution, classical
from symaction.catalog.octonions import g2_derivations_8, spin7_generators, spin9_generators
from symaction.liealg import (
    AlgebraSubspace,
    MatrixLieAlgebra,
    centralizer_of,
    kernel,
    null_space,
)


@dataclass(frozen=True)
class EmbeddingSpec:
    name: str
    ambient: MatrixLieAlgebra
    image: AlgebraSubspace
    declared_dim: int

    @property
    def dim(self):
        return self.image.dim

    def as_algebra(self) -> MatrixLieAlgebra:
        return MatrixLieAlgebra(self.image.basis, name=self.name, check=False)


def _block(mats, n, offset=0):
    mats = np.asarray(mats, dtype=float)
    k = mats.shape[-1]
    out = np.zeros((len(mats), n, n))
    out[:, offset:offset + k, offset:offset + k] = mats
    return out


def _spec(name, ambient, mats, declared):
    image = AlgebraSubspace.span(ambient, mats)
    res = image.closure_residual()
    if res > ambient.tol.rel_eps:
        raise AssertionError(f"{name}: image not closed (residual {res:.2e})")
    if image.dim != declared:
        raise AssertionError(f"{name}: image has dim {image.dim}, declared {declared}")
    return EmbeddingSpec(name, ambient, image, declared)


@lru_cache(maxsize=None)
def g2_algebra() -> MatrixLieAlgebra:
    """g2 acting on the imaginary octonions (7x7)."""
    return MatrixLieAlgebra(g2_derivations_8()[:, 1:, 1:], name="g2")


def _sp_times(n, extra):
    so = classical("so", 4 * n)
    sp = classical("sp", n).basis
    if extra == "sp1":
        comm = centralizer_of(so.full(), AlgebraSubspace.span(so, sp))
        return np.concatenate([sp, comm.basis])
    if extra == "u1":
        J = realify(1j * np.eye(2 * n))
        return np.concatenate([sp, J[None]])
    return sp


def _su_block(k, n):
    mats = []
    for Z in u_complex_basis(k, traceless=True):
        big = np.zeros((n, n), dtype=complex)
        big[:k, :k] = Z
        mats.append(realify(big))
    return np.array(mats)


def so3_irreducible(j: int) -> np.ndarray:
    """so(3) on harmonic polynomials of degree j in three variables (dimension 2j + 1).

    Monomials x^a / sqrt(a!) are orthonormal for the Fischer product, in which
    the rotation fields x_a d_b - x_b d_a act skew-symmetrically.
    """
    def monomials(d):
        out = []
        for c in combinations_with_replacement(range(3), d):
            out.append(tuple(c.count(i) for i in range(3)))
        return out

    mons = monomials(j)
    index = {m: r for r, m in enumerate(mons)}
    norm = [sqrt(np.prod([factorial(e) for e in m])) for m in mons]

    def field(a, b):
        # x_a d_b - x_b d_a in the orthonormal monomial basis
        M = np.zeros((len(mons), len(mons)))
        for col, m in enumerate(mons):
            for (p, q, s) in ((a, b, 1.0), (b, a, -1.0)):
                if m[q] == 0:
                    continue
                e = list(m)
                coef = s * e[q]
                e[q] -= 1
                e[p] += 1
                row = index[tuple(e)]
                M[row, col] += coef * norm[row] / norm[col]
        return M

    lap = np.zeros((len(monomials(j - 2)) if j >= 2 else 0, len(mons)))
    if j >= 2:
        lower = {m: r for r, m in enumerate(monomials(j - 2))}
        for col, m in enumerate(mons):
            for i in range(3):
                if m[i] >= 2:
                    e = list(m)
                    e[i] -= 2
                    lap[lower[tuple(e)], col] += m[i] * (m[i] - 1) / norm[col]
    Q = null_space(lap).T if j >= 2 else np.eye(len(mons))
    return np.array([Q.T @ field(a, b) @ Q for a, b in ((0, 1), (0, 2), (1, 2))])


_PATTERNS = [
    (re.compile(r"^so(\d+)_in_so(\d+)$"), "so_block"),
    (re.compile(r"^so(\d+)xso(\d+)_in_so(\d+)$"), "so_pair"),
    (re.compile(r"^so3irr_in_so(\d+)$"), "so3irr"),
    (re.compile(r"^u(\d+)_in_so(\d+)$"), "u_in_so"),
    (re.compile(r"^su(\d+)_in_so(\d+)$"), "su_in_so"),
    (re.compile(r"^sp(\d+)sp1_in_so(\d+)$"), "spsp1"),
    (re.compile(r"^sp(\d+)u1_in_so(\d+)$"), "spu1"),
    (re.compile(r"^sp(\d+)_in_so(\d+)$"), "sp_in_so"),
    (re.compile(r"^sp(\d+)_in_su(\d+)$"), "sp_in_su"),
    (re.compile(r"^s\(u(\d+)xu(\d+)\)_in_su(\d+)$"), "suxu"),
    (re.compile(r"^su(\d+)_in_su(\d+)$"), "su_block"),
]


def _bad(name, why):
    return ValueError(f"embedding {name!r}: {why}")


@lru_cache(maxsize=None)
def build_embedding(name: str) -> EmbeddingSpec:
    """Look up or construct a named embedding.

    Raises:
        ValueError: unknown name or inconsistent sizes.
    """
    if name == "g2_in_so7":
        so7 = classical("so", 7)
        return _spec(name, so7, g2_algebra().basis, 14)
    if name == "spin7_in_so8":
        return _spec(name, classical("so", 8), spin7_generators(), 21)
    if name == "spin9_in_so16":
        return _spec(name, classical("so", 16), spin9_generators(), 36)
    if name == "su3_in_g2":
        g2 = g2_algebra()
        stab = kernel(g2.full(), g2.basis[:, :, 0].T)
        return _spec(name, g2, stab.basis, 8)
    if name == "so4_in_g2":
        g2 = g2_algebra()
        s = np.diag([1.0, 1, 1, -1, -1, -1, -1])
        diff = (g2.basis - s @ g2.basis @ s).reshape(g2.dim, -1).T
        return _spec(name, g2, kernel(g2.full(), diff).basis, 6)

    for pattern, kind in _PATTERNS:
        m = pattern.match(name)
        if m:
            nums = [int(g) for g in m.groups()]
            break
    else:
        raise ValueError(f"unknown embedding {name!r}")

    if kind == "so_block":
        k, n = nums
        if not 2 <= k < n:
            raise _bad(name, "need 2 <= k < n")
        return _spec(name, classical("so", n), _block(so_basis(k), n), k * (k - 1) // 2)
    if kind == "so_pair":
        k, m, n = nums
        if k + m > n or k < 1 or m < 1 or n < 3:
            raise _bad(name, "block sizes must add up to at most n")
        mats = [M for M in _block(so_basis(k), n)] if k >= 2 else []
        if m >= 2:
            mats += list(_block(so_basis(m), n, offset=k))
        return _spec(name, classical("so", n), np.array(mats), k * (k - 1) // 2 + m * (m - 1) // 2)
    if kind == "so3irr":
        (n,) = nums
        if n < 3 or n % 2 == 0:
            raise _bad(name, "irreducible real so(3) modules have odd dimension >= 3")
        return _spec(name, classical("so", n), so3_irreducible((n - 1) // 2), 3)
    if kind in ("u_in_so", "su_in_so"):
        k, n = nums
        if n != 2 * k:
            raise _bad(name, "ambient must be so(2n)")
        fam = "u" if kind == "u_in_so" else "su"
        if fam == "su" and k < 2:
            raise _bad(name, "need n >= 2")
        alg = classical(fam, k)
        return _spec(name, classical("so", n), alg.basis, alg.dim)
    if kind in ("spsp1", "spu1", "sp_in_so"):
        k, n = nums
        if n != 4 * k:
            raise _bad(name, "ambient must be so(4n)")
        extra = {"spsp1": "sp1", "spu1": "u1", "sp_in_so": None}[kind]
        declared = k * (2 * k + 1) + {"sp1": 3, "u1": 1, None: 0}[extra]
        return _spec(name, classical("so", n), _sp_times(k, extra), declared)
    if kind == "sp_in_su":
        k, n = nums
        if n != 2 * k:
            raise _bad(name, "ambient must be su(2n)")
        inv = build_involution(f"AII({k})")
        return _spec(name, inv.algebra, inv.fixed().basis, k * (2 * k + 1))
    if kind == "suxu":
        p, q, n = nums
        if p + q != n or p < 1 or q < 1:
            raise _bad(name, "block sizes must add up to n")
        inv = build_involution(f"AIII({p},{q})")
        return _spec(name, inv.algebra, inv.fixed().basis, p * p + q * q - 1)
    k, n = nums
    if not 2 <= k < n:
        raise _bad(name, "need 2 <= k < n")
    return _spec(name, classical("su", n), _su_block(k, n), k * k - 1)
