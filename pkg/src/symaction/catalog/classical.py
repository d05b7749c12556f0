"""Classical compact matrix algebras in realified form.

A complex matrix Z = A + iB is realified as [[A, -B], [B, A]]; skew-Hermitian
matrices become skew-symmetric, so every algebra built here sits in some so(N).
"""

import numpy as np

from symaction.liealg import MatrixLieAlgebra


def realify(Z):
    Z = np.asarray(Z, dtype=complex)
    A, B = Z.real, Z.imag
    return np.block([[A, -B], [B, A]])


def conjugation_matrix(n):
    """Orthogonal C with realify(conj(Z)) = C realify(Z) C."""
    return np.diag(np.r_[np.ones(n), -np.ones(n)])


def symplectic_form(n):
    """Standard J = [[0, I], [-I, 0]] of size 2n."""
    return np.block([[np.zeros((n, n)), np.eye(n)], [-np.eye(n), np.zeros((n, n))]])


def so_basis(n):
    mats = []
    for i in range(n):
        for j in range(i + 1, n):
            E = np.zeros((n, n))
            E[i, j], E[j, i] = 1.0, -1.0
            mats.append(E)
    return np.array(mats).reshape(-1, n, n)


def u_complex_basis(n, traceless):
    mats = []
    for i in range(n):
        for j in range(i + 1, n):
            E = np.zeros((n, n), dtype=complex)
            E[i, j], E[j, i] = 1.0, -1.0
            mats.append(E)
            F = np.zeros((n, n), dtype=complex)
            F[i, j] = F[j, i] = 1j
            mats.append(F)
    if traceless:
        for i in range(n - 1):
            D = np.zeros((n, n), dtype=complex)
            D[i, i], D[i + 1, i + 1] = 1j, -1j
            mats.append(D)
    else:
        for i in range(n):
            D = np.zeros((n, n), dtype=complex)
            D[i, i] = 1j
            mats.append(D)
    return mats


def u_basis(n):
    return np.array([realify(Z) for Z in u_complex_basis(n, traceless=False)])


def su_basis(n):
    return np.array([realify(Z) for Z in u_complex_basis(n, traceless=True)])


def aii_matrix(n):
    """Orthogonal S realizing X -> J conj(X) J^-1 on realified su(2n)."""
    J = symplectic_form(n)
    return realify(J) @ conjugation_matrix(2 * n)


def sp_basis(n):
    """sp(n) as the fixed set of X -> J conj(X) J^-1 inside realified su(2n)."""
    S = aii_matrix(n)
    su = su_basis(2 * n)
    fixed = 0.5 * (su + S @ su @ S.T)
    flat = fixed.reshape(len(fixed), -1)
    _, s, vt = np.linalg.svd(flat, full_matrices=False)
    r = int(np.count_nonzero(s > 1e-10 * s[0]))
    return vt[:r].reshape(r, 4 * n, 4 * n)


CLASSICAL_DIMENSIONS = {
    "so": lambda n: n * (n - 1) // 2,
    "su": lambda n: n * n - 1,
    "sp": lambda n: n * (2 * n + 1),
    "u": lambda n: n * n,
}

_MIN_SIZE = {"so": 2, "su": 2, "sp": 1, "u": 1}
_BUILDERS = {"so": so_basis, "su": su_basis, "sp": sp_basis, "u": u_basis}


def build_classical(family: str, n: int) -> MatrixLieAlgebra:
    """so(n), su(n), sp(n) or u(n), realified.

    Raises:
        ValueError: for an unknown family or a size below the family minimum.
    """
    if family not in _BUILDERS:
        raise ValueError(f"unknown classical family {family!r}; expected one of so, su, sp, u")
    if not isinstance(n, (int, np.integer)) or n < _MIN_SIZE[family]:
        raise ValueError(f"{family}({n}) is not supported (need n >= {_MIN_SIZE[family]})")
    alg = MatrixLieAlgebra(_BUILDERS[family](int(n)), name=f"{family}({n})")
    expected = CLASSICAL_DIMENSIONS[family](int(n))
    assert alg.dim == expected, (family, n, alg.dim)
    return alg
