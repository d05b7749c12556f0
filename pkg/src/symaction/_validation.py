"""Input validation helpers shared by the public entry points."""

import numbers

import numpy as np


def check_matrix(X, name="X"):
    """Return ``X`` as a finite square float array or raise ``ValueError``."""
    A = np.asarray(X, dtype=float)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError(f"{name} must be a square matrix, got shape {A.shape}")
    if not np.all(np.isfinite(A)):
        raise ValueError(f"{name} has non-finite entries")
    return A


def check_matrices(mats, name="matrices"):
    """Return a (k, n, n) finite float array."""
    A = np.asarray(mats, dtype=float)
    if A.ndim == 2 and A.shape[0] == A.shape[1]:
        A = A[None]
    if A.ndim != 3 or A.shape[1] != A.shape[2]:
        raise ValueError(f"{name} must be a stack of square matrices, got shape {A.shape}")
    if not np.all(np.isfinite(A)):
        raise ValueError(f"{name} has non-finite entries")
    return A


def check_factor_index(i, n_factors):
    if not isinstance(i, numbers.Integral) or not 0 <= i < n_factors:
        raise ValueError(f"factor index {i!r} out of range for {n_factors} factors")
    return int(i)


def check_factor_subset(subset, n_factors):
    idx = sorted({check_factor_index(i, n_factors) for i in subset})
    if not idx:
        raise ValueError("factor subset must be nonempty")
    return idx


def check_seed(seed):
    """Normalize a seed; ``None`` draws fresh entropy so it can still be recorded."""
    if seed is None:
        return int(np.random.SeedSequence().entropy % (2 ** 63))
    if not isinstance(seed, numbers.Integral) or seed < 0:
        raise ValueError(f"seed must be a non-negative integer, got {seed!r}")
    return int(seed)
