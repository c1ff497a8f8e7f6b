"""Input validation helpers shared across estimators and solvers."""

from __future__ import annotations

import numpy as np
from sklearn.utils import check_array


def as_feature_matrix(X, dtype=np.float64) -> np.ndarray:
    """Coerce X to a finite 2-D float matrix with n >= 1 rows and d >= 1 columns."""
    X = check_array(X, dtype=dtype, ensure_2d=True, ensure_all_finite=True)
    if X.shape[0] < 1 or X.shape[1] < 1:
        raise ValueError("feature matrix must have at least one row and one column")
    return X


def check_index_array(indices, n: int, name: str = "indices", allow_empty: bool = False) -> np.ndarray:
    """Validate a collection of point indices against a universe of size n.

    Order is preserved; duplicates and out-of-range values are rejected.
    """
    idx = np.atleast_1d(np.asarray(indices, dtype=np.int64))
    if idx.ndim != 1:
        raise ValueError(f"{name} must be one-dimensional")
    if idx.size == 0:
        if allow_empty:
            return idx
        raise ValueError(f"{name} must not be empty")
    if idx.min() < 0 or idx.max() >= n:
        raise IndexError(f"{name} out of range for {n} points")
    if np.unique(idx).size != idx.size:
        raise ValueError(f"{name} contains duplicate entries")
    return idx


def check_point_index(i: int, n: int, name: str = "index") -> int:
    i = int(i)
    if not 0 <= i < n:
        raise IndexError(f"{name} {i} out of range for {n} points")
    return i


def check_budget(budget: int, available: int, name: str = "budget") -> int:
    budget = int(budget)
    if budget < 0:
        raise ValueError(f"{name} must be nonnegative")
    if budget > available:
        raise ValueError(f"{name} {budget} exceeds the {available} available points")
    return budget


def check_probability_rows(P, tol: float = 1e-9) -> np.ndarray:
    """Validate an array of probability rows (nonnegative, each summing to 1)."""
    P = check_array(np.atleast_2d(np.asarray(P, dtype=np.float64)), dtype=np.float64)
    if P.min() < -tol:
        raise ValueError("probabilities must be nonnegative")
    sums = P.sum(axis=1)
    if np.max(np.abs(sums - 1.0)) > tol:
        raise ValueError(f"probability rows must sum to 1 within {tol}")
    return P
