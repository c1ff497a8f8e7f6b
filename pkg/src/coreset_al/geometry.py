"""Distance primitives: feature containers, pairwise l2 distances, and the
incremental nearest-center bookkeeping every selection algorithm relies on.

All distances are Euclidean and computed in double precision from a single
row kernel, so cached-matrix and on-demand code paths return bit-identical
values.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._validation import as_feature_matrix, check_index_array, check_point_index

DEFAULT_CACHE_THRESHOLD = 8192


@dataclass
class FeatureSet:
    """A pool of n points in d dimensions with optional class labels.

    Feature values are stored as float32, matching the on-disk interchange
    format so that save/load round-trips are bit-exact. All numerical work
    upcasts to float64.

    Parameters
    ----------
    points : array-like, shape (n, d)
        Feature rows; must be finite.
    labels : array-like of int, shape (n,), optional
        Class indices in {0, ..., num_classes - 1}.
    num_classes : int, optional
        Number of classes. Inferred as max(labels) + 1 when labels are
        given; defaults to 0 for unlabeled data.
    """

    points: np.ndarray
    labels: np.ndarray | None = None
    num_classes: int = 0

    def __post_init__(self) -> None:
        pts = np.asarray(self.points)
        if pts.ndim != 2:
            raise ValueError("points must be a 2-D array")
        if pts.shape[0] < 1 or pts.shape[1] < 1:
            raise ValueError("points must have at least one row and one column")
        if not np.isfinite(pts).all():
            raise ValueError("points must be finite")
        self.points = np.ascontiguousarray(pts, dtype=np.float32)
        if self.labels is not None:
            labels = np.asarray(self.labels, dtype=np.int64)
            if labels.shape != (self.points.shape[0],):
                raise ValueError("labels must be a 1-D array with one entry per point")
            if labels.min() < 0:
                raise ValueError("labels must be nonnegative")
            if self.num_classes <= 0:
                self.num_classes = int(labels.max()) + 1
            elif labels.max() >= self.num_classes:
                raise ValueError("label out of range for num_classes")
            self.labels = labels
        self.num_classes = int(self.num_classes)

    @property
    def n(self) -> int:
        return self.points.shape[0]

    @property
    def dim(self) -> int:
        return self.points.shape[1]

    @property
    def has_labels(self) -> bool:
        return self.labels is not None

    def subset(self, indices) -> "FeatureSet":
        idx = check_index_array(indices, self.n, "indices")
        labels = self.labels[idx] if self.labels is not None else None
        return FeatureSet(self.points[idx], labels, self.num_classes)


class DistanceOracle:
    """Pairwise l2 distance access plus a maintained min-distance-to-centers array.

    The full n x n matrix is materialized lazily, and only when
    n <= cache_threshold; above the threshold rows are computed on demand
    (the greedy solver needs nothing beyond the running ``min_dist``).

    Parameters
    ----------
    features : FeatureSet or array-like of shape (n, d)
        A FeatureSet contributes its float32 storage values; a raw array
        is used exactly as given.
    cache_threshold : int
        Largest n for which the full distance matrix may be cached.
    standardize : bool
        If True, features are standardized per dimension before any
        distance is computed. Off by default: distances act on the raw
        feature values.
    """

    def __init__(self, features, cache_threshold: int = DEFAULT_CACHE_THRESHOLD,
                 standardize: bool = False):
        if isinstance(features, FeatureSet):
            self.features = features
            X = features.points.astype(np.float64)
        else:
            self.features = None
            X = as_feature_matrix(features)
        self.cache_threshold = int(cache_threshold)
        self.standardize = bool(standardize)
        if standardize:
            mu = X.mean(axis=0)
            sd = X.std(axis=0)
            sd[sd == 0.0] = 1.0
            X = (X - mu) / sd
        self._X = np.ascontiguousarray(X)
        self._matrix: np.ndarray | None = None
        self.min_dist = np.full(self.n, np.inf)
        self.centers: list[int] = []

    @property
    def n(self) -> int:
        return self._X.shape[0]

    def _row(self, i: int) -> np.ndarray:
        # Single kernel for every code path; see module docstring.
        diff = self._X - self._X[i]
        return np.sqrt(np.sum(diff * diff, axis=1))

    @property
    def matrix(self) -> np.ndarray:
        """Full pairwise distance matrix; raises for n above cache_threshold."""
        if self._matrix is None:
            if self.n > self.cache_threshold:
                raise ValueError(
                    f"refusing to materialize a {self.n}x{self.n} distance matrix "
                    f"(cache_threshold={self.cache_threshold})"
                )
            out = np.empty((self.n, self.n))
            for i in range(self.n):
                out[i] = self._row(i)
            self._matrix = out
        return self._matrix

    @property
    def caches_matrix(self) -> bool:
        return self.n <= self.cache_threshold

    def dist_row(self, i: int) -> np.ndarray:
        """Distances from point i to every point (length-n vector, read-only use)."""
        i = check_point_index(i, self.n)
        if self._matrix is not None:
            return self._matrix[i]
        return self._row(i)

    def distance(self, i: int, j: int) -> float:
        """Euclidean distance between points i and j."""
        i = check_point_index(i, self.n)
        j = check_point_index(j, self.n)
        if self._matrix is not None:
            return float(self._matrix[i, j])
        diff = self._X[i] - self._X[j]
        return float(np.sqrt(np.sum(diff * diff)))

    def add_center(self, c: int) -> None:
        """Mark point c as a center and fold its distances into min_dist."""
        c = check_point_index(c, self.n, "center")
        np.minimum(self.min_dist, self.dist_row(c), out=self.min_dist)
        self.centers.append(c)

    def reset_centers(self) -> None:
        self.min_dist.fill(np.inf)
        self.centers.clear()

    def cover_radius(self, centers) -> float:
        """max over points of the distance to the nearest of the given centers."""
        return float(self.min_dist_to(centers).max())

    def min_dist_to(self, centers) -> np.ndarray:
        """Distance from every point to its nearest member of `centers`."""
        centers = check_index_array(centers, self.n, "centers")
        best = self.dist_row(int(centers[0])).copy()
        for c in centers[1:]:
            np.minimum(best, self.dist_row(int(c)), out=best)
        return best

    def realized_distances(self) -> np.ndarray:
        """Sorted, deduplicated list of all pairwise distances (0 included)."""
        if self.caches_matrix:
            return np.unique(self.matrix)
        seen = np.array([0.0])
        block = max(1, (1 << 22) // max(1, self.n))
        for start in range(0, self.n, block):
            rows = np.vstack([self._row(i) for i in range(start, min(self.n, start + block))])
            seen = np.union1d(seen, rows.ravel())
        return seen
