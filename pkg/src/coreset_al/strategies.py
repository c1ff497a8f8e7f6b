"""Acquisition strategies: rules for choosing which unlabeled points to
query next.

Five families, exposed both as plain functions (the computational core) and
as small estimator-style classes sharing the :class:`AcquisitionRequest`
interface the harness and CLI drive:

- random: uniform without replacement
- entropy: highest predictive-entropy points
- oracle: loss-proportional sampling using the true labels (an oracle-only
  baseline)
- kmedoids: PAM-style k-medoids cluster centers
- coreset: greedy or robust minimax-coverage selection

Every strategy returns exactly `budget` distinct unlabeled indices and is
deterministic given its inputs and seed.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from sklearn.base import BaseEstimator

from ._validation import as_feature_matrix, check_budget, check_index_array
from .geometry import DistanceOracle
from .kcenter import k_center_greedy, robust_k_center


@dataclass
class AcquisitionRequest:
    """Pool state plus the strategy-specific inputs for one acquisition.

    `probabilities` and `losses` are aligned with `unlabeled` (row k
    describes point ``unlabeled[k]``); `features` covers the whole pool and
    `oracle`, when given, must be built over the same points.
    """

    labeled: np.ndarray
    unlabeled: np.ndarray
    budget: int
    seed: int = 0
    probabilities: np.ndarray | None = None
    losses: np.ndarray | None = None
    features: np.ndarray | None = None
    oracle: DistanceOracle | None = None


def select_random(unlabeled, budget: int, seed: int = 0) -> np.ndarray:
    """`budget` distinct indices drawn uniformly without replacement."""
    unlabeled = check_index_array(unlabeled, np.iinfo(np.int64).max, "unlabeled")
    budget = check_budget(budget, unlabeled.size)
    rng = np.random.default_rng(seed)
    return rng.choice(unlabeled, size=budget, replace=False)


def shannon_entropy(probabilities) -> np.ndarray:
    """Row-wise Shannon entropy in nats; 0 log 0 is taken as 0."""
    P = np.asarray(probabilities, dtype=np.float64)
    with np.errstate(divide="ignore", invalid="ignore"):
        terms = np.where(P > 0.0, P * np.log(P), 0.0)
    return -terms.sum(axis=1)


def select_uncertainty(probabilities, unlabeled, budget: int) -> np.ndarray:
    """Top-`budget` unlabeled points by predictive entropy, ties by smallest index."""
    unlabeled = check_index_array(unlabeled, np.iinfo(np.int64).max, "unlabeled")
    budget = check_budget(budget, unlabeled.size)
    if probabilities is None:
        raise ValueError("entropy selection requires predicted probabilities")
    P = np.asarray(probabilities, dtype=np.float64)
    if P.shape[0] != unlabeled.size:
        raise ValueError("probabilities must have one row per unlabeled point")
    ent = shannon_entropy(P)
    order = np.argsort(-ent, kind="stable")
    return unlabeled[order[:budget]]


def select_oracle_uncertainty(losses, unlabeled, budget: int, seed: int = 0):
    """Sequential loss-proportional sampling without replacement.

    Each draw picks point i with probability loss_i / sum of remaining
    losses, then removes it. When the remaining losses are all zero the
    draw falls back to uniform; the returned flag reports whether that
    happened.

    Returns
    -------
    picks : ndarray
    used_uniform_fallback : bool
    """
    unlabeled = check_index_array(unlabeled, np.iinfo(np.int64).max, "unlabeled")
    budget = check_budget(budget, unlabeled.size)
    if losses is None:
        raise ValueError("oracle selection requires per-point losses")
    w = np.asarray(losses, dtype=np.float64).copy()
    if w.shape != (unlabeled.size,):
        raise ValueError("losses must have one entry per unlabeled point")
    if not np.isfinite(w).all() or w.min() < 0:
        raise ValueError("losses must be finite and nonnegative")
    rng = np.random.default_rng(seed)
    rem = unlabeled.copy()
    picks = np.empty(budget, dtype=np.int64)
    fallback = False
    for t in range(budget):
        total = w.sum()
        if total <= 0.0:
            fallback = True
            j = int(rng.integers(rem.size))
        else:
            j = int(rng.choice(rem.size, p=w / total))
        picks[t] = rem[j]
        rem = np.delete(rem, j)
        w = np.delete(w, j)
    return picks, fallback


def _pam_build(D: np.ndarray, k: int, rng: np.random.Generator) -> list[int]:
    """Greedy BUILD phase; rng only breaks exact cost ties."""
    m = D.shape[0]
    totals = D.sum(axis=0)
    first = _tie_choice(totals, np.ones(m, dtype=bool), rng)
    medoids = [first]
    d1 = D[:, first].copy()
    free = np.ones(m, dtype=bool)
    free[first] = False
    while len(medoids) < k:
        costs = np.minimum(d1[:, None], D).sum(axis=0)
        c = _tie_choice(costs, free, rng)
        medoids.append(c)
        np.minimum(d1, D[:, c], out=d1)
        free[c] = False
    return medoids


def _tie_choice(costs: np.ndarray, allowed: np.ndarray, rng) -> int:
    masked = np.where(allowed, costs, np.inf)
    best = masked.min()
    ties = np.flatnonzero(masked == best)
    if ties.size == 1:
        return int(ties[0])
    return int(ties[int(rng.integers(ties.size))])


def _pam_swap(D: np.ndarray, medoids: list[int], max_passes: int) -> list[int]:
    """Best-improvement SWAP passes; deterministic, first-best on ties."""
    m = D.shape[0]
    medoids = list(medoids)
    for _ in range(max_passes):
        med = np.asarray(medoids)
        Dm = D[:, med]
        order = np.argsort(Dm, axis=1, kind="stable")
        a1 = order[:, 0]
        d1 = Dm[np.arange(m), a1]
        d2 = Dm[np.arange(m), order[:, 1]] if med.size > 1 else np.full(m, np.inf)
        nonmed = np.setdiff1d(np.arange(m), med)
        if nonmed.size == 0:
            break
        D_h = D[:, nonmed]
        shrink = np.minimum(0.0, D_h - d1[:, None])
        s_all = shrink.sum(axis=0)
        deltas = np.empty((med.size, nonmed.size))
        for o in range(med.size):
            members = a1 == o
            gain = np.minimum(d2[members, None], D_h[members]) - d1[members, None]
            deltas[o] = gain.sum(axis=0) + s_all - shrink[members].sum(axis=0)
        flat = int(np.argmin(deltas))
        if deltas.ravel()[flat] >= -1e-12:
            break
        o, h = divmod(flat, nonmed.size)
        medoids[o] = int(nonmed[h])
    return medoids


def select_kmedoids(features, unlabeled, budget: int, seed: int = 0,
                    swap_passes: int = 10) -> np.ndarray:
    """k-medoids (PAM BUILD + SWAP) over the unlabeled points, k = budget."""
    X = as_feature_matrix(features)
    unlabeled = check_index_array(unlabeled, X.shape[0], "unlabeled")
    budget = check_budget(budget, unlabeled.size)
    if budget == 0:
        return np.empty(0, dtype=np.int64)
    if budget == unlabeled.size:
        return unlabeled.copy()
    sub = X[unlabeled]
    m = sub.shape[0]
    D = np.empty((m, m))
    for i in range(m):
        diff = sub - sub[i]
        D[i] = np.sqrt(np.sum(diff * diff, axis=1))
    rng = np.random.default_rng(seed)
    medoids = _pam_build(D, budget, rng)
    medoids = _pam_swap(D, medoids, swap_passes)
    return unlabeled[np.sort(np.asarray(medoids, dtype=np.int64))]


def kmedoids_cost(features, unlabeled, medoids) -> float:
    """Sum of distances from each unlabeled point to its nearest medoid."""
    X = as_feature_matrix(features)
    med = X[np.asarray(medoids, dtype=np.int64)]
    best = np.full(len(unlabeled), np.inf)
    sub = X[np.asarray(unlabeled, dtype=np.int64)]
    for c in med:
        np.minimum(best, np.sqrt(np.sum((sub - c) ** 2, axis=1)), out=best)
    return float(best.sum())


def select_coreset(oracle: DistanceOracle, labeled, budget: int,
                   mode: str = "greedy", outlier_cap: int = 0,
                   time_limit_s: float = 30.0) -> np.ndarray:
    """Minimax-coverage acquisition: new centers on top of the labeled set."""
    labeled = check_index_array(labeled, oracle.n, "labeled")
    if mode == "greedy":
        return k_center_greedy(oracle, labeled, budget)
    if mode == "robust":
        solution = robust_k_center(oracle, labeled, budget,
                                   outlier_cap=outlier_cap,
                                   time_limit_s=time_limit_s)
        return solution.new_centers
    raise ValueError(f"unknown coreset mode: {mode!r}")


class QueryStrategy(BaseEstimator):
    """Base class for acquisition strategies driven by AcquisitionRequests."""

    id: str = ""

    def select(self, request: AcquisitionRequest) -> np.ndarray:
        raise NotImplementedError


class RandomSampling(QueryStrategy):
    id = "random"

    def select(self, request):
        return select_random(request.unlabeled, request.budget, request.seed)


class UncertaintySampling(QueryStrategy):
    id = "entropy"

    def select(self, request):
        return select_uncertainty(request.probabilities, request.unlabeled,
                                  request.budget)


class OracleLossSampling(QueryStrategy):
    id = "oracle"

    def select(self, request):
        picks, fallback = select_oracle_uncertainty(
            request.losses, request.unlabeled, request.budget, request.seed)
        self.fell_back_to_uniform_ = fallback
        return picks


class KMedoidsSampling(QueryStrategy):
    id = "kmedoids"

    def __init__(self, swap_passes=10):
        self.swap_passes = swap_passes

    def select(self, request):
        if request.features is None:
            raise ValueError("kmedoids selection requires pool features")
        return select_kmedoids(request.features, request.unlabeled,
                               request.budget, request.seed,
                               swap_passes=self.swap_passes)


class CoreSetSampling(QueryStrategy):
    def __init__(self, robust=False, outlier_cap=0, time_limit_s=30.0):
        self.robust = robust
        self.outlier_cap = outlier_cap
        self.time_limit_s = time_limit_s

    @property
    def id(self) -> str:
        return "coreset-robust" if self.robust else "coreset-greedy"

    def select(self, request):
        oracle = request.oracle
        if oracle is None:
            if request.features is None:
                raise ValueError("coreset selection requires an oracle or features")
            oracle = DistanceOracle(request.features)
        return select_coreset(oracle, request.labeled, request.budget,
                              mode="robust" if self.robust else "greedy",
                              outlier_cap=self.outlier_cap,
                              time_limit_s=self.time_limit_s)


STRATEGY_IDS = ("random", "entropy", "oracle", "kmedoids",
                "coreset-greedy", "coreset-robust")


def make_strategy(strategy_id: str, outlier_cap: int = 0,
                  time_limit_s: float = 30.0) -> QueryStrategy:
    """Instantiate a strategy from its CLI identifier."""
    if strategy_id == "random":
        return RandomSampling()
    if strategy_id == "entropy":
        return UncertaintySampling()
    if strategy_id == "oracle":
        return OracleLossSampling()
    if strategy_id == "kmedoids":
        return KMedoidsSampling()
    if strategy_id == "coreset-greedy":
        return CoreSetSampling(robust=False)
    if strategy_id == "coreset-robust":
        return CoreSetSampling(robust=True, outlier_cap=outlier_cap,
                               time_limit_s=time_limit_s)
    raise ValueError(f"unknown strategy: {strategy_id!r}")
