"""Minimax facility-location solvers.

Two solvers over a :class:`~coreset_al.geometry.DistanceOracle`:

- ``k_center_greedy``: farthest-first traversal, a 2-approximation for the
  k-center objective (the largest point-to-nearest-center distance).
- ``robust_k_center``: exact k-center with an outlier budget, via binary
  search on the realized pairwise distances driven by a branch-and-bound
  feasibility search (``feasible``).

Ties are broken by smallest index everywhere, so every solver is
deterministic for fixed inputs.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_is_fitted

from ._validation import as_feature_matrix, check_budget, check_index_array
from .geometry import DEFAULT_CACHE_THRESHOLD, DistanceOracle

FEASIBLE = "feasible"
INFEASIBLE = "infeasible"
TIMED_OUT = "timed_out"


def k_center_greedy(oracle: DistanceOracle, initial, budget: int) -> np.ndarray:
    """Select `budget` new centers by farthest-first traversal.

    Starting from the seed centers `initial`, repeatedly adds the point
    farthest from the current center set (ties broken by smallest index).
    The covering radius of the result is at most twice the optimum.

    Returns the new indices only, in pick order.
    """
    n = oracle.n
    initial = check_index_array(initial, n, "initial")
    budget = int(budget)
    if budget < 1:
        raise ValueError("budget must be at least 1")
    if budget > n - initial.size:
        raise ValueError(f"budget {budget} exceeds the {n - initial.size} selectable points")

    work = oracle.min_dist_to(initial)
    excluded = np.zeros(n, dtype=bool)
    excluded[initial] = True
    picks = np.empty(budget, dtype=np.int64)
    for t in range(budget):
        cand = np.where(excluded, -1.0, work)
        u = int(np.argmax(cand))
        picks[t] = u
        excluded[u] = True
        np.minimum(work, oracle.dist_row(u), out=work)
    return picks


@dataclass(frozen=True)
class FeasibilityProblem:
    """One covering decision: can `budget` extra centers (on top of the
    fixed `initial` ones) bring all but at most `outlier_cap` points within
    `threshold` of some center?"""

    budget: int
    initial: np.ndarray
    threshold: float
    outlier_cap: int


@dataclass
class FeasibilityResult:
    """Outcome of a feasibility probe.

    On a feasible outcome the witness fields are populated: `centers` holds
    exactly ``len(initial) + budget`` center indices, `assignment[i]` is the
    center index covering point i (beyond `threshold` only for outliers),
    and `outliers` lists the uncovered points (at most `outlier_cap`).
    """

    status: str
    problem: FeasibilityProblem
    centers: np.ndarray | None = None
    assignment: np.ndarray | None = None
    outliers: np.ndarray | None = None
    nodes: int = 0

    @property
    def is_feasible(self) -> bool:
        return self.status == FEASIBLE

    @property
    def new_centers(self) -> np.ndarray | None:
        if self.centers is None:
            return None
        return np.setdiff1d(self.centers, self.problem.initial)


@dataclass
class KCenterSolution:
    """Centers, outliers, and achieved covering radius of one solver run."""

    centers: np.ndarray
    outliers: np.ndarray
    radius: float
    optimal: bool
    new_centers: np.ndarray = field(default_factory=lambda: np.empty(0, dtype=np.int64))


class _ProbeTimeout(Exception):
    pass


class _Stats:
    """Node counter and deadline shared across one probe's searches."""

    __slots__ = ("nodes", "deadline")

    def __init__(self, deadline: float):
        self.nodes = 0
        self.deadline = deadline

    def tick(self) -> None:
        self.nodes += 1
        if self.nodes % 128 == 0 and time.monotonic() > self.deadline:
            raise _ProbeTimeout


def _bits(packed: np.ndarray, count: int) -> np.ndarray:
    return np.unpackbits(packed, count=count).view(np.bool_)


class _CoverSearch:
    """Exact partial-cover search on a candidate-by-point incidence matrix.

    Decides whether `budget` candidates can cover all but `cap` of the
    points. Independent connected components are solved separately (their
    minimum cover sizes add), and within a component a depth-first branch
    and bound runs on the uncovered point with the fewest remaining
    candidates, excluding tried candidates from sibling branches. Pruning
    combines a top-k coverage bound with a greedy separation bound: points
    that no single candidate covers pairwise each need their own center
    (or an outlier slot), rarest points first.
    """

    def __init__(self, within: np.ndarray, stats: _Stats):
        self.stats = stats
        self._install(within)
        self._reduced = False

    def _install(self, within: np.ndarray) -> None:
        self.within = within
        self.n_cand, self.m = within.shape
        self.cover = np.packbits(within, axis=1)
        self.cand_of = np.packbits(within.T, axis=1)
        self.bytes_u = self.cover.shape[1]
        self.bytes_c = self.cand_of.shape[1]
        self._bit_u = np.zeros((self.m, self.bytes_u), dtype=np.uint8)
        rows = np.arange(self.m)
        self._bit_u[rows, rows >> 3] = (0x80 >> (rows & 7)).astype(np.uint8)
        self._bit_c = np.zeros((self.n_cand, self.bytes_c), dtype=np.uint8)
        rows = np.arange(self.n_cand)
        self._bit_c[rows, rows >> 3] = (0x80 >> (rows & 7)).astype(np.uint8)
        self._rarest = np.argsort(within.sum(axis=0), kind="stable")
        self._reach_cache: dict[int, np.ndarray] = {}

    def _reach(self, p: int) -> np.ndarray:
        got = self._reach_cache.get(p)
        if got is None:
            rows = np.flatnonzero(self.within[:, p])
            got = np.bitwise_or.reduce(self.cover[rows], axis=0)
            self._reach_cache[p] = got
        return got

    def separation_count(self, unc_bits: np.ndarray, limit: int) -> int:
        """Greedy count of points needing pairwise-distinct centers; stops
        once `limit` is exceeded (enough to prune)."""
        remaining = unc_bits.copy()
        count = 0
        for p in self._rarest:
            if not remaining[p]:
                continue
            count += 1
            if count > limit:
                return count
            remaining &= ~_bits(self._reach(int(p)), self.m)
        return count

    def reduce(self) -> None:
        """Drop candidates whose coverage another candidate contains.

        Swapping a dominated candidate for its dominator keeps any solution
        valid, so only maximal coverage sets are explored. Equal sets keep
        the smallest index. `self.keep` maps reduced to original positions.
        """
        if self._reduced:
            return
        sizes = self.within.sum(axis=1)
        order = np.argsort(-sizes, kind="stable")
        kept: list[int] = []
        kept_rows = np.empty((self.n_cand, self.bytes_u), dtype=np.uint8)
        for c in order:
            row = self.cover[c]
            if kept:
                gaps = np.bitwise_count(row & ~kept_rows[: len(kept)]).sum(axis=1)
                if (gaps == 0).any():
                    continue
            kept_rows[len(kept)] = row
            kept.append(int(c))
        self.keep = np.sort(np.asarray(kept, dtype=np.int64))
        self._install(self.within[self.keep])
        self._reduced = True

    def _map_chosen(self, chosen) -> list[int]:
        if self._reduced:
            return [int(self.keep[c]) for c in chosen]
        return [int(c) for c in chosen]

    def solve(self, budget: int, cap: int, decompose: bool = True):
        """Return (chosen candidate positions, outlier point positions) or None.

        Positions refer to the matrix this search was constructed with.
        """
        if self.m <= cap:
            return [], list(range(self.m))
        if budget <= 0 and self.m > cap:
            return None
        all_bits = np.ones(self.m, dtype=np.bool_)
        limit = budget + cap
        if self.separation_count(all_bits, limit) > limit:
            return None
        got = self._greedy(budget, cap)
        if got is not None:
            return got
        if decompose:
            comps = self._components()
            if len(comps) > 1:
                return self._solve_components(comps, budget, cap)
        self.reduce()
        got = self._dfs(budget, cap)
        if got is None:
            return None
        chosen, outliers = got
        return self._map_chosen(chosen), outliers

    def _greedy(self, budget: int, cap: int):
        """Max-coverage greedy attempt (feasibility certificate only)."""
        unc = np.packbits(np.ones(self.m, dtype=bool))
        chosen: list[int] = []
        for _ in range(budget):
            if _popcount(unc) <= cap:
                break
            sizes = np.bitwise_count(self.cover & unc).sum(axis=1)
            c = int(np.argmax(sizes))
            if sizes[c] == 0:
                break
            chosen.append(c)
            unc &= ~self.cover[c]
        if _popcount(unc) <= cap:
            return self._map_chosen(chosen), list(np.flatnonzero(_bits(unc, self.m)))
        return None

    def _components(self):
        """Connected components of points linked through shared candidates."""
        unseen = np.ones(self.m, dtype=bool)
        comps = []
        while unseen.any():
            start = int(np.argmax(unseen))
            pts = np.zeros(self.m, dtype=bool)
            pts[start] = True
            while True:
                cands = self.within[:, pts].any(axis=1)
                grown = self.within[cands].any(axis=0)
                if (grown & ~pts).any():
                    pts |= grown
                else:
                    break
            unseen &= ~pts
            comps.append((np.flatnonzero(pts), np.flatnonzero(self.within[:, pts].any(axis=1))))
        return comps

    def _solve_components(self, comps, budget: int, cap: int):
        """Solve each component's minimum cover, then allocate the outlier
        budget across components by dynamic programming."""
        tables = []
        floor_total = 0
        for pts, cands in comps:
            sub = _CoverSearch(self.within[np.ix_(cands, pts)], self.stats)
            table = self._min_cover_table(sub, budget, cap)
            tables.append((pts, cands, table))
            floor_total += min(need for need, _ in table.values())
            if floor_total > budget:
                return None

        best = {0: (0, [])}  # outliers used -> (total centers, allocation)
        for idx, (_, _, table) in enumerate(tables):
            nxt: dict[int, tuple[int, list]] = {}
            for used, (total, alloc) in best.items():
                for xi, (need, _) in table.items():
                    u, t = used + xi, total + need
                    if u > cap or t > budget:
                        continue
                    if nxt.get(u, (budget + 1, None))[0] > t:
                        nxt[u] = (t, alloc + [xi])
            best = nxt
            if not best:
                return None
        assignment = min(best.values(), key=lambda kv: kv[0])[1]

        chosen: list[int] = []
        outliers: list[int] = []
        for (pts, cands, table), xi in zip(tables, assignment):
            _, (sub_chosen, sub_out) = table[xi]
            chosen.extend(int(cands[c]) for c in sub_chosen)
            outliers.extend(int(pts[p]) for p in sub_out)
        return chosen, outliers

    @staticmethod
    def _min_cover_table(sub: "_CoverSearch", budget: int, cap: int) -> dict:
        """xi -> (minimum centers, witness) for one component, xi = 0..cap.

        Needs beyond `budget` are recorded as budget + 1 (the component
        alone is too big at that outlier allowance); one extra outlier can
        reduce the need by at most one, which bounds each scan below.
        """
        table: dict[int, tuple[int, tuple]] = {}
        prev = budget + 1
        for xi in range(cap + 1):
            lo = 0 if xi == 0 else max(0, prev - 1)
            need = budget + 1
            witness = ([], [])
            for b_c in range(min(lo, budget + 1), budget + 1):
                got = sub.solve(b_c, xi, decompose=False)
                if got is not None:
                    need = b_c
                    witness = got
                    break
            table[xi] = (need, witness)
            if need == 0:
                break
            prev = need
        return table

    def _dfs(self, budget: int, cap: int):
        unc = np.packbits(np.ones(self.m, dtype=bool))
        banned = np.zeros(self.bytes_c, dtype=np.uint8)
        return self._search(unc, banned, budget, cap, (), ())

    def _search(self, unc, banned, b_rem, xi_rem, chosen, outliers):
        self.stats.tick()

        forced_out = list(outliers)
        chosen = list(chosen)
        while True:
            bits = _bits(unc, self.m)
            unc_pos = np.flatnonzero(bits)
            m_unc = unc_pos.size
            if m_unc <= xi_rem:
                return chosen, [*forced_out, *unc_pos]
            if m_unc <= xi_rem + b_rem:
                # every leftover point can become its own center
                for p in unc_pos[: m_unc - xi_rem]:
                    chosen.append(int(np.flatnonzero(self.within[:, p])[0]))
                return chosen, [*forced_out, *unc_pos[m_unc - xi_rem:]]
            if b_rem == 0:
                return None

            avail = np.bitwise_count(self.cand_of[unc_pos] & ~banned).sum(axis=1)
            zero = unc_pos[avail == 0]
            if zero.size:
                if zero.size > xi_rem:
                    return None
                xi_rem -= int(zero.size)
                forced_out.extend(int(p) for p in zero)
                unc = unc & ~np.bitwise_or.reduce(self._bit_u[zero], axis=0)
                continue
            if xi_rem == 0:
                ones = unc_pos[avail == 1]
                if ones.size:
                    p = int(ones[0])
                    c = int(np.flatnonzero(_bits(self.cand_of[p] & ~banned, self.n_cand))[0])
                    chosen.append(c)
                    b_rem -= 1
                    unc = unc & ~self.cover[c]
                    continue
            break

        sizes = np.bitwise_count(self.cover & unc).sum(axis=1)
        sizes[_bits(banned, self.n_cand)] = 0
        if b_rem < self.n_cand:
            best_cover = int(np.partition(sizes, -b_rem)[-b_rem:].sum())
        else:
            best_cover = int(sizes.sum())
        if best_cover + xi_rem < m_unc:
            return None
        if self.separation_count(bits, b_rem + xi_rem) > b_rem + xi_rem:
            return None

        p = int(unc_pos[np.argmin(avail)])
        cands_p = np.flatnonzero(_bits(self.cand_of[p] & ~banned, self.n_cand))
        order = cands_p[np.argsort(-sizes[cands_p], kind="stable")]
        new_banned = banned.copy()
        for c in order:
            c = int(c)
            got = self._search(unc & ~self.cover[c], new_banned,
                               b_rem - 1, xi_rem, chosen + [c], forced_out)
            if got is not None:
                return got
            new_banned = new_banned | self._bit_c[c]
        if xi_rem > 0:
            return self._search(unc & ~self._bit_u[p], new_banned,
                                b_rem, xi_rem - 1, chosen, forced_out + [p])
        return None


def _popcount(packed: np.ndarray) -> int:
    return int(np.bitwise_count(packed).sum())


def _pad_centers(oracle: DistanceOracle, centers, total: int) -> np.ndarray:
    """Extend `centers` to exactly `total` indices by farthest-first picks."""
    centers = list(dict.fromkeys(int(c) for c in centers))
    if len(centers) > total:
        raise ValueError("more centers than the requested total")
    work = oracle.min_dist_to(centers) if centers else np.full(oracle.n, np.inf)
    taken = np.zeros(oracle.n, dtype=bool)
    taken[centers] = True
    while len(centers) < total:
        cand = np.where(taken, -1.0, work)
        u = int(np.argmax(cand))
        centers.append(u)
        taken[u] = True
        np.minimum(work, oracle.dist_row(u), out=work)
    return np.asarray(centers, dtype=np.int64)


def _witness(oracle, problem, centers) -> FeasibilityResult:
    """Assemble the (centers, assignment, outliers) witness for a center set."""
    centers = np.sort(np.asarray(centers, dtype=np.int64))
    best = oracle.dist_row(int(centers[0])).copy()
    assign = np.full(oracle.n, centers[0], dtype=np.int64)
    for c in centers[1:]:
        row = oracle.dist_row(int(c))
        closer = row < best
        best[closer] = row[closer]
        assign[closer] = c
    outliers = np.flatnonzero(best > problem.threshold)
    return FeasibilityResult(FEASIBLE, problem, centers=centers,
                             assignment=assign, outliers=outliers)


def feasible(oracle: DistanceOracle, budget: int, initial, threshold: float,
             outlier_cap: int, time_limit_s: float = 30.0,
             hints=None) -> FeasibilityResult:
    """Decide whether `budget` extra centers can cover all but at most
    `outlier_cap` points within `threshold`.

    Exact branch-and-bound search (no external solver). Returns a
    FeasibilityResult whose status is "feasible" (with a verified witness),
    "infeasible", or "timed_out" once `time_limit_s` is exhausted; the
    caller decides the fallback on a timeout.

    `hints` optionally passes center sets worth testing before any search,
    e.g. farthest-first picks or the witness of an earlier probe.

    `initial` may be empty, in which case this is the plain covering
    decision for `budget` centers.
    """
    n = oracle.n
    initial = check_index_array(initial, n, "initial", allow_empty=True)
    threshold = float(threshold)
    if threshold < 0:
        raise ValueError("threshold must be nonnegative")
    outlier_cap = int(outlier_cap)
    if outlier_cap < 0:
        raise ValueError("outlier_cap must be nonnegative")
    budget = int(budget)
    if budget < 0:
        raise ValueError("budget must be nonnegative")
    problem = FeasibilityProblem(budget, initial, threshold, outlier_cap)
    total = initial.size + budget
    if total > n or total == 0:
        # every point needs an assigned center, so zero centers never work
        return FeasibilityResult(INFEASIBLE, problem)

    base = oracle.min_dist_to(initial) if initial.size else np.full(n, np.inf)
    uncovered = np.flatnonzero(base > threshold)
    if uncovered.size <= outlier_cap:
        return _witness(oracle, problem, _pad_centers(oracle, initial, total))

    if budget == 0:
        return FeasibilityResult(INFEASIBLE, problem)

    # cheap certificates first: farthest-first picks plus caller hints
    seeds = list(hints) if hints is not None else []
    if not seeds and initial.size:
        seeds.append(k_center_greedy(oracle, initial, budget))
    for seed in seeds:
        seed = np.asarray(seed, dtype=np.int64)[:budget]
        if seed.size == 0:
            continue
        full = np.concatenate([initial, seed])
        if (oracle.min_dist_to(full) > threshold).sum() <= outlier_cap:
            return _witness(oracle, problem, _pad_centers(oracle, full, total))

    # candidate centers: non-seed points within threshold of an uncovered point
    cand_mask = np.zeros(n, dtype=bool)
    for u in uncovered:
        cand_mask |= oracle.dist_row(int(u)) <= threshold
    cand_mask[initial] = False
    cand_idx = np.flatnonzero(cand_mask)

    within = np.empty((cand_idx.size, uncovered.size), dtype=bool)
    for k, c in enumerate(cand_idx):
        within[k] = oracle.dist_row(int(c))[uncovered] <= threshold

    stats = _Stats(time.monotonic() + float(time_limit_s))
    search = _CoverSearch(within, stats)
    try:
        got = search.solve(budget, outlier_cap)
    except _ProbeTimeout:
        return FeasibilityResult(TIMED_OUT, problem, nodes=stats.nodes)
    if got is None:
        return FeasibilityResult(INFEASIBLE, problem, nodes=stats.nodes)
    chosen_pos, _ = got
    chosen = cand_idx[np.asarray(sorted(set(chosen_pos)), dtype=np.int64)]
    centers = _pad_centers(oracle, np.concatenate([initial, chosen]), total)
    result = _witness(oracle, problem, centers)
    result.nodes = stats.nodes
    if result.outliers.size > outlier_cap:
        raise AssertionError("search produced an invalid witness")
    return result


def robust_k_center(oracle: DistanceOracle, initial, budget: int, outlier_cap: int = 0,
                    time_limit_s: float = 30.0) -> KCenterSolution:
    """Exact k-center with an outlier budget.

    Starts from the farthest-first solution, then binary-searches the
    covering radius over the realized pairwise distances, testing each
    midpoint with the branch-and-bound feasibility search. The upper bound
    snaps down to the largest realized distance at or below a feasible
    midpoint, the lower bound up to the smallest realized distance at or
    above an infeasible one; the loop ends when they meet.

    If any probe times out, the farthest-first solution is returned with
    ``optimal=False``.
    """
    n = oracle.n
    initial = check_index_array(initial, n, "initial")
    picks = k_center_greedy(oracle, initial, budget)
    greedy_centers = np.concatenate([initial, picks])
    radius_2opt = oracle.cover_radius(greedy_centers)
    greedy_solution = KCenterSolution(
        centers=np.sort(greedy_centers),
        outliers=np.empty(0, dtype=np.int64),
        radius=radius_2opt,
        optimal=False,
        new_centers=picks.copy(),
    )

    grid = oracle.realized_distances()
    # the 2-approximation guarantee brackets the optimum only when every
    # point must be covered; with outliers the optimum may sit below it
    lb = radius_2opt / 2.0 if outlier_cap == 0 else 0.0
    ub = radius_2opt
    best = _witness(oracle,
                    FeasibilityProblem(budget, initial, radius_2opt, outlier_cap),
                    _pad_centers(oracle, greedy_centers, initial.size + budget))

    while lb < ub:
        mid = 0.5 * (lb + ub)
        probe = feasible(oracle, budget, initial, mid, outlier_cap,
                         time_limit_s=time_limit_s,
                         hints=[best.new_centers, picks])
        if probe.status == TIMED_OUT:
            return greedy_solution
        if probe.is_feasible:
            ub = float(grid[np.searchsorted(grid, mid, side="right") - 1])
            best = probe
        else:
            lb = float(grid[np.searchsorted(grid, mid, side="left")])

    centers = best.centers
    new = np.setdiff1d(centers, initial)
    best_dist = oracle.min_dist_to(centers)
    outliers = np.flatnonzero(best_dist > ub)
    return KCenterSolution(centers=centers, outliers=outliers, radius=float(ub),
                           optimal=True, new_centers=new)


class KCenterGreedy(BaseEstimator):
    """Farthest-first center selection with a sklearn-style interface.

    Parameters
    ----------
    budget : int
        Number of new centers to select.
    initial_indices : array-like of int
        Seed centers; must name at least one point of the fit data.
    cache_threshold : int
        Passed through to the distance oracle.
    standardize : bool
        Standardize features per dimension before computing distances.

    Attributes
    ----------
    centers_ : ndarray
        Seed plus selected indices, in selection order.
    selected_ : ndarray
        The newly selected indices only.
    radius_ : float
        Covering radius achieved on the fit data.
    min_dist_ : ndarray
        Distance from each fit point to its nearest center.
    """

    def __init__(self, budget=1, initial_indices=None,
                 cache_threshold=DEFAULT_CACHE_THRESHOLD, standardize=False):
        self.budget = budget
        self.initial_indices = initial_indices
        self.cache_threshold = cache_threshold
        self.standardize = standardize

    def fit(self, X, y=None):
        X = as_feature_matrix(X)
        if self.initial_indices is None:
            raise ValueError("initial_indices must name at least one seed point")
        oracle = DistanceOracle(X, cache_threshold=self.cache_threshold,
                                standardize=self.standardize)
        initial = check_index_array(self.initial_indices, oracle.n, "initial_indices")
        check_budget(self.budget, oracle.n - initial.size)
        picks = k_center_greedy(oracle, initial, self.budget)
        self.selected_ = picks
        self.centers_ = np.concatenate([initial, picks])
        self.min_dist_ = oracle.min_dist_to(self.centers_)
        self.radius_ = float(self.min_dist_.max())
        self._center_points = oracle._X[self.centers_].copy()
        return self

    def predict(self, X):
        """Index (into ``centers_``) of the nearest center for each row of X."""
        check_is_fitted(self, "centers_")
        X = as_feature_matrix(X)
        out = np.zeros(X.shape[0], dtype=np.int64)
        best = np.full(X.shape[0], np.inf)
        for k, c in enumerate(self._center_points):
            d = np.sqrt(np.sum((X - c) ** 2, axis=1))
            closer = d < best
            best[closer] = d[closer]
            out[closer] = k
        return out


class RobustKCenter(BaseEstimator):
    """Exact k-center with outlier budget, sklearn-style.

    Same interface as :class:`KCenterGreedy` plus ``outlier_cap`` and a per
    feasibility-probe ``time_limit_s``. After ``fit``, ``optimal_`` tells
    whether the binary search converged (False means the farthest-first
    fallback was returned after a probe timed out).
    """

    def __init__(self, budget=1, initial_indices=None, outlier_cap=0,
                 time_limit_s=30.0, cache_threshold=DEFAULT_CACHE_THRESHOLD,
                 standardize=False):
        self.budget = budget
        self.initial_indices = initial_indices
        self.outlier_cap = outlier_cap
        self.time_limit_s = time_limit_s
        self.cache_threshold = cache_threshold
        self.standardize = standardize

    def fit(self, X, y=None):
        X = as_feature_matrix(X)
        if self.initial_indices is None:
            raise ValueError("initial_indices must name at least one seed point")
        oracle = DistanceOracle(X, cache_threshold=self.cache_threshold,
                                standardize=self.standardize)
        initial = check_index_array(self.initial_indices, oracle.n, "initial_indices")
        check_budget(self.budget, oracle.n - initial.size)
        sol = robust_k_center(oracle, initial, self.budget,
                              outlier_cap=self.outlier_cap,
                              time_limit_s=self.time_limit_s)
        self.solution_ = sol
        self.centers_ = sol.centers
        self.selected_ = sol.new_centers
        self.outliers_ = sol.outliers
        self.radius_ = sol.radius
        self.optimal_ = sol.optimal
        return self
