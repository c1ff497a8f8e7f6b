"""Multi-round pool-based active-learning simulation.

For each seed: draw an initial labeled pool uniformly at random, then loop
rounds of (fit the reference learner, record metrics on a held-out split,
run the configured acquisition strategy, reveal the chosen labels). Metrics
are always recorded *before* acquisition, so the row at round k reflects
exactly the labels available at round k. The held-out split is the last 20%
of the file order and never enters the pool.

Everything is deterministic per (config, seed): repeated runs write
byte-identical CSV files (timings are recorded as 0 unless explicitly
enabled, since real wall-clock values would break reproducibility).
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from ._validation import check_budget, check_index_array
from .geometry import DEFAULT_CACHE_THRESHOLD, DistanceOracle, FeatureSet
from .learner import CROSS_ENTROPY, L2_ON_PROBABILITIES, SoftmaxClassifier
from .strategies import AcquisitionRequest, make_strategy
from .theory import coreset_loss

CSV_HEADER = "seed,round,labeled,accuracy,cover_radius,coreset_loss,train_loss,wall_ms"

HOLDOUT_FRACTION = 0.2


@dataclass
class PoolState:
    """Partition of the pool into a growing labeled set and the remainder."""

    labeled: np.ndarray
    unlabeled: np.ndarray
    round: int = 0
    history: list = field(default_factory=list)

    @classmethod
    def initial(cls, n: int, seed_indices) -> "PoolState":
        labeled = check_index_array(seed_indices, n, "seed_indices")
        unlabeled = np.setdiff1d(np.arange(n), labeled)
        return cls(labeled=labeled, unlabeled=unlabeled)

    def reveal(self, picks) -> None:
        """Move `picks` from the unlabeled to the labeled set."""
        picks = np.asarray(picks, dtype=np.int64)
        if np.unique(picks).size != picks.size:
            raise ValueError("picks contain duplicates")
        if not np.isin(picks, self.unlabeled).all():
            raise ValueError("picks must come from the unlabeled pool")
        self.labeled = np.concatenate([self.labeled, picks])
        self.unlabeled = np.setdiff1d(self.unlabeled, picks)
        self.round += 1
        self.history.append(picks)


@dataclass(frozen=True)
class ExperimentConfig:
    """Everything a simulation run depends on, minus the dataset itself."""

    strategy: str
    initial_size: int
    budget: int
    rounds: int
    seeds: tuple = (0, 1, 2, 3, 4)
    xi_frac: float = 1e-4
    learning_rate: float = 0.1
    epochs: int = 500
    l2_penalty: float = 1e-4
    time_limit_s: float = 30.0
    embedding: str = "raw"
    cache_threshold: int = DEFAULT_CACHE_THRESHOLD
    record_timings: bool = False

    def __post_init__(self):
        if self.initial_size < 1 or self.budget < 1 or self.rounds < 1:
            raise ValueError("initial_size, budget, and rounds must be positive")
        if not self.seeds:
            raise ValueError("at least one seed is required")
        if self.embedding not in ("raw", "logits"):
            raise ValueError("embedding must be 'raw' or 'logits'")


@dataclass(frozen=True)
class CurveRow:
    seed: int
    round: int
    labeled: int
    accuracy: float
    cover_radius: float
    coreset_loss: float
    train_loss: float
    wall_ms: float


@dataclass
class LearningCurve:
    """Per-(seed, round) metrics of one experiment, sorted by (seed, round)."""

    rows: list
    stopped_early: tuple = ()

    def to_csv(self, path) -> None:
        Path(path).write_text(self.to_csv_text())

    def to_csv_text(self) -> str:
        lines = [CSV_HEADER]
        for r in self.rows:
            lines.append(
                f"{r.seed},{r.round},{r.labeled},{r.accuracy!r},{r.cover_radius!r},"
                f"{r.coreset_loss!r},{r.train_loss!r},{r.wall_ms!r}"
            )
        return "\n".join(lines) + "\n"

    @classmethod
    def from_csv(cls, path) -> "LearningCurve":
        lines = Path(path).read_text().splitlines()
        if not lines or lines[0] != CSV_HEADER:
            raise ValueError(f"{path}: not a results CSV")
        rows = []
        for ln in lines[1:]:
            if not ln.strip():
                continue
            s, k, m, acc, cr, cl, tl, ms = ln.split(",")
            rows.append(CurveRow(int(s), int(k), int(m), float(acc), float(cr),
                                 float(cl), float(tl), float(ms)))
        return cls(rows)

    def accuracy_series(self):
        """(labeled counts, mean accuracy, population std) grouped by round."""
        return self._series("accuracy")

    def radius_series(self):
        return self._series("cover_radius")

    def _series(self, attr):
        rounds = sorted({r.round for r in self.rows})
        xs, means, stds = [], [], []
        for k in rounds:
            vals = [getattr(r, attr) for r in self.rows if r.round == k]
            labeled = [r.labeled for r in self.rows if r.round == k]
            xs.append(labeled[0])
            means.append(float(np.mean(vals)))
            stds.append(float(np.std(vals)))
        return np.asarray(xs), np.asarray(means), np.asarray(stds)


def split_holdout(data: FeatureSet):
    """(pool FeatureSet, test FeatureSet): the last 20% of file order is held out."""
    n_test = max(1, int(data.n * HOLDOUT_FRACTION))
    if n_test >= data.n:
        raise ValueError("dataset too small to split a holdout")
    pool = np.arange(data.n - n_test)
    test = np.arange(data.n - n_test, data.n)
    return data.subset(pool), data.subset(test)


def run_experiment(data: FeatureSet, config: ExperimentConfig) -> LearningCurve:
    """Run the multi-round simulation and return the learning curve."""
    if not data.has_labels:
        raise ValueError("the simulation needs labels to reveal")
    pool, test = split_holdout(data)
    n = pool.n
    check_budget(config.initial_size, n, "initial_size")
    strategy = make_strategy(config.strategy, time_limit_s=config.time_limit_s)
    needs_oracle = config.strategy.startswith("coreset")

    oracle = None
    if needs_oracle and config.embedding == "raw":
        oracle = DistanceOracle(pool, cache_threshold=config.cache_threshold)

    rows = []
    stopped = []
    for seed in config.seeds:
        rng = np.random.default_rng(seed)
        start = rng.choice(n, size=config.initial_size, replace=False)
        state = PoolState.initial(n, start)
        if oracle is not None:
            oracle.reset_centers()
        radius_oracle = oracle or DistanceOracle(pool, cache_threshold=config.cache_threshold)
        if radius_oracle is not oracle:
            radius_oracle.reset_centers()
        for c in state.labeled:
            radius_oracle.add_center(int(c))

        for k in range(config.rounds + 1):
            t0 = time.perf_counter()
            model = SoftmaxClassifier(
                learning_rate=config.learning_rate, epochs=config.epochs,
                l2_penalty=config.l2_penalty, num_classes=pool.num_classes,
                seed=seed,
            ).fit(pool.points[state.labeled], pool.labels[state.labeled])
            test_acc = model.accuracy(test.points, test.labels)
            pool_losses = model.point_losses(pool.points, pool.labels,
                                             kind=L2_ON_PROBABILITIES)
            gap = coreset_loss(pool_losses, state.labeled)
            train_loss = model.point_losses(
                pool.points[state.labeled], pool.labels[state.labeled],
                kind=CROSS_ENTROPY).mean()
            radius = float(radius_oracle.min_dist.max())

            if k == config.rounds:
                picks = None
            elif state.unlabeled.size < config.budget:
                stopped.append(seed)
                picks = None
            else:
                picks = _acquire(strategy, config, pool, state, model, oracle, seed, k)

            wall = (time.perf_counter() - t0) * 1e3 if config.record_timings else 0.0
            rows.append(CurveRow(seed=int(seed), round=k, labeled=int(state.labeled.size),
                                 accuracy=test_acc, cover_radius=radius,
                                 coreset_loss=gap, train_loss=train_loss,
                                 wall_ms=float(wall)))
            if picks is None:
                break
            state.reveal(picks)
            for c in picks:
                radius_oracle.add_center(int(c))

    rows.sort(key=lambda r: (r.seed, r.round))
    return LearningCurve(rows, stopped_early=tuple(stopped))


def _acquire(strategy, config, pool, state, model, oracle, seed, round_k):
    xi = int(config.xi_frac * state.unlabeled.size)
    if hasattr(strategy, "outlier_cap"):
        strategy.outlier_cap = xi
    request = AcquisitionRequest(
        labeled=state.labeled,
        unlabeled=state.unlabeled,
        budget=config.budget,
        seed=int(seed) * (1 << 20) + round_k,
        features=pool.points.astype(np.float64),
    )
    if config.strategy == "entropy":
        request.probabilities = model.predict_proba(pool.points[state.unlabeled])
    elif config.strategy == "oracle":
        request.losses = model.point_losses(
            pool.points[state.unlabeled], pool.labels[state.unlabeled],
            kind=CROSS_ENTROPY).values
    if config.strategy.startswith("coreset"):
        if config.embedding == "logits":
            request.oracle = DistanceOracle(model.decision_function(pool.points),
                                            cache_threshold=config.cache_threshold)
        else:
            request.oracle = oracle
    return strategy.select(request)
