import numpy as np
import pytest

from coreset_al.data import generate_synthetic
from coreset_al.geometry import DistanceOracle
from coreset_al.harness import (
    CSV_HEADER,
    ExperimentConfig,
    LearningCurve,
    PoolState,
    run_experiment,
    split_holdout,
)
from coreset_al.plotting import emit_plot_data


def tiny_config(strategy="random", **kw):
    defaults = dict(strategy=strategy, initial_size=8, budget=4, rounds=2,
                    seeds=(0, 1), epochs=30)
    defaults.update(kw)
    return ExperimentConfig(**defaults)


def tiny_data(seed=0):
    return generate_synthetic(3, 40, 4, spread=0.8, seed=seed)


class TestPoolState:
    def test_partition_invariant(self):
        state = PoolState.initial(10, [2, 5])
        assert sorted(np.concatenate([state.labeled, state.unlabeled])) == list(range(10))
        state.reveal([7, 3])
        assert sorted(np.concatenate([state.labeled, state.unlabeled])) == list(range(10))
        assert state.round == 1
        assert list(state.history[0]) == [7, 3]

    def test_labeled_only_grows(self):
        state = PoolState.initial(6, [0])
        state.reveal([4])
        assert list(state.labeled) == [0, 4]
        with pytest.raises(ValueError):
            state.reveal([4])

    def test_duplicate_picks_rejected(self):
        state = PoolState.initial(6, [0])
        with pytest.raises(ValueError):
            state.reveal([3, 3])


class TestSplit:
    def test_last_fifth_held_out(self):
        data = tiny_data()
        pool, test = split_holdout(data)
        assert test.n == 24 and pool.n == 96
        assert np.array_equal(test.points, data.points[96:])

    def test_too_small(self):
        with pytest.raises(ValueError):
            split_holdout(generate_synthetic(1, 1, 1, seed=0))


class TestRunExperiment:
    def test_row_bookkeeping(self):
        curve = run_experiment(tiny_data(), tiny_config(rounds=1, seeds=(0,)))
        assert [r.labeled for r in curve.rows] == [8, 12]
        assert [r.round for r in curve.rows] == [0, 1]
        assert all(0.0 <= r.accuracy <= 1.0 for r in curve.rows)

    def test_labeled_counts_follow_budget(self):
        curve = run_experiment(tiny_data(), tiny_config())
        for row in curve.rows:
            assert row.labeled == 8 + row.round * 4

    def test_deterministic_output(self):
        a = run_experiment(tiny_data(), tiny_config(strategy="entropy"))
        b = run_experiment(tiny_data(), tiny_config(strategy="entropy"))
        assert a.to_csv_text() == b.to_csv_text()

    def test_wall_ms_zero_by_default(self):
        curve = run_experiment(tiny_data(), tiny_config(seeds=(0,)))
        assert all(r.wall_ms == 0.0 for r in curve.rows)
        timed = run_experiment(tiny_data(), tiny_config(seeds=(0,), record_timings=True))
        assert any(r.wall_ms > 0.0 for r in timed.rows)

    def test_early_stop_flagged(self):
        # pool of 96 with budget 40: the second acquisition exhausts it
        config = tiny_config(initial_size=4, budget=40, rounds=4, seeds=(0,))
        curve = run_experiment(tiny_data(), config)
        assert curve.stopped_early == (0,)
        assert [r.labeled for r in curve.rows] == [4, 44, 84]

    def test_cover_radius_non_increasing_for_coreset(self):
        curve = run_experiment(tiny_data(), tiny_config(strategy="coreset-greedy", seeds=(0,)))
        radii = [r.cover_radius for r in curve.rows]
        assert all(b <= a for a, b in zip(radii, radii[1:]))

    def test_all_strategies_run(self):
        for strategy in ("random", "entropy", "oracle", "kmedoids",
                         "coreset-greedy", "coreset-robust"):
            curve = run_experiment(tiny_data(), tiny_config(strategy=strategy, seeds=(0,),
                                                            rounds=1))
            assert len(curve.rows) == 2

    def test_labels_required(self):
        data = tiny_data()
        unlabeled = type(data)(data.points, None, 0)
        with pytest.raises(ValueError):
            run_experiment(unlabeled, tiny_config())

    def test_radius_column_matches_oracle(self):
        data = tiny_data()
        config = tiny_config(strategy="coreset-greedy", seeds=(3,), rounds=1)
        curve = run_experiment(data, config)
        pool, _ = split_holdout(data)
        rng = np.random.default_rng(3)
        start = rng.choice(pool.n, size=config.initial_size, replace=False)
        oracle = DistanceOracle(pool)
        assert curve.rows[0].cover_radius == oracle.cover_radius(start)


class TestLearningCurveCsv:
    def test_round_trip(self, tmp_path):
        curve = run_experiment(tiny_data(), tiny_config(seeds=(0,)))
        path = tmp_path / "results.csv"
        curve.to_csv(path)
        back = LearningCurve.from_csv(path)
        assert back.rows == curve.rows
        assert path.read_text().splitlines()[0] == CSV_HEADER

    def test_header_enforced(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("nope\n1,2\n")
        with pytest.raises(ValueError):
            LearningCurve.from_csv(path)

    def test_series_grouping(self):
        curve = run_experiment(tiny_data(), tiny_config())
        xs, means, stds = curve.accuracy_series()
        assert list(xs) == [8, 12, 16]
        rows0 = [r.accuracy for r in curve.rows if r.round == 0]
        assert means[0] == pytest.approx(np.mean(rows0))
        assert stds[0] == pytest.approx(np.std(rows0))


class TestPlotFiles:
    def test_single_seed_zero_std(self, tmp_path):
        curve = run_experiment(tiny_data(), tiny_config(seeds=(0,)))
        _, _, stds = curve.accuracy_series()
        assert np.all(stds == 0.0)

    def test_constant_accuracy_across_seeds(self, tmp_path):
        from coreset_al.harness import CurveRow
        rows = [CurveRow(seed=s, round=0, labeled=10, accuracy=0.5, cover_radius=1.0,
                         coreset_loss=0.0, train_loss=0.0, wall_ms=0.0)
                for s in range(5)]
        curve = LearningCurve(rows)
        xs, means, stds = curve.accuracy_series()
        assert list(xs) == [10]
        assert means[0] == 0.5 and stds[0] == 0.0

    def test_known_population_std(self, tmp_path):
        vals = np.array([0.2, 0.4, 0.4, 0.6, 0.9])
        hand_mean = sum(vals) / 5
        hand_std = (sum((v - hand_mean) ** 2 for v in vals) / 5) ** 0.5
        series = [("s", (np.array([10.0]), np.array([vals.mean()]), np.array([vals.std()])))]
        dat, svg = emit_plot_data(series, tmp_path / "plot")
        text = dat.read_text()
        assert f"{hand_std:.6g}" in text
        assert svg.read_text().startswith("<svg")

    def test_table_and_svg_written(self, tmp_path):
        curve = run_experiment(tiny_data(), tiny_config())
        dat, svg = emit_plot_data([("random", curve.accuracy_series())], tmp_path / "out")
        assert dat.exists() and svg.exists()
        lines = [ln for ln in dat.read_text().splitlines() if ln and not ln.startswith("#")]
        assert len(lines) == 3  # one per recorded round
        for ln in lines:
            assert len(ln.split()) == 3

    def test_empty_series_rejected(self, tmp_path):
        with pytest.raises(ValueError):
            emit_plot_data([], tmp_path / "out")


class TestConfigValidation:
    def test_bad_sizes(self):
        with pytest.raises(ValueError):
            ExperimentConfig(strategy="random", initial_size=0, budget=1, rounds=1)
        with pytest.raises(ValueError):
            ExperimentConfig(strategy="random", initial_size=1, budget=1, rounds=1, seeds=())

    def test_bad_embedding(self):
        with pytest.raises(ValueError):
            ExperimentConfig(strategy="random", initial_size=1, budget=1, rounds=1,
                             embedding="pca")

    def test_logits_embedding_runs(self):
        config = tiny_config(strategy="coreset-greedy", seeds=(0,), rounds=1,
                             embedding="logits")
        curve = run_experiment(tiny_data(), config)
        assert len(curve.rows) == 2
