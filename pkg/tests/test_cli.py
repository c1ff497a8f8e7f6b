import numpy as np
import pytest

from coreset_al.cli import main
from coreset_al.data import load_dataset


def run_cli(*args):
    return main([str(a) for a in args])


@pytest.fixture()
def dataset(tmp_path):
    path = tmp_path / "pool.bin"
    code = run_cli("gen-data", "--classes", 3, "--per-class", 30, "--dim", 3,
                   "--spread", 0.8, "--seed", 1, "--out", path)
    assert code == 0
    return path


class TestGenData:
    def test_writes_loadable_dataset(self, dataset):
        fs = load_dataset(dataset)
        assert fs.n == 90 and fs.dim == 3 and fs.num_classes == 3

    def test_byte_identical_on_repeat(self, tmp_path):
        a, b = tmp_path / "a.bin", tmp_path / "b.bin"
        run_cli("gen-data", "--classes", 2, "--per-class", 10, "--dim", 2,
                "--seed", 5, "--out", a)
        run_cli("gen-data", "--classes", 2, "--per-class", 10, "--dim", 2,
                "--seed", 5, "--out", b)
        assert a.read_bytes() == b.read_bytes()

    def test_csv_output(self, tmp_path):
        path = tmp_path / "pool.csv"
        run_cli("gen-data", "--classes", 2, "--per-class", 5, "--dim", 2,
                "--seed", 0, "--out", path)
        assert path.read_text().startswith("f0,f1,label")


class TestRun:
    def test_results_csv_deterministic(self, dataset, tmp_path):
        out1, out2 = tmp_path / "r1.csv", tmp_path / "r2.csv"
        args = ("run", "--data", dataset, "--strategy", "entropy", "--initial", 6,
                "--budget", 4, "--rounds", 2, "--seeds", "0,1", "--epochs", 25)
        assert run_cli(*args, "--out", out1) == 0
        assert run_cli(*args, "--out", out2) == 0
        assert out1.read_bytes() == out2.read_bytes()
        header = out1.read_text().splitlines()[0]
        assert header == "seed,round,labeled,accuracy,cover_radius,coreset_loss,train_loss,wall_ms"

    def test_synthetic_source(self, tmp_path):
        out = tmp_path / "r.csv"
        code = run_cli("run", "--synthetic", "3,30,3,0.8,1", "--strategy", "random",
                       "--initial", 6, "--budget", 4, "--rounds", 1, "--seeds", "0",
                       "--epochs", 10, "--out", out)
        assert code == 0
        assert len(out.read_text().splitlines()) == 3  # header + 2 rounds


class TestSelect:
    def test_writes_budget_indices(self, dataset, tmp_path):
        out = tmp_path / "picks.txt"
        code = run_cli("select", "--data", dataset, "--strategy", "coreset-greedy",
                       "--budget", 5, "--initial", 4, "--seed", 2, "--out", out)
        assert code == 0
        picks = [int(x) for x in out.read_text().split()]
        assert len(picks) == 5 and len(set(picks)) == 5

    def test_explicit_labeled_indices(self, dataset, tmp_path, capsys):
        code = run_cli("select", "--data", dataset, "--strategy", "random",
                       "--budget", 3, "--labeled", "0,1,2", "--seed", 0)
        assert code == 0
        picks = [int(x) for x in capsys.readouterr().out.split()]
        assert len(picks) == 3 and not set(picks) & {0, 1, 2}

    @pytest.mark.parametrize("strategy", ["random", "entropy", "oracle", "kmedoids",
                                          "coreset-greedy", "coreset-robust"])
    def test_every_strategy_id(self, dataset, tmp_path, strategy):
        out = tmp_path / f"{strategy}.txt"
        code = run_cli("select", "--data", dataset, "--strategy", strategy,
                       "--budget", 4, "--initial", 6, "--seed", 3, "--epochs", 30,
                       "--out", out)
        assert code == 0
        picks = [int(x) for x in out.read_text().split()]
        assert len(picks) == 4 and len(set(picks)) == 4


class TestSolveKCenter:
    def test_greedy_output_format(self, dataset, tmp_path):
        out = tmp_path / "sol.csv"
        code = run_cli("solve-kcenter", "--data", dataset, "--mode", "greedy",
                       "--budget", 4, "--labeled", "0", "--out", out)
        assert code == 0
        lines = out.read_text().splitlines()
        centers = [ln for ln in lines if ln.startswith("center,")]
        assert len(centers) == 5
        assert any(ln.startswith("radius,") for ln in lines)
        assert "optimal,0" in lines

    def test_robust_reports_optimal(self, dataset, tmp_path):
        out = tmp_path / "sol.csv"
        code = run_cli("solve-kcenter", "--data", dataset, "--mode", "robust",
                       "--budget", 4, "--labeled", "0", "--xi", 1,
                       "--time-limit-s", 30, "--out", out)
        assert code == 0
        lines = out.read_text().splitlines()
        assert "optimal,1" in lines
        radius = float([ln for ln in lines if ln.startswith("radius,")][0].split(",")[1])
        assert radius >= 0.0


class TestBound:
    def test_prints_terms_and_bound(self, capsys):
        code = run_cli("bound", "--cover-radius", 0.0, "--loss-lipschitz", 1.0,
                       "--prob-lipschitz", 1.0, "--loss-bound", 1.0,
                       "--num-classes", 2, "--num-samples", 1,
                       "--gamma", float(np.exp(-2)))
        assert code == 0
        out = dict(line.split(",") for line in capsys.readouterr().out.splitlines())
        assert float(out["coverage_term"]) == 0.0
        assert float(out["sampling_term"]) == pytest.approx(1.0, rel=1e-12)
        assert float(out["bound"]) == pytest.approx(1.0, rel=1e-12)


class TestPlot:
    def test_plot_files(self, dataset, tmp_path):
        r1 = tmp_path / "random.csv"
        run_cli("run", "--data", dataset, "--strategy", "random", "--initial", 6,
                "--budget", 4, "--rounds", 1, "--seeds", "0,1", "--epochs", 10,
                "--out", r1)
        code = run_cli("plot", r1, "--out", tmp_path / "fig")
        assert code == 0
        assert (tmp_path / "fig.dat").exists()
        assert (tmp_path / "fig.svg").read_text().startswith("<svg")

    def test_label_count_mismatch(self, dataset, tmp_path, capsys):
        r1 = tmp_path / "r.csv"
        run_cli("run", "--data", dataset, "--strategy", "random", "--initial", 6,
                "--budget", 4, "--rounds", 1, "--seeds", "0", "--epochs", 10,
                "--out", r1)
        code = run_cli("plot", r1, "--labels", "a,b", "--out", tmp_path / "fig")
        assert code == 1
        assert capsys.readouterr().err.startswith("error:")


class TestErrors:
    def test_missing_file_is_one_line_error(self, tmp_path, capsys):
        code = run_cli("select", "--data", tmp_path / "nope.bin", "--strategy",
                       "random", "--budget", 1, "--labeled", "0")
        assert code == 1
        err = capsys.readouterr().err
        assert err.startswith("error:")
        assert len(err.strip().splitlines()) == 1

    def test_bad_usage_exits_2(self, capsys):
        code = run_cli("run", "--strategy", "random")
        assert code == 2
        assert capsys.readouterr().err.startswith("error:")

    def test_unknown_strategy_rejected(self, dataset, capsys):
        code = run_cli("select", "--data", dataset, "--strategy", "margin",
                       "--budget", 1, "--labeled", "0")
        assert code == 2
