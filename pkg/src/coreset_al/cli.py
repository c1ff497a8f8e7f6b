"""Command-line interface.

Subcommands: gen-data, run, select, solve-kcenter, bound, plot. Exit code 0
on success; runtime failures print a single ``error: ...`` line to stderr
and exit nonzero. All outputs are byte-reproducible for identical flags and
seeds (run timings are recorded as 0 unless --timings is passed).
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from .data import generate_synthetic, load_dataset, save_dataset
from .geometry import DistanceOracle
from .harness import ExperimentConfig, LearningCurve, run_experiment
from .kcenter import k_center_greedy, robust_k_center
from .learner import CROSS_ENTROPY, SoftmaxClassifier
from .plotting import emit_plot_data
from .strategies import STRATEGY_IDS, AcquisitionRequest, make_strategy
from .theory import BoundInputs, bound_terms


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(2)


def _int_list(text: str) -> tuple:
    return tuple(int(p) for p in text.split(",") if p.strip() != "")


def _build_parser() -> _Parser:
    p = _Parser(prog="coreset-al",
                description="Core-set batch active learning toolkit")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen-data", parents=[], help="generate a synthetic dataset")
    g.add_argument("--classes", type=int, required=True)
    g.add_argument("--per-class", type=int, required=True)
    g.add_argument("--dim", type=int, required=True)
    g.add_argument("--spread", type=float, default=1.0)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--out", type=Path, required=True,
                   help="output path (.csv for CSV, anything else binary)")

    r = sub.add_parser("run", help="run a multi-round simulation")
    src = r.add_mutually_exclusive_group(required=True)
    src.add_argument("--data", type=Path, help="dataset file")
    src.add_argument("--synthetic", metavar="C,PER_CLASS,DIM[,SPREAD[,SEED]]",
                     help="generate the dataset on the fly")
    r.add_argument("--strategy", choices=STRATEGY_IDS, required=True)
    r.add_argument("--initial", type=int, required=True, help="initial pool size")
    r.add_argument("--budget", type=int, required=True, help="points revealed per round")
    r.add_argument("--rounds", type=int, required=True)
    r.add_argument("--seeds", type=_int_list, default=(0, 1, 2, 3, 4))
    r.add_argument("--xi-frac", type=float, default=1e-4,
                   help="outlier budget as a fraction of the unlabeled pool")
    r.add_argument("--time-limit-s", type=float, default=30.0)
    r.add_argument("--learning-rate", type=float, default=0.1)
    r.add_argument("--epochs", type=int, default=500)
    r.add_argument("--l2", type=float, default=1e-4)
    r.add_argument("--embedding", choices=("raw", "logits"), default="raw")
    r.add_argument("--timings", action="store_true",
                   help="record real wall-clock times (breaks byte-reproducibility)")
    r.add_argument("--out", type=Path, required=True, help="results CSV path")

    s = sub.add_parser("select", help="one-shot acquisition on a dataset")
    s.add_argument("--data", type=Path, required=True)
    s.add_argument("--strategy", choices=STRATEGY_IDS, required=True)
    s.add_argument("--budget", type=int, required=True)
    lab = s.add_mutually_exclusive_group(required=True)
    lab.add_argument("--labeled", type=_int_list, help="labeled indices, comma separated")
    lab.add_argument("--initial", type=int, help="draw this many labeled points at random")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--xi-frac", type=float, default=1e-4)
    s.add_argument("--time-limit-s", type=float, default=30.0)
    s.add_argument("--epochs", type=int, default=500)
    s.add_argument("--out", type=Path, help="write picks here (default stdout)")

    k = sub.add_parser("solve-kcenter", help="solve one k-center instance")
    k.add_argument("--data", type=Path, required=True)
    k.add_argument("--mode", choices=("greedy", "robust"), default="greedy")
    k.add_argument("--budget", type=int, required=True)
    lab = k.add_mutually_exclusive_group(required=True)
    lab.add_argument("--labeled", type=_int_list, help="fixed center indices")
    lab.add_argument("--initial", type=int, help="draw this many fixed centers at random")
    k.add_argument("--seed", type=int, default=0)
    k.add_argument("--xi", type=int, default=None, help="outlier budget (count)")
    k.add_argument("--xi-frac", type=float, default=1e-4)
    k.add_argument("--time-limit-s", type=float, default=30.0)
    k.add_argument("--out", type=Path, help="write the solution here (default stdout)")

    b = sub.add_parser("bound", help="evaluate the core-set loss bound")
    b.add_argument("--cover-radius", type=float, required=True)
    b.add_argument("--loss-lipschitz", type=float, required=True)
    b.add_argument("--prob-lipschitz", type=float, required=True)
    b.add_argument("--loss-bound", type=float, default=float(np.sqrt(2.0)))
    b.add_argument("--num-classes", type=int, required=True)
    b.add_argument("--num-samples", type=int, required=True)
    b.add_argument("--gamma", type=float, default=0.05)

    pl = sub.add_parser("plot", help="aggregate results CSVs into plot files")
    pl.add_argument("inputs", type=Path, nargs="+", help="results CSV files")
    pl.add_argument("--labels", type=str, default=None,
                    help="comma-separated series names (default: file stems)")
    pl.add_argument("--out", type=Path, required=True, help="output base path")
    return p


def _parse_synthetic(text: str):
    parts = [p.strip() for p in text.split(",")]
    if not 3 <= len(parts) <= 5:
        raise ValueError("--synthetic takes C,PER_CLASS,DIM[,SPREAD[,SEED]]")
    classes, per_class, dim = (int(p) for p in parts[:3])
    spread = float(parts[3]) if len(parts) > 3 else 1.0
    seed = int(parts[4]) if len(parts) > 4 else 0
    return generate_synthetic(classes, per_class, dim, spread=spread, seed=seed)


def _emit(text: str, out: Path | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        out.parent.mkdir(parents=True, exist_ok=True)
        out.write_text(text)


def _cmd_gen_data(args) -> int:
    fs = generate_synthetic(args.classes, args.per_class, args.dim,
                            spread=args.spread, seed=args.seed)
    args.out.parent.mkdir(parents=True, exist_ok=True)
    save_dataset(args.out, fs)
    print(f"wrote {args.out} (n={fs.n}, d={fs.dim}, classes={fs.num_classes})")
    return 0


def _cmd_run(args) -> int:
    data = load_dataset(args.data) if args.data else _parse_synthetic(args.synthetic)
    config = ExperimentConfig(
        strategy=args.strategy, initial_size=args.initial, budget=args.budget,
        rounds=args.rounds, seeds=tuple(args.seeds), xi_frac=args.xi_frac,
        learning_rate=args.learning_rate, epochs=args.epochs, l2_penalty=args.l2,
        time_limit_s=args.time_limit_s, embedding=args.embedding,
        record_timings=args.timings,
    )
    curve = run_experiment(data, config)
    args.out.parent.mkdir(parents=True, exist_ok=True)
    curve.to_csv(args.out)
    if curve.stopped_early:
        print(f"note: pool exhausted early for seeds {sorted(set(curve.stopped_early))}")
    print(f"wrote {args.out} ({len(curve.rows)} rows)")
    return 0


def _pick_labeled(args, n: int) -> np.ndarray:
    if args.labeled is not None:
        return np.asarray(args.labeled, dtype=np.int64)
    rng = np.random.default_rng(args.seed)
    return rng.choice(n, size=args.initial, replace=False)


def _cmd_select(args) -> int:
    data = load_dataset(args.data)
    labeled = _pick_labeled(args, data.n)
    unlabeled = np.setdiff1d(np.arange(data.n), labeled)
    xi = int(args.xi_frac * unlabeled.size)
    strategy = make_strategy(args.strategy, outlier_cap=xi,
                             time_limit_s=args.time_limit_s)
    request = AcquisitionRequest(
        labeled=labeled, unlabeled=unlabeled, budget=args.budget, seed=args.seed,
        features=data.points.astype(np.float64),
    )
    if args.strategy in ("entropy", "oracle"):
        if not data.has_labels:
            raise ValueError(f"strategy {args.strategy} needs a labeled dataset")
        model = SoftmaxClassifier(num_classes=data.num_classes, epochs=args.epochs)
        model.fit(data.points[labeled], data.labels[labeled])
        if args.strategy == "entropy":
            request.probabilities = model.predict_proba(data.points[unlabeled])
        else:
            request.losses = model.point_losses(
                data.points[unlabeled], data.labels[unlabeled],
                kind=CROSS_ENTROPY).values
    if args.strategy.startswith("coreset"):
        request.oracle = DistanceOracle(data)
    picks = strategy.select(request)
    _emit("".join(f"{int(i)}\n" for i in picks), args.out)
    return 0


def _cmd_solve_kcenter(args) -> int:
    data = load_dataset(args.data)
    oracle = DistanceOracle(data)
    labeled = _pick_labeled(args, data.n)
    xi = args.xi if args.xi is not None else int(args.xi_frac * data.n)
    if args.mode == "greedy":
        picks = k_center_greedy(oracle, labeled, args.budget)
        centers = np.sort(np.concatenate([labeled, picks]))
        radius = oracle.cover_radius(centers)
        outliers = np.empty(0, dtype=np.int64)
        optimal = False
    else:
        sol = robust_k_center(oracle, labeled, args.budget, outlier_cap=xi,
                              time_limit_s=args.time_limit_s)
        centers, outliers, radius, optimal = (sol.centers, sol.outliers,
                                              sol.radius, sol.optimal)
    lines = [f"center,{int(c)}" for c in centers]
    lines += [f"outlier,{int(o)}" for o in outliers]
    lines.append(f"radius,{radius!r}")
    lines.append(f"optimal,{int(optimal)}")
    _emit("\n".join(lines) + "\n", args.out)
    return 0


def _cmd_bound(args) -> int:
    inputs = BoundInputs(
        cover_radius=args.cover_radius, loss_lipschitz=args.loss_lipschitz,
        prob_lipschitz=args.prob_lipschitz, loss_bound=args.loss_bound,
        num_classes=args.num_classes, num_samples=args.num_samples,
        gamma=args.gamma,
    )
    coverage, sampling = bound_terms(inputs)
    print(f"coverage_term,{coverage!r}")
    print(f"sampling_term,{sampling!r}")
    print(f"bound,{coverage + sampling!r}")
    return 0


def _cmd_plot(args) -> int:
    names = ([s.strip() for s in args.labels.split(",")] if args.labels
             else [p.stem for p in args.inputs])
    if len(names) != len(args.inputs):
        raise ValueError("--labels must name every input file")
    series = []
    for name, path in zip(names, args.inputs):
        curve = LearningCurve.from_csv(path)
        series.append((name, curve.accuracy_series()))
    dat, svg = emit_plot_data(series, args.out)
    print(f"wrote {dat} and {svg}")
    return 0


_COMMANDS = {
    "gen-data": _cmd_gen_data,
    "run": _cmd_run,
    "select": _cmd_select,
    "solve-kcenter": _cmd_solve_kcenter,
    "bound": _cmd_bound,
    "plot": _cmd_plot,
}


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        return _COMMANDS[args.command](args)
    except SystemExit as exc:
        return int(exc.code or 0)
    except Exception as exc:  # noqa: BLE001 - CLI boundary
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
