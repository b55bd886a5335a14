"""Command-line front-end: generate datasets, build golds, cluster, evaluate, sweep.

Exit codes: 0 success, 2 invalid arguments, 3 I/O failure, 4 threshold
estimation failed. A key=value config file can stand in for flags via
``--config``; explicit flags win on conflict.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from topiclust.baselines import DbscanConfig, KMeansConfig, RandomConfig
from topiclust.clustering import CrdcConfig, RdcConfig, TdcConfig, intra_cluster_pair_count
from topiclust.distributions import (
    DatasetSpec,
    load_dataset,
    sample_dataset,
    save_dataset,
)
from topiclust.errors import (
    DatasetFormatError,
    InvalidArgumentError,
    ThresholdEstimationError,
)
from topiclust.evaluation import (
    EvaluationReport,
    Measure,
    build_gold,
    evaluate,
    load_gold,
    run_algorithm,
    save_gold,
)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_IO = 3
EXIT_ESTIMATION = 4

DEFAULT_SIZES = [200, 300, 400, 500, 600, 700, 800, 900, 1000]
ALGO_NAMES = ["tdc", "rdc", "crdc", "kmeans", "dbscan", "random"]


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="topiclust",
        description="Linear-time clustering of topic distributions and its evaluation harness.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--config", help="key=value file supplying defaults for flags")
        p.add_argument("--seed", type=int, default=0)

    g = sub.add_parser("generate", help="sample a synthetic Dirichlet dataset")
    add_common(g)
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--k", type=int, required=True)
    g.add_argument("--alpha", type=float, default=None, help="default: 50/k")
    g.add_argument("--modes", type=int, default=1)
    g.add_argument("--mode-concentration", type=float, default=100.0)
    g.add_argument("--out", required=True)

    d = sub.add_parser("gold", help="build a gold standard from a dataset")
    add_common(d)
    d.add_argument("dataset")
    d.add_argument("--measure", choices=["js", "he"], default="js")
    d.add_argument("--threshold", default="auto", help="similarity threshold or 'auto'")
    d.add_argument("--workers", type=int, default=1)
    d.add_argument("--out", required=True)

    c = sub.add_parser("cluster", help="cluster a dataset and print group sizes")
    add_common(c)
    c.add_argument("dataset")
    _add_algo_flags(c)

    e = sub.add_parser("evaluate", help="score one algorithm against a gold standard")
    add_common(e)
    e.add_argument("dataset")
    e.add_argument("--gold", required=True)
    e.add_argument("--measure", choices=["js", "he"], default="js")
    _add_algo_flags(e)

    s = sub.add_parser("sweep", help="run the size x measure x algorithm sweep")
    add_common(s)
    s.add_argument("--dataset", help="JSONL dataset file (otherwise generated from --n/--k)")
    s.add_argument("--n", type=int, default=1000)
    s.add_argument("--k", type=int, default=44)
    s.add_argument("--alpha", type=float, default=None)
    s.add_argument("--modes", type=int, default=1)
    s.add_argument("--mode-concentration", type=float, default=100.0)
    s.add_argument("--sizes", default=",".join(map(str, DEFAULT_SIZES)))
    s.add_argument("--measures", default="js,he")
    s.add_argument("--algos", default=",".join(ALGO_NAMES))
    s.add_argument("--threshold", default="auto")
    s.add_argument("--workers", type=int, default=1)
    s.add_argument("--out-dir", required=True)
    _add_algo_param_flags(s)
    return parser


def _add_algo_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--algo", choices=ALGO_NAMES, required=True)
    _add_algo_param_flags(p)


def _add_algo_param_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--trend-epsilon", type=float, default=1e-9, help="TDC level tolerance")
    p.add_argument("--top", type=int, default=1, help="RDC top-n")
    p.add_argument("--cum-weight", type=float, default=0.9, help="CRDC cumulative threshold")
    p.add_argument("--k-clusters", type=int, default=None, help="K-Means k (default: dimension)")
    p.add_argument("--max-iter", type=int, default=50)
    p.add_argument("--eps", type=float, default=0.1)
    p.add_argument("--min-pts", type=int, default=50)
    p.add_argument("--m", type=int, default=None, help="random partition groups (default: dimension)")


def _algo_config(name: str, args: argparse.Namespace, dim: int, n: int):
    if name == "tdc":
        return TdcConfig(epsilon=args.trend_epsilon)
    if name == "rdc":
        return RdcConfig(top=args.top)
    if name == "crdc":
        return CrdcConfig(cum_weight=args.cum_weight)
    if name == "kmeans":
        k = args.k_clusters if args.k_clusters is not None else min(dim, n)
        return KMeansConfig(k=k, max_iterations=args.max_iter, seed=args.seed)
    if name == "dbscan":
        return DbscanConfig(eps=args.eps, min_pts=args.min_pts)
    if name == "random":
        m = args.m if args.m is not None else min(dim, n)
        return RandomConfig(m=m, seed=args.seed)
    raise InvalidArgumentError(f"unknown algorithm {name!r}")


def _apply_config_file(argv: list[str]) -> list[str]:
    """Expand --config FILE into flags placed before the user's own flags."""
    if "--config" not in argv:
        return argv
    i = argv.index("--config")
    if i + 1 >= len(argv):
        raise InvalidArgumentError("--config requires a file path")
    path = argv[i + 1]
    rest = argv[:i] + argv[i + 2:]
    flags: list[str] = []
    for lineno, line in enumerate(Path(path).read_text().splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, value = line.partition("=")
        if not sep:
            raise InvalidArgumentError(f"{path}:{lineno}: expected key=value, got {line!r}")
        flags.extend([f"--{key.strip().replace('_', '-')}", value.strip()])
    # config flags come first so explicit flags win
    return [rest[0]] + flags + rest[1:]


def _cmd_generate(args: argparse.Namespace) -> int:
    alpha = args.alpha if args.alpha is not None else 50.0 / args.k
    spec = DatasetSpec(
        n=args.n,
        k=args.k,
        alpha=alpha,
        modes=args.modes,
        mode_concentration=args.mode_concentration,
        seed=args.seed,
    )
    dataset = sample_dataset(spec)
    save_dataset(args.out, dataset)
    print(f"wrote {args.out}: n={spec.n} k={spec.k} alpha={spec.alpha} "
          f"modes={spec.modes} seed={spec.seed}")
    return EXIT_OK


def _cmd_gold(args: argparse.Namespace) -> int:
    dataset = load_dataset(args.dataset)
    threshold = args.threshold if args.threshold == "auto" else float(args.threshold)
    gold = build_gold(dataset, Measure(args.measure), threshold, workers=args.workers)
    save_gold(args.out, gold)
    hist = gold.histogram
    print("histogram:", " ".join(f"{k}:{v}" for k, v in sorted(hist.bins.items())))
    print(f"threshold={gold.threshold}")
    print(f"minSim={gold.min_sim} totalSim={gold.total_sim}")
    print(f"wrote {args.out}")
    return EXIT_OK


def _cmd_cluster(args: argparse.Namespace) -> int:
    dataset = load_dataset(args.dataset)
    if not dataset:
        raise InvalidArgumentError("dataset is empty")
    config = _algo_config(args.algo, args, dataset[0].dim, len(dataset))
    clustering = run_algorithm(dataset, config)
    sizes = sorted((len(g) for g in clustering.groups.values()), reverse=True)
    print(f"algorithm={clustering.algorithm} clusters={clustering.cluster_count} "
          f"assignment_comparisons={clustering.assignment_comparisons} "
          f"intra_pairs={intra_cluster_pair_count(clustering)}")
    print("sizes:", " ".join(map(str, sizes[:20])) + (" ..." if len(sizes) > 20 else ""))
    return EXIT_OK


def _cmd_evaluate(args: argparse.Namespace) -> int:
    dataset = load_dataset(args.dataset)
    if not dataset:
        raise InvalidArgumentError("dataset is empty")
    gold = load_gold(args.gold)
    config = _algo_config(args.algo, args, dataset[0].dim, len(dataset))
    report = evaluate(dataset, config, Measure(args.measure), gold)
    print(EvaluationReport.CSV_HEADER)
    print(report.csv_row())
    return EXIT_OK


PLOT_METRICS = ["cost", "precision", "recall", "effectiveness", "efficiency", "clusters"]


def _cmd_sweep(args: argparse.Namespace) -> int:
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    if args.dataset:
        dataset = load_dataset(args.dataset)
    else:
        alpha = args.alpha if args.alpha is not None else 50.0 / args.k
        dataset = sample_dataset(DatasetSpec(
            n=args.n, k=args.k, alpha=alpha, modes=args.modes,
            mode_concentration=args.mode_concentration, seed=args.seed,
        ))
    if not dataset:
        raise InvalidArgumentError("dataset is empty")
    sizes = [int(s) for s in args.sizes.split(",") if s]
    if sizes != sorted(sizes):
        raise InvalidArgumentError("sizes must be ascending")
    if sizes and sizes[-1] > len(dataset):
        raise InvalidArgumentError(
            f"largest size {sizes[-1]} exceeds dataset size {len(dataset)}"
        )
    measures = [Measure(m) for m in args.measures.split(",") if m]
    algos = [a for a in args.algos.split(",") if a]
    if not sizes or not measures or not algos:
        raise InvalidArgumentError("need at least one size, measure, and algorithm")
    for a in algos:
        if a not in ALGO_NAMES:
            raise InvalidArgumentError(f"unknown algorithm {a!r}")
    threshold = args.threshold if args.threshold == "auto" else float(args.threshold)

    rows: list[EvaluationReport] = []
    report_path = out_dir / "report.csv"
    try:
        for size in sizes:
            prefix = dataset[:size]
            for measure in measures:
                gold = build_gold(prefix, measure, threshold, workers=args.workers)
                for algo in algos:
                    config = _algo_config(algo, args, prefix[0].dim, size)
                    rows.append(evaluate(prefix, config, measure, gold))
    except Exception as exc:
        _write_report(report_path, rows, partial=str(exc))
        raise
    _write_report(report_path, rows)
    _write_plot_data(out_dir, rows, sizes, measures, algos)
    print(f"wrote {report_path} ({len(rows)} rows)")
    return EXIT_OK


def _write_report(path: Path, rows: list[EvaluationReport], partial: str | None = None) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        if partial is not None:
            fh.write(f"# PARTIAL RESULTS: aborted with: {partial}\n")
        fh.write(EvaluationReport.CSV_HEADER + "\n")
        for row in rows:
            fh.write(row.csv_row() + "\n")


def _write_plot_data(
    out_dir: Path,
    rows: list[EvaluationReport],
    sizes: list[int],
    measures: list[Measure],
    algos: list[str],
) -> None:
    """One CSV per metric and measure: size in the first column, one column per algorithm."""
    by_key = {(r.size, r.measure, r.algorithm): r for r in rows}
    for measure in measures:
        for metric in PLOT_METRICS:
            path = out_dir / f"plot_{metric}_{measure.value}.csv"
            with open(path, "w", encoding="utf-8") as fh:
                fh.write("size," + ",".join(algos) + "\n")
                for size in sizes:
                    values = []
                    for algo in algos:
                        r = by_key[(size, measure, algo)]
                        v = r.cluster_count if metric == "clusters" else getattr(r, metric)
                        values.append(str(v) if metric == "clusters" else f"{v:.6f}")
                    fh.write(f"{size}," + ",".join(values) + "\n")


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = _build_parser()
    try:
        if argv and not argv[0].startswith("-"):
            argv = _apply_config_file(argv)
        args = parser.parse_args(argv)
        handler = {
            "generate": _cmd_generate,
            "gold": _cmd_gold,
            "cluster": _cmd_cluster,
            "evaluate": _cmd_evaluate,
            "sweep": _cmd_sweep,
        }[args.command]
        return handler(args)
    except (OSError, DatasetFormatError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (InvalidArgumentError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ThresholdEstimationError as exc:
        print(f"error: threshold estimation failed: {exc}; pass --threshold VALUE",
              file=sys.stderr)
        return EXIT_ESTIMATION


if __name__ == "__main__":
    sys.exit(main())
