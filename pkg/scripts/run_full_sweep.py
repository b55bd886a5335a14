"""Run the full size x measure x algorithm sweep on a cohesive corpus.

Generates a mixture-of-modes Dirichlet corpus (n=1000, k=44, 10 modes by
default), then sweeps dataset-size prefixes 200..1000 over both similarity
measures and all six algorithms. Emits report.csv plus per-metric plot-data
files under --out-dir.

Usage:
    python3 scripts/run_full_sweep.py --out-dir results/sweep [--seed 1]
"""

import argparse
import sys

from topiclust.cli import main as cli_main


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--out-dir", required=True)
    parser.add_argument("--seed", type=int, default=1)
    parser.add_argument("--n", type=int, default=1000)
    parser.add_argument("--k", type=int, default=44)
    parser.add_argument("--alpha", type=float, default=0.3)
    parser.add_argument("--modes", type=int, default=10)
    parser.add_argument("--mode-concentration", type=float, default=150.0)
    parser.add_argument("--threshold", default="auto")
    parser.add_argument("--workers", type=int, default=4)
    parser.add_argument("--sizes", default=None,
                        help="comma-separated ascending size prefixes (default: 200..n)")
    args = parser.parse_args(argv)

    sizes = args.sizes
    if sizes is None:
        sizes = ",".join(str(s) for s in range(200, args.n + 1, 100))
    return cli_main([
        "sweep",
        "--n", str(args.n),
        "--k", str(args.k),
        "--alpha", str(args.alpha),
        "--modes", str(args.modes),
        "--mode-concentration", str(args.mode_concentration),
        "--sizes", sizes,
        "--threshold", str(args.threshold),
        "--workers", str(args.workers),
        "--seed", str(args.seed),
        "--out-dir", args.out_dir,
    ])


if __name__ == "__main__":
    sys.exit(main())
