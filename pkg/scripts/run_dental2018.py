#!/usr/bin/env python3
"""Full provider-classification pipeline on the 2018 dental utilization CSV.

The dataset is user-supplied (see README for the expected columns; the
built-in ``dental2018`` schema preset names them). Produces the feature
ranking, the 20x12 accuracy matrix over incremental feature subsets, and the
accuracy-vs-subset-size plot.

This is a thin wrapper over the CLI:

    provclass rank  --input DATA --preset dental2018 --out OUT
    provclass sweep --input DATA --preset dental2018 --out OUT ...

Expect the full 20x12x10-fold sweep to take tens of minutes on commodity
hardware; pass --models to restrict the roster for a quicker look.
"""

import argparse
import subprocess
import sys


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("data", help="path to the provider CSV")
    parser.add_argument("--out", default="dental2018_run")
    parser.add_argument("--seed", type=int, default=42)
    parser.add_argument("--folds", type=int, default=10)
    parser.add_argument("--models", default=None, help="comma list; default all twelve")
    parser.add_argument("--order", default=None, help="explicit feature-order file")
    parser.add_argument("--workers", type=int, default=4)
    parser.add_argument("--smote", action="store_true", help="oversample training folds")
    args = parser.parse_args()

    base = [sys.executable, "-m", "provclass.cli"]

    rank_cmd = base + [
        "rank", "--input", args.data, "--preset", "dental2018",
        "--out", args.out, "--seed", str(args.seed),
    ]
    print("$", " ".join(rank_cmd[2:]))
    subprocess.run(rank_cmd, check=True)

    sweep_cmd = base + [
        "sweep", "--input", args.data, "--preset", "dental2018",
        "--out", args.out, "--seed", str(args.seed),
        "--folds", str(args.folds), "--workers", str(args.workers),
    ]
    if args.models:
        sweep_cmd += ["--models", args.models]
    if args.order:
        sweep_cmd += ["--order", args.order]
    if args.smote:
        sweep_cmd += ["--smote"]
    print("$", " ".join(sweep_cmd[2:]))
    subprocess.run(sweep_cmd, check=True)
    print(f"done; see {args.out}/ranking.csv, {args.out}/matrix.csv, {args.out}/accuracy.svg")


if __name__ == "__main__":
    main()
