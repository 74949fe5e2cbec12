#!/usr/bin/env python3
"""Run the verification sweeps through the CLI and write one report per sweep.

    python3 scripts/run_sweeps.py --out-dir reports
"""

import argparse
import pathlib
import sys

from paradet.cli import main as cli

SWEEPS = {
    "transforms": ["verify", "--family", "transforms", "--N-range", "2..40"],
    "bernoulli": ["verify", "--family", "bernoulli", "--k", "1..4", "--N-range", "2..24"],
    "tan": ["verify", "--family", "tan", "--m", "1..5", "--N-range", "3..31"],
    "sun": ["sun", "--N-range", "3..99"],
    "generic-x": ["verify", "--family", "x", "--N-range", "3..16", "--samples", "20"],
    "generic-y": ["verify", "--family", "y", "--N-range", "3..16", "--samples", "20"],
    "generic-z": ["verify", "--family", "z", "--N-range", "3..16", "--samples", "20"],
}


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--out-dir", default="reports")
    parser.add_argument("--format", choices=("json", "csv"), default="json")
    parser.add_argument("--only", nargs="*", choices=sorted(SWEEPS), help="subset of sweeps")
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    out_dir = pathlib.Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    worst = 0
    for name in args.only or SWEEPS:
        path = out_dir / f"{name}.{args.format}"
        code = cli(SWEEPS[name] + ["--format", args.format, "--out", str(path), "--seed", str(args.seed)])
        print(f"{name:12s} exit {code}  -> {path}")
        worst = max(worst, code)
    return worst


if __name__ == "__main__":
    sys.exit(main())
