#!/usr/bin/env python3
"""Dense versus block-factorized determinant timings, printed as a table."""

import argparse

from paradet.cli import RunConfig, cmd_bench, parse_range


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--family", choices=("tan", "bernoulli"), default="tan")
    parser.add_argument("--param", type=int, default=1, help="m for tan, k for bernoulli")
    parser.add_argument("--N-range", dest="N_range", default="3..101")
    parser.add_argument("--precision", type=int, default=256)
    args = parser.parse_args()

    Ns = parse_range(args.N_range)
    if args.family == "tan":
        Ns = [N for N in Ns if N % 2]
    config = RunConfig(command="bench", N_values=Ns, family=args.family, params=[args.param],
                       precision=args.precision)
    rows, _ = cmd_bench(config)
    print(f"{'N':>4} {'bits':>6} {'dense s':>9} {'block s':>9} {'rel err':>12}  agree")
    for r in rows:
        print(f"{r['N']:>4} {r['precision_bits']:>6} {r['dense_seconds']:>9.4f} "
              f"{r['block_seconds']:>9.4f} {r['rel_error']:>12}  {r['agree']}")


if __name__ == "__main__":
    main()
