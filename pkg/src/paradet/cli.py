"""Command-line front end: determinants, verification sweeps, the sign-matrix
checks and a dense-versus-factorized benchmark.

Exit codes: 0 success, 1 a FAIL row, 2 domain error, 3 precision failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import random
import sys
import time
from dataclasses import asdict, dataclass, field

import mpmath

from .blockfact import (bernoulli_det_formula, det_via_factorization, sun_check,
                        tangent_det_formula, transform_det_check)
from .blockfact.bernoulli import bernoulli_det_value
from .blockfact.report import rows_to_csv
from .blockfact.tangent import tangent_det_value
from .blockfact.transforms import TRANSFORM_KINDS
from .exactnum import MIN_PRECISION, PrecisionError
from .matrices import (Bernoulli, TangentPower, build_matrix, det_exact, det_numeric, dump_matrix,
                       format_scalar, random_assignment, tangent_precision)
from .residues import DomainError

DEFAULT_PRECISION = 256
GENERIC = ("x", "y", "z")


@dataclass
class RunConfig:
    command: str
    N_values: list[int]
    family: str | None = None
    params: list[int] = field(default_factory=list)
    precision: int = DEFAULT_PRECISION
    fmt: str = "json"
    out: str | None = None
    seed: int = 0
    samples: int = 1
    dump_matrix: bool = False

    def __post_init__(self):
        if self.precision < MIN_PRECISION:
            raise DomainError(f"precision must be >= {MIN_PRECISION} bits")
        if not self.N_values:
            raise DomainError("empty N range")


def parse_range(text: str) -> list[int]:
    """'5', '2..24' or '1,3,5'."""
    out: list[int] = []
    for part in text.split(","):
        part = part.strip()
        if ".." in part:
            a, b = part.split("..", 1)
            out.extend(range(int(a), int(b) + 1))
        elif part:
            out.append(int(part))
    return out


def _default_precision() -> int:
    env = os.environ.get("PARADET_PRECISION")
    return int(env) if env else DEFAULT_PRECISION


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="paradet", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, families):
        p.add_argument("--N", type=int, help="single modulus")
        p.add_argument("--N-range", dest="N_range", help="range a..b (or a comma list)")
        if families:
            p.add_argument("--family", choices=families, required=True)
            p.add_argument("--k", help="Bernoulli index (int, a..b or list)")
            p.add_argument("--m", help="tangent exponent (int, a..b or list)")
        p.add_argument("--precision", type=int, default=_default_precision(),
                       help="working precision in bits (env PARADET_PRECISION)")
        p.add_argument("--format", dest="fmt", choices=("json", "csv"), default="json")
        p.add_argument("--out", help="write the report here instead of stdout")
        p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("det", help="determinant of one matrix, dense and factorized")
    common(p, ("x", "y", "z", "bernoulli", "tan"))
    p.add_argument("--dump-matrix", action="store_true", help="embed the matrix in the report")

    p = sub.add_parser("verify", help="factorized vs. dense determinants over a range")
    common(p, ("x", "y", "z", "bernoulli", "tan", "transforms"))
    p.add_argument("--samples", type=int, default=1, help="random assignments per N (x, y, z)")

    p = sub.add_parser("sun", help="exact sign-matrix checks for odd N")
    common(p, ())
    p.add_argument("--no-numeric", action="store_true", help="skip the LU cross-check")

    p = sub.add_parser("bench", help="time dense and factorized evaluation")
    common(p, ("bernoulli", "tan"))
    return parser


def config_from_args(args) -> RunConfig:
    if args.N_range:
        Ns = parse_range(args.N_range)
    elif args.N is not None:
        Ns = [args.N]
    else:
        raise DomainError("give --N or --N-range")
    family = getattr(args, "family", None)
    params: list[int] = []
    if family == "bernoulli":
        params = parse_range(args.k or "2")
    elif family == "tan":
        params = parse_range(args.m or "1")
    return RunConfig(command=args.command, N_values=Ns, family=family, params=params,
                     precision=args.precision, fmt=args.fmt, out=args.out, seed=args.seed,
                     samples=getattr(args, "samples", 1),
                     dump_matrix=getattr(args, "dump_matrix", False))


# --- commands -------------------------------------------------------------

def _assignment(config: RunConfig, N: int, param: int, rng: random.Random):
    if config.family == "bernoulli":
        return Bernoulli(param, N)
    if config.family == "tan":
        return TangentPower(param, N)
    return random_assignment(config.family, N, rng)


def _formula_report(config: RunConfig, a):
    if a.family == "bernoulli":
        return bernoulli_det_formula(a.param, a.N, config.precision)
    if a.family == "tan":
        return tangent_det_formula(a.param, a.N, config.precision)
    return det_via_factorization(a, config.precision)


def cmd_det(config: RunConfig) -> tuple[list[dict], bool]:
    rows = []
    ok = True
    params = config.params or [0]
    for N in config.N_values:
        for param in params:
            a = _assignment(config, N, param, random.Random(f"{config.seed}:{N}"))
            report = _formula_report(config, a)
            if a.exact:
                matrix = build_matrix(a)
                dense, method, singular = det_exact(matrix), "bareiss-exact", None
            else:
                prec = report.precision[0]
                matrix = build_matrix(a, prec)
                nd = det_numeric(matrix, prec)
                dense, method, singular = nd.value, "lu-partial-pivoting", nd.singular
            row = report.to_json()
            row.update({"param": param if config.family in ("bernoulli", "tan") else None,
                        "determinant": format_scalar(dense, report.precision[0]),
                        "method": method, "singular": singular, "seed": config.seed})
            if config.dump_matrix:
                row["matrix"] = json.loads(dump_matrix(matrix, report.precision[0]))
            rows.append(row)
            ok = ok and report.passed
    return rows, ok


def cmd_verify(config: RunConfig) -> tuple[list[dict], bool]:
    rows = []
    ok = True
    for N in config.N_values:
        if config.family == "transforms":
            if N < 2:
                raise DomainError("N must be >= 2")
            for kind in TRANSFORM_KINDS:
                rows.append(_row(transform_det_check(kind, N, config.precision), kind, config.seed))
        elif config.family in GENERIC:
            rng = random.Random(f"{config.seed}:{N}")
            for i in range(config.samples):
                report = det_via_factorization(random_assignment(config.family, N, rng), config.precision)
                rows.append(_row(report, i, config.seed))
        else:
            for param in config.params:
                if config.family == "tan" and N % 2 == 0:
                    rows.append({"N": N, "family": "tan", "param": param, "skipped": "even N",
                                 "pass": True})
                    continue
                report = _formula_report(config, _assignment(config, N, param, None))
                rows.append(_row(report, param, config.seed))
    for r in rows:
        ok = ok and r["pass"]
    rows.sort(key=lambda r: (r["N"], str(r["param"])))
    return rows, ok


def _row(report, param, seed) -> dict:
    row = report.to_json()
    row["param"] = param
    row["seed"] = seed
    return row


def cmd_sun(config: RunConfig, numeric: bool = True) -> tuple[list[dict], bool]:
    rows = []
    ok = True
    for N in config.N_values:
        if N % 2 == 0 or N < 3:
            rows.append({"N": N, "skipped": "N must be odd and >= 3", "pass": True})
            continue
        rec = sun_check(N, numeric=numeric)
        rows.append(rec.to_json())
        ok = ok and rec.ok
    return rows, ok


def cmd_bench(config: RunConfig) -> tuple[list[dict], bool]:
    rows = []
    for N in config.N_values:
        for param in config.params:
            if config.family == "tan":
                prec = max(config.precision, tangent_precision(N))
                t0 = time.perf_counter()
                dense = det_numeric(build_matrix(TangentPower(param, N), prec), prec).value
                t1 = time.perf_counter()
                block = tangent_det_value(param, N, prec)
                t2 = time.perf_counter()
            else:
                prec = config.precision
                t0 = time.perf_counter()
                dense = det_exact(build_matrix(Bernoulli(param, N)))
                t1 = time.perf_counter()
                block = bernoulli_det_value(param, N, prec)
                t2 = time.perf_counter()
            with mpmath.workprec(prec + 16):
                d = mpmath.mpf(dense.numerator) / dense.denominator if config.family == "bernoulli" else dense
                scale = max(abs(d), abs(block))
                rel = abs(d - block) / scale if scale else mpmath.mpf(0)
                # an exactly singular matrix: compare against the size of the entries
                agree = bool(rel < mpmath.ldexp(1, -(prec - 40))) or (block == 0 and abs(d) < mpmath.ldexp(1, -prec // 2))
            rows.append({"N": N, "family": config.family, "param": param, "precision_bits": prec,
                         "dense_seconds": round(t1 - t0, 4), "block_seconds": round(t2 - t1, 4),
                         "dense": format_scalar(dense, prec), "block": format_scalar(block, prec),
                         "rel_error": mpmath.nstr(rel, 6), "agree": agree, "pass": agree})
    return rows, all(r["agree"] for r in rows)


COMMANDS = {"det": cmd_det, "verify": cmd_verify, "sun": cmd_sun, "bench": cmd_bench}
SUN_COLUMNS = ("N", "n", "tau", "s_n", "t_n", "divisibility_i", "divisibility_ii", "sign_iii",
               "permutation_odd", "parity_rule_holds", "pass")


def render(config: RunConfig, rows: list[dict]) -> str:
    if config.fmt == "csv":
        if config.command == "sun":
            buf = io.StringIO()
            w = csv.DictWriter(buf, fieldnames=list(SUN_COLUMNS), extrasaction="ignore",
                               lineterminator="\n")
            w.writeheader()
            w.writerows(rows)
            return buf.getvalue()
        csv_rows = []
        for r in rows:
            csv_rows.append({"N": r["N"], "family": str(r.get("family", "")).split("(")[0],
                             "param": r.get("param", ""), "assembled": r.get("assembled", r.get("block", "")),
                             "oracle": r.get("oracle", r.get("dense", "")),
                             "rel_error": r.get("rel_error", ""), "pass": r["pass"]})
        return rows_to_csv(csv_rows)
    payload = {"command": config.command, "config": asdict(config), "rows": rows,
               "summary": {"rows": len(rows), "failed": sum(1 for r in rows if not r["pass"])}}
    return json.dumps(payload, indent=2, sort_keys=False) + "\n"


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = config_from_args(args)
        if config.command == "sun":
            rows, ok = cmd_sun(config, numeric=not args.no_numeric)
        else:
            rows, ok = COMMANDS[config.command](config)
    except PrecisionError as exc:
        print(f"precision failure: {exc}", file=sys.stderr)
        return 3
    except (DomainError, ValueError) as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return 2
    text = render(config, rows)
    if config.out:
        with open(config.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
