"""Command-line entry point: ``gilbreath {verify,bn,census,report,primes}``."""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from gilbreath import primes, report
from gilbreath.triangle import max_exception_row, verify_gilbreath

EXIT_OK, EXIT_COUNTEREXAMPLE, EXIT_CONFIG, EXIT_IO = 0, 1, 2, 3


def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--bound", type=int, default=report.triangle.DEFAULT_BOUND,
                        help="region bound S: cells with m + n <= S (default %(default)s)")
    common.add_argument("--max-n", type=int, default=None,
                        help="last column for the B tables (default S - 101, or S - 2 for small S)")
    common.add_argument("--lmax", type=int, default=report.census.DEFAULT_LMAX,
                        help="longest pattern length (default %(default)s)")
    common.add_argument("--out", type=Path, default=None, help="output directory (default: current)")
    common.add_argument("--cache", type=Path, default=None,
                        help=f"cache directory for primes and triangle snapshots (default ${report.CACHE_ENV})")
    common.add_argument("--workers", type=int, default=1, help="census worker threads")
    common.add_argument("--format", dest="fmt", choices=("csv", "json"), default="csv")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="gilbreath", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("verify", parents=[common], help="check d(m,1) = 1 and report the last row holding a value > 2")
    sub.add_parser("bn", parents=[common], help="B(n) table, its histogram, consecutive differences and moments")
    sub.add_parser("census", parents=[common], help="pattern counts in the two-valued region")
    sub.add_parser("report", parents=[common], help="every table as files in --out")
    sub.add_parser("primes", parents=[common], help="the first S-1 primes in cache format (stdout unless --out)")
    return parser


def _config(args) -> report.RunConfig:
    kwargs = dict(bound=args.bound, max_n=args.max_n, lmax=args.lmax,
                  out=args.out or Path("."), workers=args.workers, fmt=args.fmt)
    if args.cache is not None:
        kwargs["cache"] = args.cache
    return report.RunConfig(**kwargs).validate()


def cmd_verify(config: report.RunConfig) -> int:
    t = report.Pipeline(config).diff_triangle
    ok, row = verify_gilbreath(t)
    if not ok:
        print(f"gilbreath: COUNTEREXAMPLE at row {row}")
        return EXIT_COUNTEREXAMPLE
    print(f"gilbreath: OK, max exception row {max_exception_row(t)}")
    return EXIT_OK


def cmd_bn(config: report.RunConfig) -> int:
    p = report.Pipeline(config)
    outputs = report.b_outputs(p)
    report.write_outputs(outputs, config.out, config.fmt)
    if "moments" not in outputs:
        print(f"B(n) written for n < {config.bound}")
        return EXIT_OK
    signs = outputs["moments"]["diff_signs"]
    print(f"B(n) for n <= {config.max_n}: max {max(int(v) for v in p.btable.values[2:config.max_n + 1])}; "
          f"B(n+1)-B(n) negative {signs['negative']}, zero {signs['zero']}, positive {signs['positive']}")
    return EXIT_OK


def cmd_census(config: report.RunConfig) -> int:
    p = report.Pipeline(config)
    report.write_outputs(report.census_outputs(p), config.out, config.fmt)
    total, zeros, twos = p.eligible
    print(f"eligible cells {total}: zeros {zeros}, twos {twos}")
    return EXIT_OK


def cmd_report(config: report.RunConfig) -> int:
    paths = report.cmd_report(config)
    print(f"wrote {len(paths)} files to {config.out}")
    return EXIT_OK


def cmd_primes(config: report.RunConfig, to_file: bool) -> int:
    table = report.Pipeline(config).prime_table
    if to_file:
        config.out.mkdir(parents=True, exist_ok=True)
        path = config.out / f"primes_k{table.limit}.txt"
        primes.save_table(table, path)
        print(f"wrote {path}")
    else:
        sys.stdout.write(f"# primes k={table.limit}\n")
        sys.stdout.write("\n".join(str(int(v)) for v in table.values) + "\n")
    return EXIT_OK


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        config = _config(args)
        if args.command == "primes":
            return cmd_primes(config, args.out is not None)
        return {"verify": cmd_verify, "bn": cmd_bn, "census": cmd_census, "report": cmd_report}[args.command](config)
    except report.ConfigError as exc:
        print(f"gilbreath: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"gilbreath: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
