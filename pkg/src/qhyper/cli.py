"""Command-line front end: constant tables, transformed constants, and the
verification suites.

Exit codes: 0 success, 1 verification failure, 2 bad regime or arguments,
3 cache/file I/O failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys

from .constants import (
    VirtualConstantTable,
    cache_path,
    default_cache_dir,
    load_table,
    store_table,
)
from .correlators import FlatCorrelators
from .errors import CacheFormatError, QHyperError, UnsupportedRegimeError
from .exact import format_rational
from .mirror import real_structure_constant, real_window
from .verify import SUITES, run_suite

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_ARGS = 2
EXIT_IO = 3


def _emit_records(records, fmt: str, header) -> str:
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(header)
        for rec in records:
            writer.writerow([rec[h] for h in header])
        return buf.getvalue()
    widths = [max(len(str(h)), *(len(str(rec[h])) for rec in records)) if records else len(str(h))
              for h in header]
    lines = ["  ".join(str(h).ljust(w) for h, w in zip(header, widths)).rstrip()]
    for rec in records:
        lines.append("  ".join(str(rec[h]).ljust(w) for h, w in zip(header, widths)).rstrip())
    return "\n".join(lines) + "\n"


def _load_or_new_table(N: int, k: int, directory: str):
    path = cache_path(N, k, directory)
    if os.path.exists(path):
        return load_table(path), path
    return VirtualConstantTable(N, k), path


def cmd_vsc(args) -> int:
    if args.dmax > args.cap:
        print(f"error: --dmax {args.dmax} exceeds the cap {args.cap} (raise --cap)", file=sys.stderr)
        return EXIT_ARGS
    try:
        table, path = _load_or_new_table(args.N, args.k, args.cache_dir)
    except UnsupportedRegimeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ARGS
    except (OSError, CacheFormatError) as exc:
        print(f"cache error: {exc}", file=sys.stderr)
        return EXIT_IO
    records = []
    for d in range(1, args.dmax + 1):
        for m, value in enumerate(table.row(d)):
            records.append({"N": args.N, "k": args.k, "d": d, "m": m,
                            "value": format_rational(value)})
    if args.format == "json":
        payload = {
            "schema": 1, "N": args.N, "k": args.k,
            "entries": [{"d": r["d"], "m": r["m"], "value": r["value"]} for r in records],
        }
        sys.stdout.write(json.dumps(payload, indent=1) + "\n")
    else:
        sys.stdout.write(_emit_records(records, args.format, ("N", "k", "d", "m", "value")))
    if not args.no_cache:
        try:
            store_table(table, path)
        except OSError as exc:
            print(f"cache error: {exc}", file=sys.stderr)
            return EXIT_IO
    return EXIT_OK


def cmd_real(args) -> int:
    if args.d > args.cap:
        print(f"error: --d {args.d} exceeds the cap {args.cap} (raise --cap)", file=sys.stderr)
        return EXIT_ARGS
    try:
        table, path = _load_or_new_table(args.N, args.k, args.cache_dir)
    except UnsupportedRegimeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ARGS
    except (OSError, CacheFormatError) as exc:
        print(f"cache error: {exc}", file=sys.stderr)
        return EXIT_IO
    lo, hi = real_window(args.N, args.k, args.d)
    targets = args.n if args.n else list(range(lo, hi + 1))
    engine = FlatCorrelators(args.N, args.k, args.d, table=table)
    records = []
    for n in sorted(targets):
        if lo <= n <= hi:
            value = real_structure_constant(args.N, args.k, args.d, n, w=engine)
            note = ""
        else:
            value = 0
            note = f"outside window [{lo},{hi}]"
        records.append({"N": args.N, "k": args.k, "d": args.d, "n": n,
                        "value": format_rational(value), "note": note})
    if args.format == "json":
        payload = {
            "schema": 1, "N": args.N, "k": args.k,
            "L": [{"d": r["d"], "n": r["n"], "value": r["value"], "note": r["note"]}
                  for r in records],
        }
        sys.stdout.write(json.dumps(payload, indent=1) + "\n")
    else:
        sys.stdout.write(_emit_records(records, args.format, ("N", "k", "d", "n", "value", "note")))
    if not args.no_cache:
        try:
            store_table(table, path)
        except OSError as exc:
            print(f"cache error: {exc}", file=sys.stderr)
            return EXIT_IO
    return EXIT_OK


def cmd_verify(args) -> int:
    ok = True
    for name in args.suite:
        ok = run_suite(name) and ok
    return EXIT_OK if ok else EXIT_VERIFY


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qhyper",
        description="Exact structure constants of the quantum Kahler subring of "
                    "degree-k hypersurfaces in CP^{N-1}, general-type regime k > N.",
    )
    parser.add_argument("--cache-dir", default=None,
                        help="cache directory (default: $GW_CACHE_DIR or ./cache)")
    sub = parser.add_subparsers(dest="command", required=True)

    p_vsc = sub.add_parser("vsc", help="print rows of virtual structure constants")
    p_vsc.add_argument("--N", type=int, required=True)
    p_vsc.add_argument("--k", type=int, required=True)
    p_vsc.add_argument("--dmax", type=int, default=1)
    p_vsc.add_argument("--cap", type=int, default=8, help="hard cap on degrees (default 8)")
    p_vsc.add_argument("--format", choices=("json", "csv", "text"), default="text")
    p_vsc.add_argument("--no-cache", action="store_true")
    p_vsc.set_defaults(func=cmd_vsc)

    p_real = sub.add_parser("real", help="print transformed (real) structure constants")
    p_real.add_argument("--N", type=int, required=True)
    p_real.add_argument("--k", type=int, required=True)
    p_real.add_argument("--d", type=int, required=True)
    p_real.add_argument("--n", type=int, action="append",
                        help="index n (repeatable; default: the whole nonzero window)")
    p_real.add_argument("--cap", type=int, default=8, help="hard cap on degrees (default 8)")
    p_real.add_argument("--format", choices=("json", "csv", "text"), default="text")
    p_real.add_argument("--no-cache", action="store_true")
    p_real.set_defaults(func=cmd_real)

    p_ver = sub.add_parser("verify", help="run named verification suites")
    p_ver.add_argument("suite", nargs="+", choices=sorted(SUITES))
    p_ver.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.cache_dir is None:
        args.cache_dir = default_cache_dir()
    try:
        return args.func(args)
    except UnsupportedRegimeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ARGS
    except (OSError, CacheFormatError) as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except QHyperError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VERIFY


if __name__ == "__main__":
    sys.exit(main())
