"""Command line driver: ``gkpcb run`` and ``gkpcb oracle``."""
from __future__ import annotations

import argparse
import logging
import sys

from .experiments import ORACLE_HEADER, load_config, run, run_oracle


def parse_args(argv=None):
    parser = argparse.ArgumentParser(prog="gkpcb", description=__doc__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    for name, help_ in (("run", "emit figure data"), ("oracle", "compare numerics with the closed forms")):
        p = sub.add_parser(name, help=help_)
        p.add_argument("--config", required=True, help="JSON sweep configuration")
        p.add_argument("--out", dest="out_dir", help="output directory (overrides the config)")
        p.add_argument("--threads", type=int, help="worker threads for sweep points")
    return parser.parse_args(argv)


def _print_oracle(rows) -> None:
    widths = [max(len(h), 12) for h in ORACLE_HEADER]
    print("  ".join(h.rjust(w) for h, w in zip(ORACLE_HEADER, widths)))
    for r in rows:
        cells = [f"{v:.6g}" if isinstance(v, float) else str(v) for v in r]
        print("  ".join(c.rjust(w) for c, w in zip(cells, widths)))


def main(argv=None) -> int:
    args = parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        cfg = load_config(args.config, out_dir=args.out_dir, threads=args.threads)
    except (OSError, ValueError, TypeError) as exc:
        print(f"gkpcb: bad configuration: {exc}", file=sys.stderr)
        return 2
    try:
        if args.command == "run":
            for path in run(cfg):
                print(path)
        else:
            rows, paths = run_oracle(cfg)
            _print_oracle(rows)
            for path in paths:
                print(path)
    except (ValueError, ArithmeticError, MemoryError) as exc:
        print(f"gkpcb: {args.command} failed: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
