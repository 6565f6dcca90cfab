"""Regenerate the data behind every figure from the bundled configs.

    python3 scripts/reproduce_figures.py [--only fig2b fig3b] [--out out]
"""
import argparse
import logging
import time
from pathlib import Path

from gkpcb.experiments import load_config, run

CONFIGS = Path(__file__).parent / "configs"


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--only", nargs="*", help="figure ids to run (default: all)")
    ap.add_argument("--out", default="out", help="root output directory")
    ap.add_argument("--threads", type=int, default=1)
    args = ap.parse_args()
    logging.basicConfig(level=logging.INFO, format="%(message)s")

    for path in sorted(CONFIGS.glob("*.json")):
        if args.only and path.stem not in args.only:
            continue
        cfg = load_config(path, out_dir=str(Path(args.out) / path.stem), threads=args.threads)
        t0 = time.perf_counter()
        files = run(cfg)
        print(f"{path.stem}: {len(files)} files in {time.perf_counter() - t0:.1f} s -> {cfg.out_dir}")


if __name__ == "__main__":
    main()
