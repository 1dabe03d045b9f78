"""Sweep every checker and identity over a grid and write a JSON report.

    python3 scripts/full_sweep.py --trials 200 --out sweep.json
"""

import argparse
import time

from iptt.cli import _print_summary
from iptt.harness import ALL_IDS, SweepConfig, run_sweep, summarize, write_report


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--trials", type=int, default=100)
    ap.add_argument("--dims", default="1,2,4,8")
    ap.add_argument("--seed", type=int, default=2024)
    ap.add_argument("--workers", type=int, default=1)
    ap.add_argument("--out", default="full_sweep.json")
    args = ap.parse_args()

    cfg = SweepConfig(inequality_ids=ALL_IDS, trials=args.trials,
                      dims=tuple(int(d) for d in args.dims.split(",")),
                      atoms=tuple(range(1, 9)), seed=args.seed, out_path=args.out)
    t0 = time.perf_counter()
    reports = run_sweep(cfg, workers=args.workers)
    write_report(cfg, reports)
    _print_summary(summarize(reports))
    print(f"{len(reports)} reports in {time.perf_counter() - t0:.1f}s -> {args.out}")
    print("c2_plus is a diagnostic (plus-sign variant); its violations are expected")


if __name__ == "__main__":
    main()
