"""Command-line entry point: ``iptt check | identities | sharpness``."""

from __future__ import annotations

import argparse
import os
import sys

from . import harness
from .errors import ConfigInvalid, IpttError
from .witnesses import run_witnesses

TOL_ENV = "IPTT_TOL_OVERRIDE"


def _csv_list(conv):
    def parse(text):
        try:
            return tuple(conv(x) for x in text.split(",") if x.strip())
        except ValueError as exc:
            raise argparse.ArgumentTypeError(str(exc)) from None
    return parse


def _tol_override() -> float | None:
    raw = os.environ.get(TOL_ENV)
    if raw is None or raw == "":
        return None
    try:
        tol = float(raw)
    except ValueError:
        raise ConfigInvalid("tol", f"{TOL_ENV}={raw!r} is not a float") from None
    return tol


def _add_sweep_args(p: argparse.ArgumentParser, default_ids):
    p.add_argument("--ids", type=_csv_list(str), default=default_ids,
                   help="comma-separated inequality ids")
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--dims", type=_csv_list(int), default=(2, 4))
    p.add_argument("--atoms", type=_csv_list(int), default=(1, 2, 3, 4))
    p.add_argument("--norms", type=_csv_list(str), default=("op", "s1", "s2", "kf2"),
                   help="norm labels: op, s<p>, kf<k>, rc<p>:<base>")
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--out", default=None, help="report path (default: summary only on stdout)")
    p.add_argument("--config", default=None, help="JSON config file; command-line flags are ignored")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--timing", action="store_true", help="record wall_time (breaks byte determinism)")


def _config(args) -> harness.SweepConfig:
    if args.config:
        cfg = harness.SweepConfig.from_json(args.config)
    else:
        cfg = harness.SweepConfig(
            inequality_ids=args.ids, trials=args.trials, dims=args.dims,
            atoms=args.atoms, norms=args.norms, seed=args.seed,
            out_path=args.out, format=args.format, timing=args.timing,
        )
    tol = _tol_override()
    if tol is not None:
        cfg = harness.SweepConfig.from_dict({**cfg.to_dict(), "tol": tol})
    return cfg


def _print_summary(summary: dict, out=None):
    out = out or sys.stdout
    head = f"{'id':<18}{'count':>7}{'min margin':>14}{'median':>12}{'min rel':>12}{'viol':>6}"
    print(head, file=out)
    for i, s in summary.items():
        print(f"{i:<18}{s['count']:>7}{s['min_margin']:>14.3e}{s['median_margin']:>12.3e}"
              f"{s['min_relative_margin']:>12.3e}{s['violations']:>6}", file=out)


def cmd_sweep(args) -> int:
    cfg = _config(args)
    reports = harness.run_sweep(cfg, workers=args.workers)
    harness.write_report(cfg, reports)
    summary = harness.summarize(reports)
    _print_summary(summary)
    bad = sum(s["violations"] for s in summary.values())
    if bad:
        print(f"{bad} violation(s)", file=sys.stderr)
    return 1 if bad else 0


def cmd_sharpness(args) -> int:
    failed = 0
    for w, res in run_witnesses():
        ok = w.attained(res)
        failed += not ok
        print(f"{w.ineq_id:<16}{res.lhs:>22.16g}{res.rhs:>22.16g}{res.margin:>12.3e}  "
              f"{'ok' if ok else 'NOT ATTAINED'}  {w.name}")
    return 1 if failed else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="iptt", description="Randomized checks of operator Gruss/Landau-type inequalities.")
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("check", help="sweep inequality checkers")
    _add_sweep_args(p, harness.CHECK_IDS)
    p.set_defaults(func=cmd_sweep)
    p = sub.add_parser("identities", help="sweep exact identities")
    _add_sweep_args(p, harness.IDENTITY_IDS)
    p.set_defaults(func=cmd_sweep)
    p = sub.add_parser("sharpness", help="evaluate the equality witnesses")
    p.set_defaults(func=cmd_sharpness)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ConfigInvalid as exc:
        print(f"invalid config: {exc}", file=sys.stderr)
        return 2
    except IpttError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
