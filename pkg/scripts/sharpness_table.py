"""How close do random instances get to each bound?

Prints the equality witnesses, then per inequality and dimension the
smallest relative margin seen in a sweep, split into structured families
(zero operators, equal fields, ...) and plain random draws.
"""

import argparse
from collections import defaultdict

from iptt.harness import CHECK_IDS, SweepConfig, run_sweep
from iptt.witnesses import run_witnesses

STRUCTURED = {"constant", "step_witness", "ramp", "zero_operator", "zero_operators", "single_unitary",
              "equal_fields", "sign_witness", "constant_left"}


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--trials", type=int, default=60)
    ap.add_argument("--seed", type=int, default=7)
    args = ap.parse_args()

    print("equality witnesses")
    for w, res in run_witnesses():
        print(f"  {w.ineq_id:<16} lhs {res.lhs:<20.16g} rhs {res.rhs:<20.16g} margin {res.margin:.1e}")

    dims = (1, 2, 4, 8)
    cfg = SweepConfig(inequality_ids=CHECK_IDS, trials=args.trials, dims=dims, seed=args.seed)
    best = defaultdict(lambda: float("inf"))
    for r in run_sweep(cfg):
        fam = "structured" if r.params.get("family") in STRUCTURED else "random"
        key = (r.id, r.dim, fam)
        best[key] = min(best[key], r.relative_margin)

    print("\nmin relative margin (random draws / structured families)")
    print(f"  {'id':<18}" + "".join(f"{'dim ' + str(d):>22}" for d in dims))
    for i in CHECK_IDS:
        cells = []
        for d in dims:
            rnd, st = best.get((i, d, "random")), best.get((i, d, "structured"))
            cells.append(f"{rnd if rnd is not None else float('nan'):>10.2e} /"
                         f"{st if st is not None else float('nan'):>10.2e}")
        print(f"  {i:<18}" + "".join(f"{c:>22}" for c in cells))


if __name__ == "__main__":
    main()
