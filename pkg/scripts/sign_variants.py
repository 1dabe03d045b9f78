"""Compare the minus- and plus-sign forms of the A = B corollary.

Both variants share the right-hand side ``2 sqrt2 / d_A^2 ||| |AX| + |XA| |||``;
only the sign in front of ``X`` on the left differs. The script reports how
often each one fails and how the worst relative margin depends on d_A.
"""

import argparse

import numpy as np

from iptt.ensembles import ginibre, random_normal_in_disk
from iptt.funcalc import random_herglotz
from iptt.ineqsuite import eval_c2
from iptt.uinorms import OP


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--trials", type=int, default=2000)
    ap.add_argument("--dim", type=int, default=4)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    rng = np.random.default_rng(args.seed)

    radii = (0.1, 0.5, 0.9)
    print(f"{'radius':>8}{'sign':>6}{'fails':>8}{'worst rel margin':>20}")
    for radius in radii:
        for sign in (-1, 1):
            fails, worst = 0, np.inf
            for _ in range(args.trials):
                f, g = random_herglotz(rng, 3), random_herglotz(rng, 3)
                A = random_normal_in_disk(rng, args.dim, radius)
                r = eval_c2(f, g, A, ginibre(rng, args.dim), OP, sign=sign)
                fails += r.violated()
                worst = min(worst, r.relative_margin)
            print(f"{radius:>8}{'+' if sign > 0 else '-':>6}{fails:>8}{worst:>20.3e}")


if __name__ == "__main__":
    main()
