"""Per-node storage of this construction against lcm(d_i - k + 1)^n.

    python scripts/alpha_comparison.py --max-mu 4 --max-delta 4
"""

import argparse
import math

from bamsr.params import prior_art_alpha


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--max-mu", type=int, default=4)
    ap.add_argument("--max-delta", type=int, default=4)
    args = ap.parse_args()
    print(f"{'mu':>3} {'delta':>5} {'k':>3} {'n':>4} {'alpha':>7} {'prior alpha':>24} {'log10 ratio':>12}")
    for mu in range(1, args.max_mu + 1):
        for delta in range(1, args.max_delta + 1):
            k = mu + 1
            n = (delta + 1) * mu + 1
            D = [(i + 1) * mu for i in range(1, delta + 1)]
            alpha = mu * math.lcm(*range(1, delta + 1))
            prior = prior_art_alpha(D, k, n)
            print(f"{mu:>3} {delta:>5} {k:>3} {n:>4} {alpha:>7} {prior:>24} {math.log10(prior / alpha):>12.2f}")


if __name__ == "__main__":
    main()
