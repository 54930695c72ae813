"""Repair traffic of the adaptive policy versus fixed helper counts.

Sweeps the reachable-helper range and reports total symbols downloaded over
a run of failures for max-d, min-d and each fixed d.

    python scripts/bandwidth_vs_availability.py --mu 2 --delta 3 --n 9 --events 500
"""

import argparse
import logging

from bamsr.gf import FieldSpec
from bamsr.params import derive_params
from bamsr.sim import SimConfig, run_sim, summarize


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--mu", type=int, default=2)
    ap.add_argument("--delta", type=int, default=3)
    ap.add_argument("--n", type=int, default=9)
    ap.add_argument("--events", type=int, default=500)
    ap.add_argument("--seed", type=int, default=1)
    ap.add_argument("--field", default="gf256")
    args = ap.parse_args()
    logging.basicConfig(level=logging.ERROR)

    p = derive_params(args.mu, args.delta, args.n, FieldSpec.parse(args.field))
    policies = [("max-d", None), ("min-d", None)] + [("fixed", d) for d in p.D]
    header = f"{'availability':>14} " + " ".join(f"{(pol if d is None else f'd={d}'):>10}" for pol, d in policies)
    print(header)
    for lo in range(p.k, p.n):
        row = []
        for pol, d in policies:
            s = summarize(run_sim(SimConfig(p, args.events, args.seed, lo, p.n - 1, pol, d)))
            cell = f"{s['total_bandwidth']}"
            if s["unrepairable"]:
                cell += f"/{s['unrepairable']}x"
            row.append(f"{cell:>10}")
        print(f"{f'[{lo},{p.n - 1}]':>14} " + " ".join(row))
    print("cells: total symbols downloaded; '/Nx' = N unrepairable events")


if __name__ == "__main__":
    main()
