"""Compare every polynomial solver cell with exhaustive search and print a table.

    python3 scripts/oracle_agreement.py --per-cell 200 --match ov/
"""

import argparse
import random
import time

from cpbribery import brute_force_solve
from cpbribery.bribery import bribery_succeeds, plan_cost
from cpbribery.generate import polynomial_cells, random_instance
from cpbribery.solvers import dispatch_solve


def sweep(name, cfg, per_cell, seed):
    rng = random.Random(f"{seed}/{name}")
    yes = mismatches = 0
    fast_time = slow_time = 0.0
    for _ in range(per_cell):
        inst = random_instance(rng, cfg)
        t0 = time.perf_counter()
        fast = dispatch_solve(inst)
        t1 = time.perf_counter()
        slow = brute_force_solve(inst)
        t2 = time.perf_counter()
        fast_time += t1 - t0
        slow_time += t2 - t1
        yes += slow.decision
        ok = (fast.decision, fast.cost) == (slow.decision, slow.cost)
        if ok and fast.decision:
            ok = bribery_succeeds(inst, fast.plan) and plan_cost(inst, fast.plan) == fast.cost
        mismatches += not ok
    return yes, mismatches, fast_time, slow_time


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--per-cell", type=int, default=200)
    parser.add_argument("--match", default="", help="only cells whose name contains this")
    parser.add_argument("--seed", default="sweep")
    args = parser.parse_args()
    total = 0
    print(f"{'cell':34} {'yes':>5} {'bad':>4} {'solver s':>9} {'oracle s':>9}")
    for name, cfg in polynomial_cells().items():
        if args.match not in name:
            continue
        yes, bad, fast, slow = sweep(name, cfg, args.per_cell, args.seed)
        total += bad
        print(f"{name:34} {yes:5d} {bad:4d} {fast:9.2f} {slow:9.2f}", flush=True)
    print(f"mismatches: {total}")
    return 1 if total else 0


if __name__ == "__main__":
    raise SystemExit(main())
