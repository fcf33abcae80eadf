"""Time the polynomial solvers and exhaustive search as issues and voters grow.

Exhaustive search only runs up to ``--oracle-max-size``; it grows exponentially beyond.
"""

import argparse
import random
import time
from dataclasses import replace

from cpbribery import brute_force_solve
from cpbribery.generate import InstanceConfig, random_instance
from cpbribery.oracle import Limits
from cpbribery.solvers import dispatch_solve

CELLS = {
    "op/ivdv/equal": InstanceConfig("op", "ivdv", "equal", max_factor=5),
    "ok3/ivdv/equal": InstanceConfig("ok", "ivdv", "equal", k=3, max_factor=5),
    "ov/dv/flip": InstanceConfig("ov", "dv", "flip", max_factor=5),
    "sm/ivdv/level": InstanceConfig("sm", "ivdv", "level", max_factor=5),
}


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--sizes", type=int, nargs="+", default=[2, 4, 6, 8, 12, 16])
    parser.add_argument("--repeats", type=int, default=5)
    parser.add_argument("--oracle-max-size", type=int, default=6)
    args = parser.parse_args()
    print(f"{'cell':16} {'m=n':>4} {'solver ms':>10} {'oracle ms':>10}")
    for name, base in CELLS.items():
        for size in args.sizes:
            oracle_on = size <= args.oracle_max_size
            limits = Limits(max_issues=size, max_rows=10 ** 6, max_voters=size)
            cfg = replace(base, min_issues=size, max_issues=size, max_voters=size, limits=limits)
            rng = random.Random(f"{name}/{size}")
            fast = slow = 0.0
            for _ in range(args.repeats):
                inst = random_instance(rng, cfg)
                t0 = time.perf_counter()
                dispatch_solve(inst, limits)
                fast += time.perf_counter() - t0
                if oracle_on:
                    t0 = time.perf_counter()
                    brute_force_solve(inst, limits)
                    slow += time.perf_counter() - t0
            shown = f"{1000 * slow / args.repeats:10.1f}" if oracle_on else f"{'-':>10}"
            print(f"{name:16} {size:4d} {1000 * fast / args.repeats:10.1f} {shown}", flush=True)


if __name__ == "__main__":
    raise SystemExit(main())
