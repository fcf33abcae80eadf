"""Decide random tiny sources directly and through their bribery reductions.

    python3 scripts/reduction_check.py --per-variant 100 --kind nae
"""

import argparse
import random
import time

from cpbribery import VotingRule, brute_force_solve, winners
from cpbribery.generate import random_3sat, random_knapsack, random_nae_formula
from cpbribery.oracle import Limits
from cpbribery.reductions import (
    NAE_CELLS,
    reduce_3sat_ok_eval,
    reduce_knapsack_op,
    reduce_knapsack_ov,
    reduce_knapsack_sm,
    reduce_nae3sat,
)
from cpbribery.sources import knapsack_solvable, nae_satisfiable, sat_satisfiable

WIDE = Limits(max_issues=64, max_rows=10 ** 6, max_voters=200)
SCHEMES = ("equal", "flip", "level", "any", "dist")


def nae_variants():
    for action, scheme in NAE_CELLS:
        excess = 2 if action == "ivdv" and scheme in ("flip", "level") else None
        for negative in (False, True):
            def check(rng, a=action, s=scheme, n=negative, e=excess):
                f = random_nae_formula(rng, 5, 3, e)
                return brute_force_solve(reduce_nae3sat(f, a, s, n), WIDE).decision, nae_satisfiable(f)
            yield f"nae/{action}/{scheme}/{'neg' if negative else 'pos'}", check


def sat_variants():
    for n in (3, 4):
        def check(rng, n=n):
            f = random_3sat(rng, n, 16 if n == 3 else 24)
            profile, k = reduce_3sat_ok_eval(f)
            return winners(profile, VotingRule("ok", k)).best == len(f.clauses), sat_satisfiable(f)
        yield f"3sat-ok/n={n}", check


def knapsack_variants():
    for label, build in (("op", reduce_knapsack_op), ("ov", reduce_knapsack_ov), ("sm", reduce_knapsack_sm)):
        for action in ("iv", "dv", "ivdv"):
            for scheme in SCHEMES:
                if label == "ov" and (action, scheme) == ("dv", "dist"):
                    continue
                for negative in (False, True):
                    def check(rng, b=build, a=action, s=scheme, n=negative):
                        src = random_knapsack(rng)
                        return brute_force_solve(b(src, a, s, n), WIDE).decision, knapsack_solvable(src)
                    yield f"knapsack-{label}/{action}/{scheme}/{'neg' if negative else 'pos'}", check


KINDS = {"nae": nae_variants, "3sat": sat_variants, "knapsack": knapsack_variants}


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--per-variant", type=int, default=100)
    parser.add_argument("--kind", choices=sorted(KINDS), action="append")
    args = parser.parse_args()
    total = 0
    for kind in args.kind or sorted(KINDS):
        for name, check in KINDS[kind]():
            rng = random.Random(name)
            start = time.perf_counter()
            yes = bad = 0
            for _ in range(args.per_variant):
                via_bribery, direct = check(rng)
                yes += direct
                bad += via_bribery != direct
            total += bad
            print(f"{name:32} yes {yes:4d}  bad {bad:3d}  {time.perf_counter() - start:6.1f}s", flush=True)
    print(f"mismatches: {total}")
    return 1 if total else 0


if __name__ == "__main__":
    raise SystemExit(main())
