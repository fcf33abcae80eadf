import itertools
import random
from dataclasses import replace

import pytest

from cpbribery import FlipPlan, brute_force_solve
from cpbribery.bribery import InstanceError, bribery_succeeds, plan_cost
from cpbribery.fixtures import meal_candidate
from cpbribery.generate import SCHEMES, InstanceConfig, random_instance
from cpbribery.oracle import Limits, LimitsExceeded
from cpbribery.solvers import dispatch_solve


def subsets(rows):
    return itertools.chain.from_iterable(itertools.combinations(rows, r) for r in range(len(rows) + 1))


def naive_minimum(inst):
    """Cheapest successful plan over the full product of per-voter flip sets."""
    best = None
    per_voter = [list(subsets(inst.legal_rows(i))) for i in range(inst.n)]
    for choice in itertools.product(*per_voter):
        plan = FlipPlan.of(dict(enumerate(choice)))
        if bribery_succeeds(inst, plan):
            cost = plan_cost(inst, plan)
            best = cost if best is None else min(best, cost)
    return best


TINY = dict(max_issues=2, max_voters=3, max_factor=3, max_parents=1,
            limits=Limits(max_issues=2, max_rows=7, max_voters=3))
RULES = [("op", 1, "poly"), ("ov", 1, "poly"), ("ok", 2, "poly"), ("ok", 2, "pow2"), ("sm", 1, "poly")]


@pytest.mark.parametrize("rule,k,regime", RULES)
@pytest.mark.parametrize("scheme", SCHEMES)
@pytest.mark.parametrize("action", ["iv", "dv", "ivdv"])
@pytest.mark.parametrize("negative", [False, True])
def test_oracle_matches_naive_enumeration(rule, k, regime, scheme, action, negative):
    cfg = InstanceConfig(rule, action, scheme, k=k, regime=regime, negative=negative, max_weight=3, **TINY)
    rng = random.Random(f"{rule}{k}{regime}{scheme}{action}{negative}")
    for _ in range(12):
        inst = random_instance(rng, cfg)
        got = brute_force_solve(inst)
        want = naive_minimum(inst)
        assert got.decision == (want is not None)
        assert got.cost == want
        if got.decision:
            assert bribery_succeeds(inst, got.plan) and plan_cost(inst, got.plan) == got.cost


def test_oracle_on_meal(meal_query):
    result = brute_force_solve(meal_query)
    assert result.decision and result.cost == 1
    assert result.plan == FlipPlan.of({1: [(1, 0)]})
    assert not brute_force_solve(replace(meal_query, budget=0)).decision


def test_hated_already_losing_costs_nothing(meal_query):
    inst = replace(meal_query, hated=meal_candidate("meat", "rice", "wine"), budget=0)
    result = brute_force_solve(inst)
    assert result.decision and result.cost == 0 and not result.plan


def test_limits(meal_query):
    with pytest.raises(LimitsExceeded):
        brute_force_solve(meal_query, Limits(max_issues=2))
    with pytest.raises(LimitsExceeded):
        brute_force_solve(meal_query, Limits(max_rows=5))
    with pytest.raises(LimitsExceeded):
        dispatch_solve(replace(meal_query, scheme="level", action="dv"), Limits(max_voters=2))


def test_limits_from_environment():
    env = {"CPB_MAX_ISSUES": "3", "CPB_MAX_ROWS": "9"}
    assert Limits.from_env(env) == Limits(3, 9, 10)


def test_invalid_instance_is_refused(meal_query):
    with pytest.raises(InstanceError):
        brute_force_solve(replace(meal_query, scheme="any"))
