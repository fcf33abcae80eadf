import random
from dataclasses import replace

import pytest
from hypothesis import given, settings

from cpbribery import OP, SM, BriberyInstance, FlipPlan, VotingRule, brute_force_solve
from cpbribery.bribery import InstanceError, bribery_succeeds, plan_cost, plan_is_negative_legal
from cpbribery.fixtures import DRINK, MAIN, SIDE, meal_candidate, meal_profile
from cpbribery.generate import InstanceConfig, polynomial_cells, random_instance, random_profile
from cpbribery.solvers import (
    dispatch_solve,
    margin_of_victory,
    route,
    solve_ivdv_cequal,
    solve_sm,
    special_cell,
)
from cpbribery.voting import winners
from strategies import instances

CELLS = polynomial_cells()


def test_meal_bribe_flips_bob_side(meal_query):
    result = dispatch_solve(meal_query)
    assert route(meal_query) == "uniform"
    assert result.decision and result.cost == 1
    assert result.plan == FlipPlan.of({1: [(SIDE, 0)]})


def test_meal_sequential_majority():
    inst = BriberyInstance(meal_profile(), SM, "ivdv", "flip", 1,
                           meal_candidate("fish", "chips", "beer"), global_order=(SIDE, MAIN, DRINK))
    # Bob alone switching sides leaves rice with a majority of two
    result = solve_sm(inst)
    assert (result.decision, result.cost) == (True, 1)
    assert result.plan == FlipPlan.of({1: [(SIDE, 0)]})


@pytest.mark.parametrize("name", sorted(CELLS))
def test_cell_agrees_with_oracle(name):
    # a lighter version of the acceptance sweep, so each cell fails on its own
    rng = random.Random(f"cell/{name}")
    for _ in range(15):
        inst = random_instance(rng, CELLS[name])
        assert route(inst) != "oracle"
        fast, slow = dispatch_solve(inst), brute_force_solve(inst)
        assert (fast.decision, fast.cost) == (slow.decision, slow.cost)
        if fast.decision:
            assert bribery_succeeds(inst, fast.plan)
            assert plan_cost(inst, fast.plan) == fast.cost
            if inst.negative:
                assert plan_is_negative_legal(inst, fast.plan)


@settings(max_examples=30)
@given(instances(InstanceConfig("op", "iv", "level", max_factor=5)))
def test_hard_cells_go_to_the_oracle(inst):
    assert route(inst) == "oracle"
    assert dispatch_solve(inst).method == "oracle"


def test_special_cells_need_uniform_costs(meal_query):
    assert special_cell(meal_query) == "op-flip"
    voters = list(meal_query.profile.voters)
    voters[0] = replace(voters[0], cost_factor=2)
    skewed = replace(meal_query, profile=replace(meal_query.profile, voters=tuple(voters)))
    assert special_cell(skewed) is None
    assert route(skewed) == "oracle"


def test_solvers_refuse_foreign_instances(meal_query):
    with pytest.raises(InstanceError):
        solve_sm(meal_query)
    with pytest.raises(InstanceError):
        solve_ivdv_cequal(meal_query)


def oracle_margin(profile, rule, order=None):
    h = winners(profile, rule, order).unique_winner()
    if h is None:
        return 0
    unit = replace(profile, voters=tuple(replace(v, cost_factor=1) for v in profile.voters))
    for b in range(profile.n + 1):
        if brute_force_solve(BriberyInstance(unit, rule, "ivdv", "equal", b, h, global_order=order)).decision:
            return b
    raise AssertionError("rewriting every voter should always suffice")


def test_meal_margin():
    assert margin_of_victory(meal_profile(), OP) == 1


@pytest.mark.parametrize("rule", [OP, VotingRule("ok", 2), VotingRule("ok", 2, "pow2"), SM])
def test_margin_matches_oracle(rule):
    rng = random.Random(f"margin/{rule}")
    for _ in range(25):
        m = rng.randint(1, 3)
        order = tuple(rng.sample(range(m), m))
        profile = random_profile(rng, m, rng.randint(1, 5), order=order)
        assert margin_of_victory(profile, rule, order) == oracle_margin(profile, rule, order)


def test_margin_is_zero_without_a_unique_winner():
    assert margin_of_victory(meal_profile(), VotingRule("ov")) == 0
