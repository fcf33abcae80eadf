import random

import pytest

from cpbribery import OP, BriberyInstance, VotingRule, brute_force_solve, winners
from cpbribery.cpnet import top_candidate
from cpbribery.generate import random_3sat, random_knapsack, random_nae_formula
from cpbribery.oracle import Limits
from cpbribery.reductions import (
    NAE_CELLS,
    ReductionError,
    reduce_3sat_ok_eval,
    reduce_knapsack_op,
    reduce_knapsack_ov,
    reduce_knapsack_sm,
    reduce_nae3sat,
)
from cpbribery.sources import (
    CNFFormula,
    KnapsackInstance,
    SourceError,
    knapsack_best_value,
    knapsack_solvable,
    nae_satisfiable,
    sat_satisfiable,
)

WIDE = Limits(max_issues=64, max_rows=10 ** 6, max_voters=200)
FANO = CNFFormula(7, ((1, 2, 3), (1, 4, 5), (1, 6, 7), (2, 4, 6), (2, 5, 7), (3, 4, 7), (3, 5, 6)))
# ivdv flip and level grow too large on the Fano plane for exhaustive search
FANO_CELLS = [c for c in NAE_CELLS if c not in (("ivdv", "flip"), ("ivdv", "level"))]


def test_source_solvers():
    assert not nae_satisfiable(FANO)
    assert nae_satisfiable(CNFFormula(4, ((1, 2, 3), (2, 3, 4))))
    every_sign = CNFFormula(3, tuple(
        (a * 1, b * 2, c * 3) for a in (1, -1) for b in (1, -1) for c in (1, -1)))
    assert not sat_satisfiable(every_sign)
    assert sat_satisfiable(CNFFormula(3, every_sign.clauses[1:]))
    knap = KnapsackInstance(((3, 4), (2, 3), (2, 2)), target=5, budget=4)
    assert knapsack_best_value(knap) == 5 and knapsack_solvable(knap)
    assert not knapsack_solvable(KnapsackInstance(((3, 4), (2, 3)), target=5, budget=4))
    with pytest.raises(SourceError):
        CNFFormula(3, ((1, 1, 2),))
    with pytest.raises(SourceError):
        KnapsackInstance(((1, -2),), 0, 0)


@pytest.mark.parametrize("action,scheme", NAE_CELLS)
@pytest.mark.parametrize("negative", [False, True])
def test_nae_structure(action, scheme, negative):
    formula = CNFFormula(5, ((1, 2, 3), (2, 4, 5), (1, 3, 5)))
    inst = reduce_nae3sat(formula, action, scheme, negative)
    clauses = len(formula.clauses)
    assert inst.n == 7 * clauses - 1
    assert inst.hated == (1,) * inst.m
    hated_voters = inst.profile.voters[6 * clauses:]
    assert all(top_candidate(v.net) == inst.hated for v in hated_voters)
    assert all(v.cost_factor == (1 if negative else inst.budget + 1) for v in hated_voters)
    expected_budget = {"flip": clauses * 2, "level": clauses * 2, "dist": clauses * 4 - 1, "any": 0}
    if action == "ivdv":
        assert inst.budget == expected_budget[scheme]
    # every clause voter tops a candidate the formula's clause accepts
    for j, clause in enumerate(formula.clauses):
        for v in inst.profile.voters[6 * j: 6 * j + 6]:
            top = top_candidate(v.net)
            assert len({top[x - 1] for x in clause}) == 2
    # h wins before any bribery, possibly tied with tops that several clauses share
    assert inst.hated in winners(inst.profile, OP)


@pytest.mark.parametrize("action,scheme", NAE_CELLS)
def test_nae_random_sources(action, scheme):
    excess = 2 if action == "ivdv" and scheme in ("flip", "level") else None
    rng = random.Random(f"nae-unit/{action}/{scheme}")
    for _ in range(10):
        formula = random_nae_formula(rng, 5, 3, excess)
        negative = rng.random() < 0.5
        inst = reduce_nae3sat(formula, action, scheme, negative, VotingRule("ok", 1))
        assert brute_force_solve(inst, WIDE).decision == nae_satisfiable(formula)


@pytest.mark.parametrize("action,scheme", FANO_CELLS)
def test_fano_plane_gives_no(action, scheme):
    for negative in (False, True):
        assert not brute_force_solve(reduce_nae3sat(FANO, action, scheme, negative), WIDE).decision


def test_nae_rejects_uncovered_input():
    with pytest.raises(ReductionError):
        reduce_nae3sat(FANO, "ivdv", "equal")
    with pytest.raises(ReductionError):
        reduce_nae3sat(CNFFormula(3, ((1, -2, 3),)), "iv", "flip")
    with pytest.raises(ReductionError):
        reduce_nae3sat(FANO, "iv", "flip", rule=VotingRule("ok", 2))


def test_3sat_ok_evaluation():
    formula = CNFFormula(4, ((1, -2, 3), (-1, 2, 4), (2, 3, -4)))
    profile, k = reduce_3sat_ok_eval(formula)
    assert k == 14 and profile.n == 3
    # with every clause approved by its models, the best score counts satisfied clauses
    assert winners(profile, VotingRule("ok", k)).best == 3
    rng = random.Random("3sat-unit")
    for _ in range(40):
        formula = random_3sat(rng, 3, 16)
        profile, k = reduce_3sat_ok_eval(formula)
        full = winners(profile, VotingRule("ok", k)).best == len(formula.clauses)
        assert full == sat_satisfiable(formula)


def test_knapsack_op_structure():
    source = KnapsackInstance(((3, 4), (2, 3), (5, 0)), target=5, budget=4)
    inst = reduce_knapsack_op(source, "iv", "flip")
    objects = [v for v in inst.profile.voters if v.name.startswith("o")]
    # the zero-value object is dropped; value becomes weight, weight becomes price
    assert [(v.weight, v.cost_factor) for v in objects] == [(4, 3), (3, 2)]
    assert inst.budget == 4 and inst.hated == (0, 0)
    # both useful objects together weigh 5, one more than the budget
    assert not brute_force_solve(inst).decision
    roomier = reduce_knapsack_op(KnapsackInstance(source.objects, 5, 5), "iv", "flip")
    assert brute_force_solve(roomier).decision


@pytest.mark.parametrize("build", [reduce_knapsack_op, reduce_knapsack_ov, reduce_knapsack_sm])
@pytest.mark.parametrize("scheme", ["equal", "flip", "level", "any", "dist"])
@pytest.mark.parametrize("action", ["iv", "dv", "ivdv"])
def test_knapsack_random_sources(build, scheme, action):
    if build is reduce_knapsack_ov and (action, scheme) == ("dv", "dist"):
        with pytest.raises(ReductionError):
            build(KnapsackInstance(((1, 1),), 1, 1), action, scheme)
        return
    rng = random.Random(f"knapsack-unit/{build.__name__}/{action}/{scheme}")
    for _ in range(12):
        source = random_knapsack(rng)
        inst = build(source, action, scheme, rng.random() < 0.5)
        assert isinstance(inst, BriberyInstance)
        assert brute_force_solve(inst, WIDE).decision == knapsack_solvable(source)


def test_degenerate_knapsack_sources():
    empty = KnapsackInstance((), target=0, budget=0)
    hopeless = KnapsackInstance(((1, 0),), target=1, budget=5)
    for build in (reduce_knapsack_op, reduce_knapsack_ov, reduce_knapsack_sm):
        assert brute_force_solve(build(empty, "iv", "flip")).decision
        assert not brute_force_solve(build(hopeless, "iv", "flip")).decision
