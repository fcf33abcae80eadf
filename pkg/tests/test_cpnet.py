import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cpbribery.cpnet import (
    CPNetError,
    IssueSet,
    MissingOrderError,
    all_candidates,
    candidate_at_rank,
    flip_rows,
    level_of,
    levels_count,
    make_net,
    next_best,
    rank_of,
    require_valid,
    top_candidate,
    top_k,
    validate_cpnet,
)
from cpbribery.fixtures import DRINK, MAIN, SIDE, meal_candidate, meal_profile
from strategies import nets


def test_meal_tops_and_levels():
    alice, bob, charlie = meal_profile().nets
    assert top_candidate(alice) == meal_candidate("fish", "rice", "wine")
    assert top_candidate(bob) == meal_candidate("fish", "chips", "beer")
    assert top_candidate(charlie) == meal_candidate("fish", "chips", "beer")
    assert [level_of(bob, x) for x in (MAIN, SIDE, DRINK)] == [1, 1, 2]
    assert levels_count(charlie) == 2


def test_bob_ranking_by_hand():
    # Bob: main first, then side, then drink conditioned on both
    bob = meal_profile().nets[1]
    expected = [
        ("fish", "chips", "beer"),
        ("fish", "chips", "wine"),
        ("fish", "rice", "wine"),
        ("fish", "rice", "beer"),
        ("meat", "chips", "beer"),
        ("meat", "chips", "wine"),
        ("meat", "rice", "beer"),
        ("meat", "rice", "wine"),
    ]
    assert top_k(bob, 8) == [meal_candidate(*c) for c in expected]


@given(nets())
def test_rank_is_a_bijection(net):
    ranks = sorted(rank_of(net, c) for c in all_candidates(net.m))
    assert ranks == list(range(2 ** net.m))
    for r in range(2 ** net.m):
        assert rank_of(net, candidate_at_rank(net, r)) == r


@given(nets())
def test_next_best_walks_the_whole_order(net):
    seen = top_k(net, 2 ** net.m + 3)
    assert len(seen) == 2 ** net.m
    assert len(set(seen)) == len(seen)
    assert next_best(net, seen[-1]) is None


@given(nets(), st.data())
def test_flip_rows_twice_is_identity(net, data):
    rows = list(net.all_rows())
    chosen = data.draw(st.lists(st.sampled_from(rows), unique=True))
    once = flip_rows(net, chosen)
    assert flip_rows(once, chosen) == net
    for issue, r in chosen:
        assert once.tables[issue].rows[r] != net.tables[issue].rows[r]


@given(nets())
def test_top_candidate_prefers_every_issue(net):
    top = top_candidate(net)
    assert all(top[x] == net.preferred(x, top) for x in range(net.m))
    assert rank_of(net, top) == 0


def test_validation_messages():
    issues = IssueSet(("a", "b"))
    cyclic = make_net(issues, [((1,), (0, 1)), ((0,), (1, 0))])
    assert "dependency graph is cyclic" in validate_cpnet(cyclic)
    short = make_net(issues, [((), (1,)), ((0,), (1,))])
    assert any("has 1 rows, expected 2" in e for e in validate_cpnet(short))
    backwards = make_net(issues, [((), (1,)), ((0,), (1, 0))], order=(1, 0))
    assert any("precedes its parent" in e for e in validate_cpnet(backwards))
    crowded = make_net(IssueSet(("a", "b", "c")), [((), (1,)), ((), (1,)), ((0, 1), (1, 0, 1, 0))])
    assert validate_cpnet(crowded, p_max=1)
    with pytest.raises(CPNetError):
        require_valid(cyclic)


def test_rank_needs_an_order():
    net = make_net(IssueSet(("a",)), [((), (1,))])
    with pytest.raises(MissingOrderError):
        rank_of(net, (1,))


def test_issue_set_values():
    issues = meal_profile().issues
    assert issues.bit_of(MAIN, "fish") == 1 and issues.bit_of(MAIN, "meat") == 0
    assert issues.format((1, None, 0)) == "(fish,*,beer)"
    with pytest.raises(CPNetError):
        issues.bit_of(DRINK, "water")
    with pytest.raises(CPNetError):
        IssueSet(("a", "a"))


def test_all_candidates_enumerates_in_binary_order():
    assert list(all_candidates(2)) == [(0, 0), (0, 1), (1, 0), (1, 1)]
    assert len(set(itertools.islice(all_candidates(4), 100))) == 16
