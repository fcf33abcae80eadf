import pytest
from hypothesis import given
from hypothesis import strategies as st

from cpbribery import OP, OV, SM, Profile, Voter, VotingRule, winners
from cpbribery.cpnet import IssueSet, all_candidates, independent_net, rank_of
from cpbribery.fixtures import DRINK, MAIN, SIDE, meal_candidate, meal_profile
from cpbribery.voting import RuleError, is_winner, winners_okeff
from strategies import profiles


def direct_scores(profile, k, order=None):
    """Approval scores straight from each voter's rank of every candidate."""
    scores = {}
    for c in all_candidates(profile.m):
        total = 0
        for v in profile.voters:
            net = v.net if order is None else v.net.with_order(order)
            total += v.weight * (rank_of(net, c) < k)
        scores[c] = total
    return scores


def direct_winners(scores):
    best = max(scores.values())
    return sorted(c for c, s in scores.items() if s == best)


def test_meal_winners_and_scores():
    profile = meal_profile()
    fcb = meal_candidate("fish", "chips", "beer")
    op = winners(profile, OP)
    assert op.explicit() == [fcb] and op.best == 2
    assert op.unique_winner() == fcb
    ok3 = winners(profile, VotingRule("ok", 3))
    assert ok3.explicit() == [meal_candidate("fish", "chips", "wine")] and ok3.best == 3
    assert winners(profile, OV).size == 5
    assert winners(profile, SM, (SIDE, MAIN, DRINK)).explicit() == [fcb]


@given(profiles(), st.integers(1, 16))
def test_k_approval_matches_direct_scoring(profile, k):
    ws = winners(profile, VotingRule("ok", k))
    scores = direct_scores(profile, k)
    assert all(ws.score(c) == s for c, s in scores.items())
    assert ws.explicit() == direct_winners(scores)


@given(profiles(shared_order=True), st.sampled_from([1, 2, 4, 8, 16]))
def test_power_of_two_regime_matches_direct_scoring(profile, k):
    order = profile.nets[0].order
    ws = winners(profile, VotingRule("ok", k, "pow2"), order)
    scores = direct_scores(profile, k, order)
    assert all(ws.score(c) == s for c, s in scores.items())
    assert ws.size == len(direct_winners(scores))


@given(profiles())
def test_veto_scores(profile):
    ws = winners(profile, OV)
    scores = direct_scores(profile, 2 ** profile.m - 1)
    assert ws.explicit() == direct_winners(scores)


@given(profiles(shared_order=True))
def test_sequential_majority_by_issue(profile):
    order = profile.nets[0].order
    (w,) = winners(profile, SM, order).explicit()
    for pos, x in enumerate(order):
        prefix = list(w)
        yes = sum(v.weight for v in profile.voters if v.net.preferred(x, prefix))
        no = profile.total_weight - yes
        assert w[x] == (1 if yes >= no else 0)


def test_sequential_majority_tie_goes_to_first_value():
    issues = IssueSet(("a",))
    p = Profile(issues, (Voter(independent_net(issues, (1,), (0,))), Voter(independent_net(issues, (0,), (0,)))))
    assert winners(p, SM, (0,)).explicit() == [(1,)]


def test_rule_errors():
    with pytest.raises(RuleError):
        VotingRule("borda")
    with pytest.raises(RuleError):
        VotingRule("ok", 3, "pow2")
    with pytest.raises(RuleError):
        VotingRule("ok", 0)
    with pytest.raises(RuleError):
        winners(meal_profile(), SM)
    with pytest.raises(RuleError):
        # the meal voters disagree on the issue order
        winners(meal_profile(), VotingRule("ok", 2, "pow2"), (MAIN, SIDE, DRINK))
    with pytest.raises(RuleError):
        winners_okeff(meal_profile(), 10, k_cap=8)


def test_is_winner_and_unique_winner():
    profile = meal_profile()
    assert is_winner(profile, OP, meal_candidate("fish", "chips", "beer"))
    assert not is_winner(profile, OP, meal_candidate("fish", "rice", "wine"))
    assert winners(profile, OV).unique_winner() is None
