import itertools
import random

from hypothesis import given
from hypothesis import strategies as st

from cpbribery import BriberyInstance, VotingRule
from cpbribery.bribery import scheme_cost
from cpbribery.cpnet import all_candidates, flip_rows, rank_of
from cpbribery.engine import min_cost_gap, models_for, state_cost
from cpbribery.generate import SCHEMES, random_profile
from strategies import seeds


def exhaustive_state_costs(inst, net, k, c, h):
    """Cheapest scheme cost for each reachable (approves c, approves h) pair."""
    rows = inst.legal_rows(0)
    best = {}
    for r in range(len(rows) + 1):
        for chosen in itertools.combinations(rows, r):
            after = flip_rows(net, chosen)
            state = (int(rank_of(after, c) < k), int(rank_of(after, h) < k))
            cost = scheme_cost(inst, 0, chosen)
            best[state] = min(best.get(state, cost), cost)
    return best


@given(seeds, st.sampled_from(SCHEMES), st.sampled_from(["iv", "dv", "ivdv"]))
def test_state_cost_matches_exhaustive_search(seed, scheme, action):
    rng = random.Random(seed)
    m = rng.randint(1, 4)
    k = rng.randint(1, 2 ** m)
    profile = random_profile(rng, m, 1)
    costs = None
    if scheme == "any":
        costs = ({row: rng.randint(1, 3) for row in profile.nets[0].all_rows()},)
    inst = BriberyInstance(profile, VotingRule("ok", k), action, scheme, 100, (0,) * m, flip_costs=costs)
    model = models_for(inst)[0]
    c = rng.choice(list(all_candidates(m)))
    h = rng.choice(list(all_candidates(m)))
    expected = exhaustive_state_costs(inst, model.net, k, c, h)
    current = (int(rank_of(model.net, c) < k), int(rank_of(model.net, h) < k))
    expected[current] = 0
    for want in itertools.product((0, 1), repeat=2):
        got = state_cost(model, k, c, h, want)
        if want == current:
            continue
        assert (None if got is None else got[0]) == expected.get(want)
        if got is not None:
            after = flip_rows(model.net, got[1])
            assert (int(rank_of(after, c) < k), int(rank_of(after, h) < k)) == want
            assert scheme_cost(inst, 0, got[1]) == got[0]


def brute_min_cost_gap(options, strict):
    best = None
    for picks in itertools.product(*[range(len(o)) for o in options]):
        gap = sum(options[i][p][0] for i, p in enumerate(picks))
        cost = sum(options[i][p][1] for i, p in enumerate(picks))
        if gap > 0 or (not strict and gap >= 0):
            best = cost if best is None else min(best, cost)
    return best


option = st.tuples(st.integers(-5, 5), st.integers(0, 9), st.just(()))


@given(st.lists(st.lists(option, min_size=1, max_size=4), min_size=1, max_size=5), st.booleans())
def test_min_cost_gap_matches_brute_force(options, strict):
    found = min_cost_gap(options, strict)
    assert (None if found is None else found[0]) == brute_min_cost_gap(options, strict)
