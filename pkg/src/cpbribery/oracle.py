"""Exhaustive destructive-bribery search, used as ground truth for every solver."""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Optional

from .bribery import (
    BriberyInstance,
    FlipPlan,
    InstanceError,
    voter_cost,
    voter_negative_legal,
)
from .cpnet import CPNet, Row, flip_rows, rank_of, all_candidates, top_candidate
from .voting import vetoed, winner_sm

class LimitsExceeded(RuntimeError):
    """The instance is too large for exhaustive search."""


@dataclass(frozen=True)
class Limits:
    max_issues: int = 5
    max_rows: int = 24
    max_voters: int = 10

    @classmethod
    def from_env(cls, environ=None) -> "Limits":
        env = os.environ if environ is None else environ
        base = cls()
        return cls(
            int(env.get("CPB_MAX_ISSUES", base.max_issues)),
            int(env.get("CPB_MAX_ROWS", base.max_rows)),
            int(env.get("CPB_MAX_VOTERS", base.max_voters)),
        )


@dataclass(frozen=True)
class SolveResult:
    decision: bool
    plan: Optional[FlipPlan]
    cost: Optional[int]
    method: str

    def __post_init__(self):
        if self.decision and (self.plan is None or self.cost is None):
            raise ValueError("a yes result needs a witness plan and its cost")


def check_limits(instance: BriberyInstance, limits: Limits) -> None:
    if instance.m > limits.max_issues:
        raise LimitsExceeded(f"{instance.m} issues > {limits.max_issues}")
    if instance.n > limits.max_voters:
        raise LimitsExceeded(f"{instance.n} voters > {limits.max_voters}")
    rows = sum(len(instance.legal_rows(i)) for i in range(instance.n))
    if rows > limits.max_rows:
        raise LimitsExceeded(f"{rows} flippable rows > {limits.max_rows}")


def _effect(instance: BriberyInstance, i: int, net: CPNet):
    """What a ballot contributes: the top, the approved set, the veto or the tables (SM)."""
    rule = instance.rule
    if rule.tag == "op":
        return frozenset([top_candidate(net)])
    if rule.tag == "sm":
        return tuple(t.rows for t in net.tables)
    ranked = instance.ranking_net(i, net)
    if rule.tag == "ov":
        return vetoed(ranked)
    return frozenset(c for c in all_candidates(instance.m) if rank_of(ranked, c) < rule.k)


def _flip_sets(instance: BriberyInstance, i: int):
    """Legal flip sets of voter ``i`` whose cost fits the budget, with their cost.

    Every cost scheme only grows when rows are added, so over-budget sets are
    not extended.
    """
    rows = instance.legal_rows(i)

    def walk(start, chosen):
        cost = voter_cost(instance, i, chosen)
        if cost > instance.budget:
            return
        yield cost, chosen
        for b in range(start, len(rows)):
            yield from walk(b + 1, chosen + (rows[b],))

    yield from walk(0, ())


def voter_options(instance: BriberyInstance, i: int) -> list[tuple[int, tuple[Row, ...], object]]:
    """Cheapest legal flip set for every distinct effect on voter ``i``'s ballot.

    Returned as ``(cost, rows, effect)`` sorted by cost, then flip count, then rows.
    """
    net = instance.profile.voters[i].net
    best: dict[object, tuple[int, int, tuple[Row, ...]]] = {}
    for cost, chosen in _flip_sets(instance, i):
        if instance.negative and not voter_negative_legal(instance, i, chosen):
            continue
        effect = _effect(instance, i, flip_rows(net, chosen))
        key = (cost, len(chosen), chosen)
        if effect not in best or key < best[effect]:
            best[effect] = key
    ranked = sorted((key, eff) for eff, key in best.items())
    return [(cost, chosen, eff) for (cost, _, chosen), eff in ranked]


def _approves(tag: str, effect, c) -> bool:
    if tag == "ov":
        return effect != c
    return c in effect


def _approval_search(instance: BriberyInstance, options):
    """Minimum-cost plan for OP, OK and OV, one rival candidate at a time.

    ``h`` stops winning exactly when some rival outscores it (or ties it, in
    unique-winner mode); for a fixed rival only each voter's pair of approvals
    matters, so the cheapest option per pair is combined across voters.
    """
    tag, h = instance.rule.tag, instance.hated
    weights = [v.weight for v in instance.profile.voters]
    if tag == "ov":
        rivals = set(all_candidates(instance.m))
    else:
        rivals = set()
        for opts in options:
            for _, _, eff in opts:
                rivals.update(eff)
    rivals.discard(h)
    best = None
    for c in sorted(rivals):
        # gap = score(c) - score(h); per gap keep (cost, chosen option indices)
        table: dict[int, tuple[int, tuple[int, ...]]] = {0: (0, ())}
        for i, opts in enumerate(options):
            pairs: dict[int, tuple[int, int]] = {}
            for idx, (cost, _, eff) in enumerate(opts):
                delta = weights[i] * (_approves(tag, eff, c) - _approves(tag, eff, h))
                if delta not in pairs or cost < pairs[delta][0]:
                    pairs[delta] = (cost, idx)
            grown: dict[int, tuple[int, tuple[int, ...]]] = {}
            for gap, (spent, picks) in table.items():
                for delta, (cost, idx) in pairs.items():
                    total = spent + cost
                    if total > instance.budget:
                        continue
                    cand = (total, picks + (idx,))
                    if gap + delta not in grown or cand < grown[gap + delta]:
                        grown[gap + delta] = cand
            table = grown
        for gap, (spent, picks) in table.items():
            loses = gap >= 0 if instance.unique else gap > 0
            if loses and (best is None or spent < best[0]):
                best = (spent, list(picks))
    return best


class _Search:
    """Depth-first search over per-voter options for sequential majority."""

    def __init__(self, instance: BriberyInstance, options):
        self.instance = instance
        self.options = options
        self.n = instance.n
        self.h = instance.hated
        self.best_cost = instance.budget + 1
        self.best_choice: Optional[list[int]] = None
        self.choice = [self._original_index(i) for i in range(self.n)]

    def _original_index(self, i):
        for k, (cost, rows, _) in enumerate(self.options[i]):
            if not rows:
                return k
        raise AssertionError("the empty flip set is always an option")

    def hated_loses(self) -> bool:
        inst = self.instance
        nets = []
        for i in range(self.n):
            net = inst.profile.voters[i].net
            nets.append(flip_rows(net, self.options[i][self.choice[i]][1]))
        return winner_sm(inst.profile.with_nets(nets), inst.global_order) != self.h

    def run(self, i=0, cost=0):
        if self.hated_loses():
            if cost < self.best_cost:
                self.best_cost = cost
                self.best_choice = list(self.choice)
            return
        for j in range(i, self.n):
            original = self.choice[j]
            for k, (c, rows, _) in enumerate(self.options[j]):
                if not rows:
                    continue
                if cost + c >= self.best_cost:
                    break
                self.choice[j] = k
                self.run(j + 1, cost + c)
                self.choice[j] = original


def brute_force_solve(instance: BriberyInstance, limits: Optional[Limits] = None) -> SolveResult:
    """Minimum-cost successful plan found by exhaustive search, or a no."""
    limits = Limits.from_env() if limits is None else limits
    errors = instance.validate()
    if errors:
        raise InstanceError("; ".join(errors))
    check_limits(instance, limits)
    options = [voter_options(instance, i) for i in range(instance.n)]
    if instance.rule.tag == "sm":
        search = _Search(instance, options)
        search.run()
        found = None
        if search.best_choice is not None:
            found = (search.best_cost, search.best_choice)
    else:
        found = _approval_search(instance, options)
    if found is None:
        return SolveResult(False, None, None, "oracle")
    cost, choice = found
    plan = FlipPlan.of({i: options[i][k][1] for i, k in enumerate(choice)})
    return SolveResult(True, plan, cost, "oracle")
