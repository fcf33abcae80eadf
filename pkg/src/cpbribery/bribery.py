"""Bribery instances, flip plans, legality checks and the five cost schemes."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Optional, Sequence

from .cpnet import (
    Candidate,
    CPNet,
    Profile,
    Row,
    check_o_legal,
    flip_rows,
    level_of,
    levels_count,
    rank_of,
    top_candidate,
)
from .voting import VotingRule, is_winner, vetoed

ACTIONS = ("iv", "dv", "ivdv")
SCHEMES = ("equal", "flip", "level", "any", "dist")
SM_NEGATIVE_MODES = ("top", "issue")


class InstanceError(ValueError):
    """Raised when an instance is missing something its rule or scheme needs."""


class PlanError(ValueError):
    """Raised for plans that reference rows the voters do not have, or are illegal."""


@dataclass(frozen=True)
class BriberyInstance:
    profile: Profile
    rule: VotingRule
    action: str
    scheme: str
    budget: int
    hated: Candidate
    negative: bool = False
    global_order: Optional[tuple[int, ...]] = None
    # per voter: (issue, row) -> cost, required for the "any" scheme
    flip_costs: Optional[tuple[Mapping[Row, int], ...]] = None
    unique: bool = False
    sm_negative: str = "top"

    def __post_init__(self):
        if self.action not in ACTIONS:
            raise InstanceError(f"unknown bribery action {self.action!r}")
        if self.scheme not in SCHEMES:
            raise InstanceError(f"unknown cost scheme {self.scheme!r}")
        if self.sm_negative not in SM_NEGATIVE_MODES:
            raise InstanceError(f"unknown SM negative mode {self.sm_negative!r}")
        if self.budget < 0:
            raise InstanceError("budget must be non-negative")
        if len(self.hated) != self.profile.m or any(b not in (0, 1) for b in self.hated):
            raise InstanceError("hated candidate must assign a bit to every issue")
        if self.global_order is not None:
            object.__setattr__(self, "global_order", tuple(self.global_order))
        object.__setattr__(self, "hated", tuple(self.hated))

    @property
    def n(self) -> int:
        return self.profile.n

    @property
    def m(self) -> int:
        return self.profile.m

    def ranking_net(self, i: int, net: Optional[CPNet] = None) -> CPNet:
        """Voter ``i``'s net (or a bribed copy) carrying the order used for ranks."""
        net = self.profile.voters[i].net if net is None else net
        if self.rule.tag == "ok" and self.rule.regime == "pow2":
            order = self.global_order
        else:
            order = net.order if net.order is not None else self.global_order
        if order is None:
            raise InstanceError(f"voter {i} has no issue order")
        return net if net.order == order else net.with_order(order)

    def validate(self) -> list[str]:
        """Problems that make the instance unusable; empty when it is well formed."""
        errors = []
        rule = self.rule
        needs_global = rule.tag == "sm" or (rule.tag == "ok" and rule.regime == "pow2")
        if needs_global:
            if self.global_order is None:
                errors.append(f"rule {rule} needs a global order")
            elif not check_o_legal(self.profile, self.global_order):
                errors.append("profile is not legal for the global order")
        needs_ranks = rule.tag == "ov" or (rule.tag == "ok" and rule.regime == "poly")
        if needs_ranks or self.scheme == "dist":
            for i, v in enumerate(self.profile.voters):
                if v.net.order is None and self.global_order is None:
                    errors.append(f"voter {v.name or i} has no issue order")
        if self.scheme == "any":
            if self.flip_costs is None or len(self.flip_costs) != self.n:
                errors.append("the 'any' scheme needs flip costs for every voter")
            else:
                for i, v in enumerate(self.profile.voters):
                    for row in v.net.all_rows():
                        if row not in self.flip_costs[i]:
                            errors.append(f"voter {v.name or i} misses a flip cost for row {row}")
                            break
        return errors

    def flippable(self, i: int, issue: int) -> bool:
        independent = self.profile.voters[i].net.tables[issue].independent
        if self.action == "iv":
            return independent
        if self.action == "dv":
            return not independent
        return True

    def legal_rows(self, i: int) -> list[Row]:
        net = self.profile.voters[i].net
        return [row for row in net.all_rows() if self.flippable(i, row[0])]


@dataclass(frozen=True)
class FlipPlan:
    """Per-voter sets of flipped cp-statements, kept in canonical (sorted) form."""

    flips: tuple[tuple[int, tuple[Row, ...]], ...] = ()

    @classmethod
    def of(cls, mapping: Mapping[int, Iterable[Row]]) -> "FlipPlan":
        items = []
        for i in sorted(mapping):
            rows = tuple(sorted(set(mapping[i])))
            if rows:
                items.append((i, rows))
        return cls(tuple(items))

    def rows(self, i: int) -> tuple[Row, ...]:
        for j, rows in self.flips:
            if j == i:
                return rows
        return ()

    def voters(self) -> list[int]:
        return [i for i, _ in self.flips]

    def __iter__(self) -> Iterator[tuple[int, tuple[Row, ...]]]:
        return iter(self.flips)

    def __bool__(self):
        return bool(self.flips)

    def merge(self, other: "FlipPlan") -> "FlipPlan":
        mapping = {i: set(rows) for i, rows in self.flips}
        for i, rows in other.flips:
            mapping.setdefault(i, set()).update(rows)
        return FlipPlan.of(mapping)


EMPTY_PLAN = FlipPlan()


def _check_rows(instance: BriberyInstance, plan: FlipPlan) -> None:
    for i, rows in plan:
        if not 0 <= i < instance.n:
            raise PlanError(f"plan names voter {i}, profile has {instance.n}")
        net = instance.profile.voters[i].net
        for issue, r in rows:
            if not 0 <= issue < net.m or not 0 <= r < len(net.tables[issue].rows):
                raise PlanError(f"voter {i} has no row {r} for issue {issue}")


def plan_is_action_legal(instance: BriberyInstance, plan: FlipPlan) -> bool:
    _check_rows(instance, plan)
    return all(instance.flippable(i, issue) for i, rows in plan for issue, _ in rows)


def approves_hated(instance: BriberyInstance, i: int, net: CPNet) -> bool:
    """Whether voter ``i`` with preferences ``net`` casts a point for the hated candidate."""
    rule, h = instance.rule, instance.hated
    if rule.tag == "op":
        return top_candidate(net) == h
    if rule.tag == "ov":
        return vetoed(instance.ranking_net(i, net)) != h
    if rule.tag == "ok":
        return rank_of(instance.ranking_net(i, net), h) < rule.k
    return top_candidate(net) == h


def _supports_hated_issues(instance: BriberyInstance, net: CPNet) -> list[bool]:
    h = instance.hated
    return [net.preferred(issue, h) == h[issue] for issue in range(instance.m)]


def voter_negative_legal(instance: BriberyInstance, i: int, rows: Sequence[Row]) -> bool:
    if not rows:
        return True
    before = instance.profile.voters[i].net
    after = flip_rows(before, rows)
    if instance.rule.tag == "sm" and instance.sm_negative == "issue":
        was = _supports_hated_issues(instance, before)
        now = _supports_hated_issues(instance, after)
        return all(n or not w for w, n in zip(was, now))
    if approves_hated(instance, i, before):
        return approves_hated(instance, i, after)
    return True


def plan_is_negative_legal(instance: BriberyInstance, plan: FlipPlan) -> bool:
    _check_rows(instance, plan)
    return all(voter_negative_legal(instance, i, rows) for i, rows in plan)


def scheme_cost(instance: BriberyInstance, i: int, rows: Sequence[Row]) -> int:
    """Cost of voter ``i``'s flips under the instance's scheme, before the cost factor."""
    if not rows:
        return 0
    net = instance.profile.voters[i].net
    scheme = instance.scheme
    if scheme == "equal":
        return 1
    if scheme == "flip":
        return len(set(rows))
    if scheme == "level":
        depth = levels_count(net)
        return sum(depth + 1 - level_of(net, issue) for issue in {issue for issue, _ in rows})
    if scheme == "any":
        if instance.flip_costs is None:
            raise InstanceError("the 'any' scheme needs flip costs")
        costs = instance.flip_costs[i]
        return sum(costs[row] for row in set(rows))
    new_top = top_candidate(flip_rows(net, rows))
    return rank_of(instance.ranking_net(i), new_top)


def voter_cost(instance: BriberyInstance, i: int, rows: Sequence[Row]) -> int:
    return scheme_cost(instance, i, rows) * instance.profile.voters[i].cost_factor


def plan_cost(instance: BriberyInstance, plan: FlipPlan) -> int:
    _check_rows(instance, plan)
    return sum(voter_cost(instance, i, rows) for i, rows in plan)


def bribed_profile(profile: Profile, plan: FlipPlan) -> Profile:
    nets = profile.nets
    for i, rows in plan:
        nets[i] = flip_rows(nets[i], rows)
    return profile.with_nets(nets)


def apply_plan(instance: BriberyInstance, plan: FlipPlan, check: bool = True) -> Profile:
    """Profile after the plan; the instance itself is left untouched."""
    if check:
        if not plan_is_action_legal(instance, plan):
            raise PlanError(f"plan violates the {instance.action} bribery action")
        if instance.negative and not plan_is_negative_legal(instance, plan):
            raise PlanError("plan turns a voter against the hated candidate")
    return bribed_profile(instance.profile, plan)


def hated_wins(instance: BriberyInstance, profile: Optional[Profile] = None) -> bool:
    profile = instance.profile if profile is None else profile
    return is_winner(
        profile, instance.rule, instance.hated, instance.global_order, instance.unique
    )


def plan_failure(instance: BriberyInstance, plan: FlipPlan) -> Optional[str]:
    """Reason the plan does not achieve the briber's goal, or ``None`` when it does."""
    try:
        if not plan_is_action_legal(instance, plan):
            return "action"
        if instance.negative and not plan_is_negative_legal(instance, plan):
            return "negative"
        if plan_cost(instance, plan) > instance.budget:
            return "budget"
    except PlanError:
        return "rows"
    if hated_wins(instance, bribed_profile(instance.profile, plan)):
        return "hated-wins"
    return None


def bribery_succeeds(instance: BriberyInstance, plan: FlipPlan) -> bool:
    return plan_failure(instance, plan) is None
