"""Polynomial destructive-bribery solvers, the routing table and margin of victory."""

from __future__ import annotations

import math
from dataclasses import replace
from typing import Optional, Sequence

from .bribery import (
    EMPTY_PLAN,
    BriberyInstance,
    FlipPlan,
    InstanceError,
    hated_wins,
    plan_cost,
    voter_cost,
    voter_negative_legal,
)
from .cpnet import Candidate, Profile, all_candidates, check_o_legal
from .engine import (
    VoterModel,
    approved_set,
    best_target,
    complement,
    hated_block,
    models_for,
    project,
    single_flip_entrants,
    state_cost,
    unproject_rows,
)
from .oracle import Limits, SolveResult, brute_force_solve
from .voting import DEFAULT_K_CAP, VotingRule, winners

# Set sizes below this are enumerated outright instead of building the target set.
SMALL_DOMAIN = 2


def _require(cond: bool, message: str) -> None:
    if not cond:
        raise InstanceError(message)


def _checked(instance: BriberyInstance) -> None:
    errors = instance.validate()
    if errors:
        raise InstanceError("; ".join(errors))


def _already_lost(instance: BriberyInstance, method: str) -> Optional[SolveResult]:
    if not hated_wins(instance):
        return SolveResult(True, EMPTY_PLAN, 0, method)
    return None


def _result(instance: BriberyInstance, plan: FlipPlan, method: str) -> SolveResult:
    cost = plan_cost(instance, plan)
    if cost > instance.budget:
        return SolveResult(False, None, None, method)
    return SolveResult(True, plan, cost, method)


# --- sequential majority ---------------------------------------------------


def solve_sm(instance: BriberyInstance) -> SolveResult:
    """Cheapest issue to turn against the hated candidate, greedily per issue."""
    _require(instance.rule.tag == "sm", "solve_sm needs the SM rule")
    _require(not instance.profile.weighted, "weighted SM is served by the oracle")
    _require(instance.sm_negative == "top" or not instance.negative,
             "solve_sm implements the top-candidate negative mode")
    _checked(instance)
    done = _already_lost(instance, "sm-greedy")
    if done:
        return done
    h = instance.hated
    best: Optional[tuple[int, dict]] = None
    for t in instance.global_order:
        against = 0
        prices = []
        for i, v in enumerate(instance.profile.voters):
            row = v.net.row_of(t, h)
            if v.net.preferred(t, h) != h[t]:
                against += 1
                continue
            if not instance.flippable(i, t):
                continue
            if instance.negative and not voter_negative_legal(instance, i, (row,)):
                continue
            prices.append((voter_cost(instance, i, (row,)), i, row))
        n = instance.n
        # ties go to bit 1, so a 0 in h falls on an even split
        need = n // 2 + 1 if h[t] == 1 else (n + 1) // 2
        missing = max(0, need - against)
        if missing > len(prices):
            continue
        prices.sort()
        chosen = prices[:missing]
        cost = sum(p for p, _, _ in chosen)
        if best is None or cost < best[0]:
            best = (cost, {i: (row,) for _, i, row in chosen})
    if best is None:
        return SolveResult(False, None, None, "sm-greedy")
    return _result(instance, FlipPlan.of(best[1]), "sm-greedy")


# --- approval rules through the per-voter engine ---------------------------


def targets_for(models: Sequence[VoterModel], k: int, h: Candidate, m: int) -> set[Candidate]:
    """Candidates that may have to be considered as the one overtaking ``h``."""
    if 2 ** m <= max(2 * k, SMALL_DOMAIN):
        return set(all_candidates(m))
    out = {complement(h)}
    for model in models:
        out.update(approved_set(model, k))
        out.update(hated_block(model, k, h))
        out.update(single_flip_entrants(model, k))
    out.discard(tuple(h))
    return out


def _approval_solve(instance: BriberyInstance, method: str, targets=None) -> SolveResult:
    done = _already_lost(instance, method)
    if done:
        return done
    rule = instance.rule
    if rule.tag == "ok" and rule.regime == "pow2":
        models, h, kept = project(instance)
        if not kept:
            return SolveResult(False, None, None, method)
        k = 1
    else:
        models, h, kept = models_for(instance), instance.hated, None
        k = rule.approvals(instance.m) if rule.tag != "ok" else rule.k
    if targets is None:
        targets = targets_for(models, k, h, len(h))
    found = best_target(models, k, h, targets, instance.negative)
    if found is None:
        return SolveResult(False, None, None, method)
    _, plan, _ = found
    if kept is not None:
        plan = {i: unproject_rows(rows, kept) for i, rows in plan.items()}
    return _result(instance, FlipPlan.of(plan), method)


def _veto_price(model: VoterModel, k: int, h: Candidate) -> Optional[tuple[int, tuple]]:
    other = complement(h)
    options = [state_cost(model, k, other, h, (c_in, 0)) for c_in in (0, 1)]
    options = [o for o in options if o is not None]
    if not options:
        return None
    return min(options, key=lambda o: (o[0], len(o[1]), o[1]))


def _ov_cases(instance: BriberyInstance, method: str) -> SolveResult:
    done = _already_lost(instance, method)
    if done:
        return done
    m, h = instance.m, instance.hated
    if instance.n >= 2 ** m:
        return _approval_solve(instance, method, all_candidates(m))
    # fewer voters than candidates and h still wins: nobody vetoes h
    if instance.negative:
        return SolveResult(False, None, None, method)
    k = 2 ** m - 1
    best = None
    for i, model in enumerate(models_for(instance)):
        price = _veto_price(model, k, h)
        if price is None:
            continue
        cost = price[0] * model.factor
        if best is None or cost < best[0]:
            best = (cost, i, price[1])
    if best is None:
        return SolveResult(False, None, None, method)
    return _result(instance, FlipPlan.of({best[1]: best[2]}), method)


def solve_ov(instance: BriberyInstance) -> SolveResult:
    """One-step veto: pigeonhole when voters are scarce, per-target costs otherwise."""
    _require(instance.rule.tag == "ov", "solve_ov needs the OV rule")
    _require(not instance.profile.weighted, "solve_ov is for unweighted profiles")
    _checked(instance)
    return _ov_cases(instance, "ov-pigeonhole")


def solve_weighted_ov_dv_cdist(instance: BriberyInstance) -> SolveResult:
    """Weighted veto, dependent-row bribes priced by the rank of the new top."""
    _require(instance.rule.tag == "ov", "needs the OV rule")
    _require(instance.action == "dv" and instance.scheme == "dist", "needs DV bribes under C_dist")
    _checked(instance)
    return _ov_cases(instance, "ov-dv-dist")


def solve_ivdv_cequal(instance: BriberyInstance) -> SolveResult:
    """Plurality or efficient k-approval with unrestricted flips at unit cost per voter."""
    rule = instance.rule
    _require(rule.tag in ("op", "ok"), "needs OP or OK")
    _require(instance.action == "ivdv" and instance.scheme == "equal", "needs IV+DV under C_equal")
    _checked(instance)
    return _approval_solve(instance, "potential-winners")


def special_cell(instance: BriberyInstance) -> Optional[str]:
    """Name of the uniform-cost cell the instance belongs to, if any."""
    factors = {v.cost_factor for v in instance.profile.voters}
    if len(factors) > 1 or instance.negative or instance.profile.weighted:
        return None
    rule, action, scheme = instance.rule, instance.action, instance.scheme
    o_legal = instance.global_order is not None and check_o_legal(
        instance.profile, instance.global_order
    )
    if rule.tag == "op":
        if scheme == "flip" and action in ("iv", "ivdv"):
            return "op-flip"
        if action == "ivdv" and scheme == "dist":
            return "op-dist"
        if action == "ivdv" and scheme == "level":
            return "op-level"
        return None
    if rule.tag != "ok":
        return None
    if rule.regime == "pow2":
        if scheme == "flip" and action in ("iv", "ivdv"):
            return "ok-pow2-flip"
        if scheme == "dist" and action == "ivdv":
            return "ok-pow2-dist"
        return None
    if rule.k > DEFAULT_K_CAP:
        return None
    if scheme == "flip" and action == "ivdv" and o_legal:
        return "ok-flip"
    if scheme == "flip" and action == "iv":
        return "ok-iv-flip"
    if scheme == "dist" and action == "ivdv" and o_legal:
        return "ok-dist"
    return None


def solve_uniform_special(instance: BriberyInstance) -> SolveResult:
    cell = special_cell(instance)
    _require(cell is not None, "instance is outside the uniform-cost cells")
    _checked(instance)
    return _approval_solve(instance, f"uniform-{cell}")


# --- routing ---------------------------------------------------------------


def _efficient_ok(rule: VotingRule) -> bool:
    return rule.regime == "pow2" or rule.k <= DEFAULT_K_CAP


def route(instance: BriberyInstance) -> str:
    """Which solver ``dispatch_solve`` uses for the instance."""
    rule, weighted = instance.rule, instance.profile.weighted
    if instance.unique:
        return "oracle"
    if rule.tag == "sm":
        if not weighted and (instance.sm_negative == "top" or not instance.negative):
            return "sm"
        return "oracle"
    if rule.tag == "ov":
        if not weighted:
            return "ov"
        if instance.action == "dv" and instance.scheme == "dist":
            return "ov-dv-dist"
        return "oracle"
    if rule.tag == "ok" and not _efficient_ok(rule):
        return "oracle"
    if weighted:
        return "oracle"
    if instance.action == "ivdv" and instance.scheme == "equal":
        return "ivdv-equal"
    if special_cell(instance) is not None:
        return "uniform"
    return "oracle"


SOLVERS = {
    "sm": solve_sm,
    "ov": solve_ov,
    "ov-dv-dist": solve_weighted_ov_dv_cdist,
    "ivdv-equal": solve_ivdv_cequal,
    "uniform": solve_uniform_special,
}


def dispatch_solve(instance: BriberyInstance, limits: Optional[Limits] = None) -> SolveResult:
    """Polynomial solver for tractable cells, exhaustive search for the rest."""
    _checked(instance)
    name = route(instance)
    if name == "oracle":
        return brute_force_solve(instance, limits)
    return SOLVERS[name](instance)


# --- margin of victory -----------------------------------------------------


def margin_of_victory(
    profile: Profile,
    rule: VotingRule,
    order: Optional[Sequence[int]] = None,
    limits: Optional[Limits] = None,
) -> float:
    """Fewest voters to re-vote so the current unique winner stops winning.

    Returns 0 when the winner set is not a singleton.
    """
    h = winners(profile, rule, order).unique_winner()
    if h is None:
        return 0
    n = profile.n
    unit = replace(
        profile, voters=tuple(replace(v, cost_factor=1) for v in profile.voters)
    )

    def yes(b: int) -> bool:
        inst = BriberyInstance(unit, rule, "ivdv", "equal", b, h, global_order=order)
        return dispatch_solve(inst, limits).decision

    if not yes(n):
        if 2 ** profile.m > 1:
            raise AssertionError("rewriting every voter must dethrone the winner")
        return math.inf
    lo, hi = 0, n
    while lo < hi:
        mid = (lo + hi) // 2
        if yes(mid):
            hi = mid
        else:
            lo = mid + 1
    return lo
