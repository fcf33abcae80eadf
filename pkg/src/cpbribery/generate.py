"""Random nets, profiles and bribery instances for tests and experiments."""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Optional, Sequence

from .bribery import BriberyInstance
from .cpnet import CPNet, IssueSet, Profile, Voter, all_candidates, make_net
from .oracle import Limits, LimitsExceeded, check_limits
from .sources import CNFFormula, KnapsackInstance
from .voting import VotingRule


@dataclass
class InstanceConfig:
    """Shape of a random instance; the size bounds are inclusive."""

    rule: str = "op"
    action: str = "ivdv"
    scheme: str = "flip"
    k: int = 1
    k_choices: tuple[int, ...] = ()  # drawn per instance when given
    regime: str = "poly"
    max_issues: int = 4
    min_issues: int = 1
    max_voters: int = 6
    max_parents: int = 2
    max_weight: int = 1
    max_factor: int = 1
    uniform_factor: bool = False
    max_row_cost: int = 3
    negative: bool = False
    shared_order: bool = False  # all voters use one global order
    max_budget: Optional[int] = None
    limits: Limits = Limits(max_issues=4, max_rows=24, max_voters=6)


def issue_set(m: int) -> IssueSet:
    return IssueSet(tuple(f"x{i + 1}" for i in range(m)))


def random_net(
    rng: random.Random,
    issues: IssueSet,
    order: Optional[Sequence[int]] = None,
    max_parents: int = 2,
) -> CPNet:
    """Net whose parents all precede their child in ``order`` (random if omitted)."""
    m = issues.m
    order = list(order) if order is not None else rng.sample(range(m), m)
    tables: list = [None] * m
    for pos, x in enumerate(order):
        earlier = order[:pos]
        count = rng.randint(0, min(max_parents, len(earlier)))
        parents = tuple(sorted(rng.sample(earlier, count)))
        tables[x] = (parents, tuple(rng.randint(0, 1) for _ in range(2 ** count)))
    return make_net(issues, tables, order)


def random_profile(
    rng: random.Random,
    m: int,
    n: int,
    max_parents: int = 2,
    max_weight: int = 1,
    max_factor: int = 1,
    uniform_factor: bool = False,
    order: Optional[Sequence[int]] = None,
) -> Profile:
    issues = issue_set(m)
    shared = rng.randint(1, max_factor)
    voters = []
    for i in range(n):
        net = random_net(rng, issues, order, max_parents)
        factor = shared if uniform_factor else rng.randint(1, max_factor)
        voters.append(Voter(net, rng.randint(1, max_weight), factor, f"v{i + 1}"))
    return Profile(issues, tuple(voters))


def random_instance(rng: random.Random, cfg: InstanceConfig, tries: int = 200) -> BriberyInstance:
    """Draw instances until one fits ``cfg.limits``."""
    for _ in range(tries):
        m = rng.randint(cfg.min_issues, cfg.max_issues)
        n = rng.randint(1, cfg.max_voters)
        order = None
        needs_global = cfg.shared_order or cfg.rule == "sm" or (
            cfg.rule == "ok" and cfg.regime == "pow2"
        )
        if needs_global:
            order = tuple(rng.sample(range(m), m))
        profile = random_profile(
            rng, m, n, cfg.max_parents, cfg.max_weight, cfg.max_factor,
            cfg.uniform_factor, order,
        )
        costs = None
        if cfg.scheme == "any":
            costs = tuple(
                {row: rng.randint(1, cfg.max_row_cost) for row in v.net.all_rows()}
                for v in profile.voters
            )
        top = cfg.max_budget if cfg.max_budget is not None else 2 * n * cfg.max_factor
        k = rng.choice(cfg.k_choices) if cfg.k_choices else cfg.k
        inst = BriberyInstance(
            profile,
            VotingRule(cfg.rule, k, cfg.regime),
            cfg.action,
            cfg.scheme,
            rng.randint(0, top),
            rng.choice(list(all_candidates(m))),
            negative=cfg.negative,
            global_order=order,
            flip_costs=costs,
        )
        try:
            check_limits(inst, cfg.limits)
        except LimitsExceeded:
            continue
        return inst
    raise LimitsExceeded("could not draw an instance within the limits")


def random_nae_formula(rng: random.Random, max_vars: int = 5, max_clauses: int = 3,
                       max_excess: Optional[int] = None) -> CNFFormula:
    """Positive 3-literal formula; ``max_excess`` caps clauses * (variables - 3)."""
    while True:
        n = rng.randint(3, max_vars)
        m = rng.randint(1, max_clauses)
        if max_excess is None or m * (n - 3) <= max_excess:
            break
    clauses = tuple(tuple(x + 1 for x in rng.sample(range(n), 3)) for _ in range(m))
    return CNFFormula(n, clauses)


def random_3sat(rng: random.Random, variables: int, max_clauses: int = 12) -> CNFFormula:
    """Signed formula; dense clause sets make a fair share of them unsatisfiable."""
    m = rng.randint(1, max_clauses)
    clauses = []
    for _ in range(m):
        names = rng.sample(range(1, variables + 1), 3)
        clauses.append(tuple(x if rng.random() < 0.5 else -x for x in names))
    return CNFFormula(variables, tuple(clauses))


def random_knapsack(rng: random.Random, max_objects: int = 5, max_value: int = 4,
                    max_weight: int = 4) -> KnapsackInstance:
    objects = tuple(
        (rng.randint(0, max_weight), rng.randint(0, max_value))
        for _ in range(rng.randint(0, max_objects))
    )
    return KnapsackInstance(objects, rng.randint(0, 2 * max_value + 2), rng.randint(0, 2 * max_weight))


ACTIONS = ("iv", "dv", "ivdv")
SCHEMES = ("equal", "flip", "level", "any", "dist")


def polynomial_cells() -> dict[str, InstanceConfig]:
    """One config per tractable (rule, action, scheme, mode) cell served by a solver."""
    cells: dict[str, InstanceConfig] = {}
    for neg in (False, True):
        tag = "neg" if neg else "pos"
        for action in ACTIONS:
            for scheme in SCHEMES:
                cells[f"sm/{action}/{scheme}/{tag}"] = InstanceConfig(
                    "sm", action, scheme, max_factor=5, negative=neg)
                cells[f"ov/{action}/{scheme}/{tag}"] = InstanceConfig(
                    "ov", action, scheme, max_factor=5, negative=neg)
        cells[f"ov-weighted/dv/dist/{tag}"] = InstanceConfig(
            "ov", "dv", "dist", max_weight=5, max_factor=5, negative=neg)
        cells[f"op/ivdv/equal/{tag}"] = InstanceConfig("op", "ivdv", "equal", max_factor=5, negative=neg)
        cells[f"ok/ivdv/equal/{tag}"] = InstanceConfig(
            "ok", "ivdv", "equal", k_choices=(1, 2, 3, 4), max_factor=5, negative=neg)
        cells[f"ok-pow2/ivdv/equal/{tag}"] = InstanceConfig(
            "ok", "ivdv", "equal", k_choices=(1, 2, 4), regime="pow2", max_factor=5, negative=neg)
    uniform = dict(max_factor=5, uniform_factor=True)
    ks = dict(k_choices=(1, 2, 3, 4))
    pow2 = dict(k_choices=(1, 2, 4), regime="pow2")
    cells.update({
        "op/iv/flip/uniform": InstanceConfig("op", "iv", "flip", **uniform),
        "op/ivdv/flip/uniform": InstanceConfig("op", "ivdv", "flip", **uniform),
        "op/ivdv/dist/uniform": InstanceConfig("op", "ivdv", "dist", **uniform),
        "op/ivdv/level/uniform": InstanceConfig("op", "ivdv", "level", **uniform),
        "ok/ivdv/flip/uniform-olegal": InstanceConfig("ok", "ivdv", "flip", shared_order=True, **ks, **uniform),
        "ok/iv/flip/uniform": InstanceConfig("ok", "iv", "flip", **ks, **uniform),
        "ok/ivdv/dist/uniform-olegal": InstanceConfig("ok", "ivdv", "dist", shared_order=True, **ks, **uniform),
        "ok-pow2/iv/flip/uniform": InstanceConfig("ok", "iv", "flip", **pow2, **uniform),
        "ok-pow2/ivdv/flip/uniform": InstanceConfig("ok", "ivdv", "flip", **pow2, **uniform),
        "ok-pow2/ivdv/dist/uniform": InstanceConfig("ok", "ivdv", "dist", **pow2, **uniform),
    })
    return cells
