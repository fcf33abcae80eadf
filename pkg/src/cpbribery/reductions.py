"""Bribery instances built from NAE-3SAT, 3SAT and Knapsack sources.

Bit 1 of an issue stands for its first value (``x_i``), bit 0 for ``~x_i``.
"""

from __future__ import annotations

import math
from itertools import combinations
from typing import Optional, Sequence

from .bribery import BriberyInstance, scheme_cost
from .cpnet import CPNet, IssueSet, Profile, Voter, flip_rows, make_net
from .sources import CNFFormula, KnapsackInstance
from .voting import OP, OV, SM, VotingRule, vetoed

NAE_PATTERNS = tuple(
    (a, b, c) for a in (0, 1) for b in (0, 1) for c in (0, 1) if len({a, b, c}) == 2
)

NAE_CELLS = (
    [("iv", s) for s in ("equal", "flip", "level", "any", "dist")]
    + [("dv", s) for s in ("equal", "flip", "level", "any", "dist")]
    + [("ivdv", s) for s in ("flip", "level", "any", "dist")]
)


class ReductionError(ValueError):
    """Raised for sources or cells a construction does not cover."""


def _issues(names: Sequence[str]) -> IssueSet:
    return IssueSet(tuple(names))


def _independent(issues: IssueSet, prefs: Sequence[int], order=None) -> CPNet:
    return make_net(issues, [((), (b,)) for b in prefs], order)


def _unit_costs(profile: Profile, value: int = 1, special=None) -> tuple[dict, ...]:
    """Flip costs for the ``any`` scheme: ``value`` everywhere unless ``special`` says otherwise."""
    out = []
    for i, v in enumerate(profile.voters):
        costs = {row: value for row in v.net.all_rows()}
        if special is not None:
            costs.update(special(i, v))
        out.append(costs)
    return tuple(out)


def _approval_rule(rule: Optional[VotingRule]) -> VotingRule:
    rule = OP if rule is None else rule
    if rule.tag not in ("op", "ok") or rule.k != 1:
        raise ReductionError("the plurality constructions cover OP and OK with k = 1")
    return rule


# --- NAE-3SAT ----------------------------------------------------------------


def _full_flip_cost(instance_like: BriberyInstance, i: int) -> int:
    return scheme_cost(instance_like, i, instance_like.legal_rows(i))


def reduce_nae3sat(
    formula: CNFFormula,
    action: str,
    scheme: str,
    negative: bool = True,
    rule: Optional[VotingRule] = None,
) -> BriberyInstance:
    """Six voters per clause (one per not-all-equal pattern) and ``clauses - 1``
    voters topping the all-ones candidate ``h``.

    Gadget issues keep the clause issues of every clause voter out of reach; in the
    non-negative variant the voters topping ``h`` get cost factor ``budget + 1``.
    """
    rule = _approval_rule(rule)
    if (action, scheme) not in NAE_CELLS:
        raise ReductionError(f"no NAE-3SAT construction for ({action}, {scheme})")
    if not formula.positive:
        raise ReductionError("NAE-3SAT clauses are sets of unnegated variables")
    n, clauses = formula.variables, [tuple(sorted(abs(x) - 1 for x in c)) for c in formula.clauses]
    mc = len(clauses)
    if n < 3:
        raise ReductionError("the construction needs at least three variables")
    if mc < 1:
        raise ReductionError("the construction needs at least one clause")
    build = {
        "iv": _nae_star,
        "dv": _nae_star,
        "ivdv": {"any": _nae_any, "flip": _nae_flip, "level": _nae_level, "dist": _nae_dist}.get(scheme),
    }[action]
    issues, clause_nets, hated_nets, budget, costs = build(n, clauses, action, scheme)
    voters = [Voter(net, name=f"c{j + 1}p{p + 1}") for j, nets in enumerate(clause_nets) for p, net in enumerate(nets)]
    voters += [Voter(net, name=f"h{t + 1}") for t, net in enumerate(hated_nets)]
    profile = Profile(issues, tuple(voters))
    hated = (1,) * issues.m
    probe = BriberyInstance(profile, rule, action, scheme, 0, hated, negative, flip_costs=costs(profile))
    if budget is None:
        # no clause voter ever needs more than all of its legal rows
        budget = mc * max(_full_flip_cost(probe, i) for i in range(6 * mc))
    if not negative:
        voters = voters[: 6 * mc] + [
            Voter(v.net, v.weight, budget + 1, v.name) for v in voters[6 * mc:]
        ]
        profile = Profile(issues, tuple(voters))
    return BriberyInstance(profile, rule, action, scheme, budget, hated, negative,
                           flip_costs=costs(profile))


def _no_costs(scheme):
    return lambda profile: _unit_costs(profile) if scheme == "any" else None


def _nae_star(n, clauses, action, scheme):
    # one gadget issue x*, preferred by everybody and placed first in the order
    star = n
    issues = _issues([f"x{i + 1}" for i in range(n)] + ["x*"])
    order = (star,) + tuple(range(n))
    clause_nets = []
    for clause in clauses:
        nets = []
        for pattern in NAE_PATTERNS:
            bits = dict(zip(clause, pattern))
            tables = []
            for i in range(n):
                pref = bits.get(i, 1)
                tied = (i in bits) if action == "iv" else (i not in bits)
                tables.append(((star,), (1 - pref, pref)) if tied else ((), (pref,)))
            tables.append(((), (1,)))
            nets.append(make_net(issues, tables, order))
        clause_nets.append(nets)
    hated = [_independent(issues, (1,) * (n + 1), order) for _ in range(len(clauses) - 1)]
    return issues, clause_nets, hated, None, _no_costs(scheme)


def _nae_any(n, clauses, action, scheme):
    issues = _issues([f"x{i + 1}" for i in range(n)])
    order = tuple(range(n))
    clause_nets = []
    for clause in clauses:
        bits_of = [dict(zip(clause, p)) for p in NAE_PATTERNS]
        clause_nets.append([_independent(issues, [b.get(i, 1) for i in range(n)], order) for b in bits_of])
    hated = [_independent(issues, (1,) * n, order) for _ in range(len(clauses) - 1)]
    mc = len(clauses)

    def costs(profile):
        def special(i, v):
            if i >= 6 * mc:
                return {}
            free = set(range(n)) - set(clauses[i // 6])
            return {(x, 0): 0 for x in free}

        return _unit_costs(profile, 1, special)

    return issues, clause_nets, hated, 0, costs


def _pattern_row(pattern) -> int:
    return pattern[0] << 2 | pattern[1] << 1 | pattern[2]


def _nae_flip(n, clauses, action, scheme):
    mc = len(clauses)
    width = mc * (n - 3)
    names = [f"x{i + 1}" for i in range(n)]
    names += [f"g{a + 1}_{b + 1}" for a in range(mc) for b in range(width)]
    issues = _issues(names)
    order = tuple(range(len(names)))

    clause_nets = []
    for j, clause in enumerate(clauses):
        nets = []
        for pattern in NAE_PATTERNS:
            bits = dict(zip(clause, pattern))
            tables = [((), (bits.get(i, 1),)) for i in range(n)]
            for a in range(mc):
                for b in range(width):
                    if a == j:
                        rows = [0] * 8
                        rows[_pattern_row(pattern)] = 1
                        tables.append((clause, tuple(rows)))
                    else:
                        tables.append(((), (1,)))
            nets.append(make_net(issues, tables, order))
        clause_nets.append(nets)
    hated = [_independent(issues, (1,) * issues.m, order) for _ in range(mc - 1)]
    return issues, clause_nets, hated, width, _no_costs(scheme)


def _nae_level(n, clauses, action, scheme):
    mc = len(clauses)
    length = mc * n
    names = [f"x{i + 1}" for i in range(n)] + [f"g{b + 1}" for b in range(length)]
    issues = _issues(names)
    queue = tuple(range(n, n + length))
    clause_nets = []
    for clause in clauses:
        rest = tuple(i for i in range(n) if i not in clause)
        order = tuple(clause) + queue + rest
        nets = []
        for pattern in NAE_PATTERNS:
            bits = dict(zip(clause, pattern))
            tables = []
            for i in range(n):
                if i in bits:
                    tables.append(((), (bits[i],)))
                else:
                    tables.append(((queue[-1],), (0, 1)))
            rows = [0] * 8
            rows[_pattern_row(pattern)] = 1
            tables.append((clause, tuple(rows)))
            for b in range(1, length):
                tables.append(((queue[b - 1],), (0, 1)))
            nets.append(make_net(issues, tables, order))
        clause_nets.append(nets)
    hated = [_independent(issues, (1,) * issues.m, tuple(range(issues.m))) for _ in range(mc - 1)]
    return issues, clause_nets, hated, mc * (n - 3), _no_costs(scheme)


def _nae_dist(n, clauses, action, scheme):
    mc = len(clauses)
    count = math.ceil(math.log2(mc)) + 1
    names = [f"x{i + 1}" for i in range(n)] + [f"g{a + 1}" for a in range(count)]
    issues = _issues(names)
    gadgets = tuple(range(n, n + count))
    clause_nets = []
    for clause in clauses:
        rest = tuple(i for i in range(n) if i not in clause)
        order = tuple(clause) + gadgets + rest
        nets = []
        for pattern in NAE_PATTERNS:
            bits = dict(zip(clause, pattern))
            prefs = [bits.get(i, 1) for i in range(n)] + [1] * count
            nets.append(_independent(issues, prefs, order))
        clause_nets.append(nets)
    hated = [_independent(issues, (1,) * issues.m, tuple(range(issues.m))) for _ in range(mc - 1)]
    return issues, clause_nets, hated, mc * 2 ** (n - 3) - 1, _no_costs(scheme)


# --- 3SAT and k-approval evaluation -----------------------------------------------


def reduce_3sat_ok_eval(formula: CNFFormula) -> tuple[Profile, int]:
    """One voter per clause whose approved set is exactly the clause's models.

    Each voter ranks the clause's three issues first, preferring the satisfying
    literal values, so the falsifying combination fills the last block of
    ``2**(n-3)`` ranks.
    """
    n = formula.variables
    if n < 3:
        raise ReductionError("the construction needs at least three variables")
    issues = _issues([f"x{i + 1}" for i in range(n)])
    voters = []
    for j, clause in enumerate(formula.clauses):
        head = tuple(abs(lit) - 1 for lit in clause)
        prefs = [1] * n
        for lit in clause:
            prefs[abs(lit) - 1] = 1 if lit > 0 else 0
        order = head + tuple(i for i in range(n) if i not in head)
        voters.append(Voter(_independent(issues, prefs, order), name=f"c{j + 1}"))
    return Profile(issues, tuple(voters)), 7 * 2 ** (n - 3)


# --- Knapsack ------------------------------------------------------------------------

TWO = _issues(["x1", "x2"])


def _objects(inst: KnapsackInstance):
    # zero-value objects never help reach the target and cannot carry a zero weight
    return [(w, v) for w, v in inst.objects if v > 0]


def _trivial(rule: VotingRule, action: str, scheme: str, negative: bool, yes: bool) -> BriberyInstance:
    """A two-issue instance with one unbribable voter, decided by ``yes``."""
    h = (0, 0)
    order = (0, 1)
    if rule.tag == "ov":
        veto = h if yes else (1, 1)
        prefs = tuple(1 - b for b in veto)
    else:
        prefs = (1, 1) if yes else h
    net = _independent(TWO, prefs, order)
    profile = Profile(TWO, (Voter(net, 1, 1, "anchor"),))
    costs = _unit_costs(profile) if scheme == "any" else None
    return BriberyInstance(profile, rule, action, scheme, 0, h, negative, order, costs)


def _weighted(voters) -> tuple[Voter, ...]:
    return tuple(v for v in voters if v.weight > 0)


def reduce_knapsack_op(
    inst: KnapsackInstance,
    action: str,
    scheme: str,
    negative: bool = False,
    rule: Optional[VotingRule] = None,
) -> BriberyInstance:
    """Object voters top ``x1 ~x2``; moving them to ``x1 x2`` costs 1 times the object's weight."""
    rule = _approval_rule(rule)
    objects = _objects(inst)
    total = sum(v for _, v in objects)
    if total == 0:
        return _trivial(rule, action, scheme, negative, inst.target == 0)
    budget = inst.budget
    locked = budget + 1
    order = (0, 1)
    if action == "dv":
        obj_net = make_net(TWO, [((), (1,)), ((0,), (1, 0))], order)
    else:
        obj_net = _independent(TWO, (1, 0), order)
    voters = [Voter(_independent(TWO, (0, 0), order), total + inst.target - 1, locked, "hated")]
    voters += [Voter(obj_net, v, w, f"o{i + 1}") for i, (w, v) in enumerate(objects)]
    voters.append(Voter(_independent(TWO, (1, 1), order), total, locked, "rival"))
    profile = Profile(TWO, _weighted(voters))
    costs = _unit_costs(profile) if scheme == "any" else None
    return BriberyInstance(profile, rule, action, scheme, budget, (0, 0), negative, order, costs)


def _veto_net(veto) -> CPNet:
    return _independent(TWO, tuple(1 - b for b in veto), (0, 1))


def _unit_move(net: CPNet, action: str, scheme: str, start, goal) -> int:
    """Cheapest flip set moving ``net``'s veto from ``start`` to ``goal`` (cost factor 1)."""
    profile = Profile(TWO, (Voter(net),))
    costs = _unit_costs(profile) if scheme == "any" else None
    probe = BriberyInstance(profile, OV, action, scheme, 0, (0, 0), flip_costs=costs)
    rows = probe.legal_rows(0)
    best = None
    assert vetoed(net) == start
    for size in range(1, len(rows) + 1):
        for chosen in combinations(rows, size):
            if vetoed(flip_rows(net, chosen)) == goal:
                cost = scheme_cost(probe, 0, chosen)
                best = cost if best is None else min(best, cost)
    if best is None:
        raise ReductionError("intended veto move is not available")
    return best


def reduce_knapsack_ov(
    inst: KnapsackInstance, action: str, scheme: str, negative: bool = False
) -> BriberyInstance:
    """Object voters carry one veto each, weighted by value; ``h = ~x1 ~x2``.

    Non-negative: objects veto a heavily vetoed candidate and the briber moves
    vetoes of total value at least the target onto ``h``.  Negative: objects veto
    ``x1 x2`` and the briber moves enough of those vetoes elsewhere.  The budget is
    scaled by the scheme's cost of one such move.
    """
    if action == "dv" and scheme == "dist":
        raise ReductionError("weighted OV with DV and C_dist is polynomial")
    objects = _objects(inst)
    total, k = sum(v for _, v in objects), inst.target
    h = (0, 0)
    if negative:
        rival = (1, 1)
        if action == "dv":
            obj_net = make_net(TWO, [((), (0,)), ((0,), (0, 0))], (0, 1))
        else:
            obj_net = _independent(TWO, (0, 0), (0, 1))
        goal = (1, 0)
        others = [(0, 1), (1, 0)]
        if k <= total:
            anchors = [(h, total - k + 1)] + [(c, total) for c in others]
        else:
            anchors = [(h, 1), (rival, 1)] + [(c, total + 1) for c in others]
    else:
        if action == "dv":
            obj_net = make_net(TWO, [((), (1,)), ((0,), (0, 1))], (0, 1))
        else:
            obj_net = make_net(TWO, [((), (0,)), ((0,), (1, 0))], (0, 1))
        rival = vetoed(obj_net)
        goal = h
        others = [c for c in ((0, 1), (1, 0), (1, 1)) if c != rival]
        anchors = [(h, total + 1), (rival, 3 * total + k + 1)] + [(c, total + k) for c in others]
    unit = _unit_move(obj_net, action, scheme, rival, goal)
    budget = unit * inst.budget
    locked = budget + 1
    voters = [Voter(_veto_net(c), w, locked, f"veto{c[0]}{c[1]}") for c, w in anchors]
    voters += [Voter(obj_net, v, w, f"o{i + 1}") for i, (w, v) in enumerate(objects)]
    profile = Profile(TWO, _weighted(voters))
    costs = _unit_costs(profile) if scheme == "any" else None
    return BriberyInstance(profile, OV, action, scheme, budget, h, negative, (0, 1), costs)


def reduce_knapsack_sm(
    inst: KnapsackInstance, action: str, scheme: str, negative: bool = False
) -> BriberyInstance:
    """Sequential majority along ``X1 > X2`` (``> X3`` for DV under C_dist)."""
    objects = _objects(inst)
    total, k = sum(v for _, v in objects), inst.target
    third = action == "dv" and scheme == "dist"
    m = 3 if third else 2
    if k > total or total == 0:
        return _trivial(SM, action, scheme, negative, k == 0)
    budget = 2 * inst.budget if third else inst.budget
    locked = 2 * inst.budget + 1
    issues = _issues([f"x{i + 1}" for i in range(m)])
    order = tuple(range(m))

    def anchor(prefs, weight, name):
        tail = (0,) if third else ()
        return Voter(_independent(issues, tuple(prefs) + tail, order), weight, locked, name)

    if action == "dv":
        tables = [((), (0 if third else 1,)), ((0,), (0, 1))]
        if third:
            tables.append(((), (1,)))
        obj_net = make_net(issues, tables, order)
    else:
        obj_net = _independent(issues, (1, 0), order)
    voters = [
        anchor((0, 0), 2 * total, "hated"),
        anchor((0, 1), 2 * total, "second"),
    ]
    voters += [Voter(obj_net, v, w, f"o{i + 1}") for i, (w, v) in enumerate(objects)]
    voters.append(anchor((1, 0), total, "third"))
    voters.append(anchor((1, 1), 2 * total - 2 * k + 1, "fourth"))
    profile = Profile(issues, _weighted(voters))
    costs = _unit_costs(profile) if scheme == "any" else None
    return BriberyInstance(profile, SM, action, scheme, budget, (0,) * m, negative, order, costs)
