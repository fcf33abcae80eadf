"""Exact per-voter bribery costs for approval rules and the target-wise aggregation.

The polynomial solvers reduce an approval-rule bribery question to: for a target
candidate ``c``, which pairs ``(c approved?, h approved?)`` can each voter be
moved to, at what cost, and which combination makes ``c`` outscore ``h`` most
cheaply.  Ranks of ``c`` and ``h`` only depend on the cp-statements along the
two candidates' own paths, so a digit DP over issue positions settles each voter.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Mapping, Optional, Sequence

from .bribery import BriberyInstance
from .cpnet import (
    Candidate,
    CPNet,
    CPTable,
    IssueSet,
    Row,
    flip_rows,
    level_of,
    levels_count,
    rank_of,
    top_k,
)

LT, EQ, GT = 0, 1, 2


@dataclass(frozen=True)
class VoterModel:
    """What the solvers need to know about one voter."""

    net: CPNet  # carries the order used for ranks
    weight: int
    factor: int
    flippable: tuple[bool, ...]
    scheme: str
    issue_weight: tuple[int, ...] = ()  # per-issue price under the level scheme
    row_cost: Optional[Mapping[Row, int]] = None
    dist_scale: int = 1

    @property
    def m(self) -> int:
        return self.net.m


def models_for(instance: BriberyInstance) -> list[VoterModel]:
    models = []
    for i, v in enumerate(instance.profile.voters):
        if _needs_order(instance):
            net = instance.ranking_net(i)
        else:
            net = v.net.with_order(v.net.topological)  # rank-0 is order-free
        depth = levels_count(v.net)
        models.append(
            VoterModel(
                net=net,
                weight=v.weight,
                factor=v.cost_factor,
                flippable=tuple(instance.flippable(i, x) for x in range(instance.m)),
                scheme=instance.scheme,
                issue_weight=tuple(depth + 1 - level_of(v.net, x) for x in range(instance.m)),
                row_cost=None if instance.flip_costs is None else instance.flip_costs[i],
            )
        )
    return models


def _needs_order(instance: BriberyInstance) -> bool:
    return instance.rule.tag in ("ov", "ok") or instance.scheme == "dist"


def project(instance: BriberyInstance) -> tuple[list[VoterModel], Candidate, tuple[int, ...]]:
    """Drop the last ``j`` issues of the global order for ``k = 2**j``.

    Returns the projected voter models (ranked by the kept prefix), the projected
    hated candidate and the original index of every kept issue.
    """
    order = instance.global_order
    j = min(instance.rule.k.bit_length() - 1, instance.m)
    kept = tuple(order[: instance.m - j])
    new_index = {x: t for t, x in enumerate(kept)}
    full = models_for(instance)
    issues = IssueSet(
        tuple(instance.profile.issues.names[x] for x in kept),
        tuple(instance.profile.issues.values[x] for x in kept),
    ) if kept else None
    models = []
    for model in full:
        if not kept:
            break
        tables = []
        for t, x in enumerate(kept):
            tab = model.net.tables[x]
            tables.append(CPTable(t, tuple(new_index[p] for p in tab.parents), tab.rows))
        net = CPNet(issues, tuple(tables), tuple(range(len(kept))))
        cost = None
        if model.row_cost is not None:
            cost = {(new_index[x], r): c for (x, r), c in model.row_cost.items() if x in new_index}
        models.append(
            replace(
                model,
                net=net,
                flippable=tuple(model.flippable[x] for x in kept),
                issue_weight=tuple(model.issue_weight[x] for x in kept),
                row_cost=cost,
                dist_scale=model.dist_scale * 2 ** j,
            )
        )
    h = tuple(instance.hated[x] for x in kept)
    return models, h, kept


def unproject_rows(rows: Sequence[Row], kept: Sequence[int]) -> tuple[Row, ...]:
    return tuple((kept[x], r) for x, r in rows)


# --- per-voter state costs -------------------------------------------------


def _position_data(model: VoterModel, c: Sequence[int], h: Sequence[int]):
    net = model.net
    data = []
    for x in net.order:
        tab = net.tables[x]
        rc, rh = tab.row_index(c), tab.row_index(h)
        data.append((x, rc, rh, tab.rows[rc], tab.rows[rh]))
    return data


def _row_price(model: VoterModel, row: Row) -> int:
    if model.scheme == "any":
        return model.row_cost[row]
    return 1


def _choices(model: VoterModel, pos, c, h, fixed):
    """Alternatives at one position: (d_c, d_h, changed rows, additive price)."""
    x, rc, rh, pc, ph = pos
    can = model.flippable[x]
    out = []
    if rc == rh:
        for new in ((pc, pc ^ 1) if can else (pc,)):
            if fixed.get((x, rc), new) != new:
                continue
            changed = ((x, rc),) if new != pc else ()
            out.append((int(c[x] != new), int(h[x] != new), changed))
    else:
        for nc in ((pc, pc ^ 1) if can else (pc,)):
            if fixed.get((x, rc), nc) != nc:
                continue
            for nh in ((ph, ph ^ 1) if can else (ph,)):
                if fixed.get((x, rh), nh) != nh:
                    continue
                changed = tuple(
                    row for row, new, old in (((x, rc), nc, pc), ((x, rh), nh, ph)) if new != old
                )
                out.append((int(c[x] != nc), int(h[x] != nh), changed))
    priced = []
    for dc, dh, changed in out:
        if model.scheme == "level":
            price = model.issue_weight[x] if changed else 0
        else:
            price = sum(_row_price(model, row) for row in changed)
        priced.append((dc, dh, changed, price))
    return priced


def _step(state: int, bit: int, kbit: int) -> int:
    if state != EQ:
        return state
    if bit == kbit:
        return EQ
    return LT if bit < kbit else GT


def _cheapest(model: VoterModel, data, c, h, k: int, want: tuple[int, int], fixed) -> Optional[tuple[int, tuple[Row, ...]]]:
    """Minimum additive price of a table change giving the wanted approval pair."""
    m = model.m
    if k >= 2 ** m:
        if want != (1, 1):
            return None
        return 0, ()
    frontier: dict[tuple[int, int], tuple[int, tuple[Row, ...]]] = {(EQ, EQ): (0, ())}
    for p, pos in enumerate(data):
        kbit = (k >> (m - 1 - p)) & 1
        nxt: dict[tuple[int, int], tuple[int, tuple[Row, ...]]] = {}
        options = _choices(model, pos, c, h, fixed)
        for (sc, sh), (cost, rows) in frontier.items():
            for dc, dh, changed, price in options:
                key = (_step(sc, dc, kbit), _step(sh, dh, kbit))
                cand = (cost + price, rows + changed)
                if key not in nxt or (cand[0], len(cand[1]), cand[1]) < (nxt[key][0], len(nxt[key][1]), nxt[key][1]):
                    nxt[key] = cand
        frontier = nxt
    best = None
    for (sc, sh), cand in frontier.items():
        if (sc == LT) == bool(want[0]) and (sh == LT) == bool(want[1]):
            if best is None or (cand[0], len(cand[1]), cand[1]) < (best[0], len(best[1]), best[1]):
                best = cand
    return best


def state_cost(
    model: VoterModel, k: int, c: Sequence[int], h: Sequence[int], want: tuple[int, int]
) -> Optional[tuple[int, tuple[Row, ...]]]:
    """Cheapest change (scheme cost, before the voter's factor) after which the voter
    approves ``c`` iff ``want[0]`` and ``h`` iff ``want[1]``; ``None`` if impossible.

    Approval means rank below ``k`` in the voter's own order.
    """
    data = _position_data(model, c, h)
    if model.scheme != "dist":
        found = _cheapest(model, data, c, h, k, want, {})
        if found is None:
            return None
        cost, rows = found
        if model.scheme == "equal":
            cost = 1 if rows else 0
        return cost, rows
    return _dist_cost(model, data, c, h, k, want)


def _dist_cost(model, data, c, h, k, want):
    # Fix, issue by issue along the emerging new top, whether its cp-statement
    # changes; keeping it is preferred whenever the wanted pair stays reachable.
    # This minimises the new top's rank lexicographically, i.e. numerically.
    if _cheapest(model, data, c, h, k, want, {}) is None:
        return None
    net = model.net
    m = net.m
    fixed: dict[Row, int] = {}
    top = [0] * m
    rank = 0
    for p, (x, rc, rh, pc, ph) in enumerate(data):
        tab = net.tables[x]
        r = tab.row_index(top)
        orig = tab.rows[r]
        if r not in (rc, rh):
            top[x] = orig
            continue
        fixed[(x, r)] = orig
        if _cheapest(model, data, c, h, k, want, fixed) is None:
            fixed[(x, r)] = orig ^ 1
            rank |= 1 << (m - 1 - p)
        top[x] = fixed[(x, r)]
    _, rows = _cheapest(model, data, c, h, k, want, fixed)
    return rank * model.dist_scale, rows


def approved_set(model: VoterModel, k: int, rows: Sequence[Row] = ()) -> list[Candidate]:
    net = flip_rows(model.net, rows) if rows else model.net
    return top_k(net, min(k, 2 ** model.m))


def approves(model: VoterModel, k: int, c: Sequence[int]) -> bool:
    return rank_of(model.net, c) < k


# --- aggregation over voters ------------------------------------------------


def voter_options(
    model: VoterModel, k: int, c: Sequence[int], h: Sequence[int], negative: bool
) -> list[tuple[int, int, tuple[Row, ...]]]:
    """``(score gap contribution, cost, rows)`` for every reachable approval pair."""
    ci, hi = approves(model, k, c), approves(model, k, h)
    out = []
    for want in ((1, 0), (1, 1), (0, 0), (0, 1)):
        if negative and hi and not want[1]:
            continue
        if want == (ci, hi):
            found = (0, ())
        else:
            found = state_cost(model, k, c, h, want)
        if found is None:
            continue
        cost, rows = found
        out.append((model.weight * (want[0] - want[1]), cost * model.factor, rows))
    return out


def min_cost_gap(options: Sequence[Sequence[tuple[int, int, tuple]]], strict: bool = True):
    """Choose one option per voter so the summed gap is positive (or non-negative
    when ``strict`` is false) at minimum cost.  Returns ``(cost, picks)`` or ``None``."""
    frontier: dict[int, tuple[int, tuple[int, ...]]] = {0: (0, ())}
    for opts in options:
        nxt: dict[int, tuple[int, tuple[int, ...]]] = {}
        for gap, (cost, picks) in frontier.items():
            for idx, (g, c, rows) in enumerate(opts):
                key = gap + g
                cand = (cost + c, picks + (idx,))
                if key not in nxt or cand < nxt[key]:
                    nxt[key] = cand
        frontier = nxt
    best = None
    for gap, cand in frontier.items():
        if gap > 0 or (not strict and gap >= 0):
            if best is None or cand < best:
                best = cand
    return best


def best_target(
    models: Sequence[VoterModel],
    k: int,
    h: Sequence[int],
    targets,
    negative: bool,
    strict: bool = True,
):
    """Cheapest way to make some target outscore ``h``.

    Returns ``(cost, {voter: rows}, target)`` or ``None``.
    """
    best = None
    for c in sorted(set(targets)):
        if tuple(c) == tuple(h):
            continue
        options = [voter_options(mod, k, c, h, negative) for mod in models]
        found = min_cost_gap(options, strict)
        if found is None:
            continue
        cost, picks = found
        if best is None or cost < best[0]:
            plan = {i: options[i][p][2] for i, p in enumerate(picks) if options[i][p][2]}
            best = (cost, plan, tuple(c))
    return best


def complement(c: Sequence[int]) -> Candidate:
    return tuple(1 - b for b in c)


def hated_block(model: VoterModel, k: int, h: Sequence[int]) -> list[Candidate]:
    """Candidates agreeing with ``h`` on all but the last ``ceil(log2 k)`` positions."""
    order = model.net.order
    width = min((k - 1).bit_length(), model.m)
    free = order[model.m - width:] if width else ()
    out = []
    for mask in range(2 ** len(free)):
        c = list(h)
        for t, x in enumerate(free):
            c[x] = (mask >> t) & 1
        out.append(tuple(c))
    return out


def single_flip_entrants(model: VoterModel, k: int) -> set[Candidate]:
    """Candidates the voter approves after flipping any one legal cp-statement."""
    out: set[Candidate] = set()
    for row in model.net.all_rows():
        if model.flippable[row[0]]:
            out.update(approved_set(model, k, (row,)))
    return out
