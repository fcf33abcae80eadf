"""Acyclic binary CP-nets, profiles and the lexicographic order they induce.

Candidates are tuples of bits indexed by issue; bit 1 stands for the first
value of an issue's domain (``x_i``) and bit 0 for the second (``x̄_i``).
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from functools import cached_property
from typing import Iterable, Iterator, Optional, Sequence

Candidate = tuple[int, ...]
Row = tuple[int, int]  # (issue, row index)

DEFAULT_MAX_PARENTS = 5


class CPNetError(ValueError):
    """Raised when a CP-net or profile violates its structural invariants."""


class MissingOrderError(CPNetError):
    """Raised when a rank query is made against a net without an issue order."""


@dataclass(frozen=True)
class IssueSet:
    names: tuple[str, ...]
    values: tuple[tuple[str, str], ...] = ()

    def __post_init__(self):
        if not self.names:
            raise CPNetError("an issue set needs at least one issue")
        if len(set(self.names)) != len(self.names):
            raise CPNetError("issue names must be unique")
        if not self.values:
            object.__setattr__(
                self, "values", tuple((f"{n}", f"~{n}") for n in self.names)
            )
        if len(self.values) != len(self.names):
            raise CPNetError("one value pair is required per issue")

    @property
    def m(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise CPNetError(f"unknown issue {name!r}") from None

    def value_name(self, issue: int, bit: int) -> str:
        return self.values[issue][0 if bit else 1]

    def bit_of(self, issue: int, value: str) -> int:
        pair = self.values[issue]
        if value == pair[0]:
            return 1
        if value == pair[1]:
            return 0
        raise CPNetError(f"unknown value {value!r} for issue {self.names[issue]!r}")

    def format(self, c: Sequence[Optional[int]]) -> str:
        parts = []
        for i, bit in enumerate(c):
            parts.append("*" if bit is None else self.value_name(i, bit))
        return "(" + ",".join(parts) + ")"


@dataclass(frozen=True)
class CPTable:
    """Conditional preference table of one issue.

    ``rows[r]`` is the preferred bit under parent assignment ``r``, where the
    first parent is the most significant bit of ``r``.
    """

    issue: int
    parents: tuple[int, ...]
    rows: tuple[int, ...]

    def row_index(self, c: Sequence[int]) -> int:
        r = 0
        for p in self.parents:
            r = (r << 1) | c[p]
        return r

    def parent_assignment(self, r: int) -> dict[int, int]:
        k = len(self.parents)
        return {p: (r >> (k - 1 - t)) & 1 for t, p in enumerate(self.parents)}

    @property
    def independent(self) -> bool:
        return not self.parents


@dataclass(frozen=True)
class CPNet:
    issues: IssueSet
    tables: tuple[CPTable, ...]
    order: Optional[tuple[int, ...]] = None

    @property
    def m(self) -> int:
        return self.issues.m

    @cached_property
    def topological(self) -> tuple[int, ...]:
        if self.order is not None and not order_errors(self, self.order):
            return self.order
        seq = _topological_sort(self)
        if seq is None:
            raise CPNetError("dependency graph is cyclic")
        return seq

    @cached_property
    def positions(self) -> dict[int, int]:
        return {issue: pos for pos, issue in enumerate(require_order(self))}

    def preferred(self, issue: int, c: Sequence[int]) -> int:
        t = self.tables[issue]
        return t.rows[t.row_index(c)]

    def row_of(self, issue: int, c: Sequence[int]) -> Row:
        return (issue, self.tables[issue].row_index(c))

    def all_rows(self) -> Iterator[Row]:
        for t in self.tables:
            for r in range(len(t.rows)):
                yield (t.issue, r)

    def with_order(self, order: Optional[Sequence[int]]) -> "CPNet":
        return replace(self, order=None if order is None else tuple(order))


def _topological_sort(net: CPNet) -> Optional[tuple[int, ...]]:
    m = net.m
    indeg = [0] * m
    children: list[list[int]] = [[] for _ in range(m)]
    for t in net.tables:
        for p in set(t.parents):
            if 0 <= p < m:
                indeg[t.issue] += 1
                children[p].append(t.issue)
    ready = [i for i in range(m) if indeg[i] == 0]
    seq = []
    while ready:
        i = ready.pop(0)
        seq.append(i)
        for ch in children[i]:
            indeg[ch] -= 1
            if indeg[ch] == 0:
                ready.append(ch)
    return tuple(seq) if len(seq) == m else None


def order_errors(net: CPNet, order: Sequence[int]) -> list[str]:
    if sorted(order) != list(range(net.m)):
        return ["issue order is not a permutation of the issues"]
    pos = {issue: k for k, issue in enumerate(order)}
    errors = []
    for t in net.tables:
        for p in t.parents:
            if 0 <= p < net.m and pos[p] > pos[t.issue]:
                errors.append(
                    f"issue {net.issues.names[t.issue]!r} precedes its parent "
                    f"{net.issues.names[p]!r} in the issue order"
                )
    return errors


def validate_cpnet(net: CPNet, p_max: int = DEFAULT_MAX_PARENTS) -> list[str]:
    """Return a list of structural problems; an empty list means the net is valid."""
    errors = []
    names = net.issues.names
    if len(net.tables) != net.m:
        errors.append(f"expected {net.m} tables, found {len(net.tables)}")
    for k, t in enumerate(net.tables):
        label = names[t.issue] if 0 <= t.issue < net.m else str(t.issue)
        if t.issue != k:
            errors.append(f"table {k} is labelled with issue {label!r}")
        if t.issue in t.parents:
            errors.append(f"issue {label!r} lists itself as a parent")
        if len(set(t.parents)) != len(t.parents):
            errors.append(f"issue {label!r} has duplicate parents")
        if any(not 0 <= p < net.m for p in t.parents):
            errors.append(f"issue {label!r} has an unknown parent")
        if len(t.parents) > p_max:
            errors.append(
                f"issue {label!r} has {len(t.parents)} parents (bound is {p_max})"
            )
        if len(t.rows) != 2 ** len(t.parents):
            errors.append(
                f"table of issue {label!r} has {len(t.rows)} rows, "
                f"expected {2 ** len(t.parents)}"
            )
        if any(b not in (0, 1) for b in t.rows):
            errors.append(f"table of issue {label!r} has a non-binary entry")
    if not errors and _topological_sort(net) is None:
        errors.append("dependency graph is cyclic")
    if not errors and net.order is not None:
        errors.extend(order_errors(net, net.order))
    return errors


def require_valid(net: CPNet, p_max: int = DEFAULT_MAX_PARENTS) -> None:
    errors = validate_cpnet(net, p_max)
    if errors:
        raise CPNetError("; ".join(errors))


def require_order(net: CPNet) -> tuple[int, ...]:
    if net.order is None:
        raise MissingOrderError("this query needs an issue order for the voter")
    return net.order


def make_net(
    issues: IssueSet,
    tables: Iterable[tuple[Sequence[int], Sequence[int]]],
    order: Optional[Sequence[int]] = None,
) -> CPNet:
    """Build a net from ``(parents, rows)`` pairs given in issue order."""
    built = tuple(
        CPTable(i, tuple(parents), tuple(rows))
        for i, (parents, rows) in enumerate(tables)
    )
    return CPNet(issues, built, None if order is None else tuple(order))


def independent_net(issues: IssueSet, prefs: Sequence[int], order=None) -> CPNet:
    return make_net(issues, [((), (b,)) for b in prefs], order)


def top_candidate(net: CPNet) -> Candidate:
    c = [0] * net.m
    for issue in net.topological:
        c[issue] = net.preferred(issue, c)
    return tuple(c)


def rank_of(net: CPNet, c: Sequence[int]) -> int:
    """Rank of ``c`` in the voter's lexicographic order; the top candidate has rank 0."""
    order = require_order(net)
    m = net.m
    rank = 0
    for pos, issue in enumerate(order):
        if c[issue] != net.preferred(issue, c):
            rank |= 1 << (m - 1 - pos)
    return rank


def candidate_at_rank(net: CPNet, r: int) -> Candidate:
    order = require_order(net)
    m = net.m
    if not 0 <= r < 2 ** m:
        raise ValueError(f"rank {r} out of range for {m} issues")
    c = [0] * m
    for pos, issue in enumerate(order):
        flip = (r >> (m - 1 - pos)) & 1
        c[issue] = net.preferred(issue, c) ^ flip
    return tuple(c)


def next_best(net: CPNet, c: Sequence[int]) -> Optional[Candidate]:
    r = rank_of(net, c)
    if r + 1 >= 2 ** net.m:
        return None
    return candidate_at_rank(net, r + 1)


def top_k(net: CPNet, k: int) -> list[Candidate]:
    """The first ``k`` candidates of the voter, best first, by chained successor."""
    out = []
    c: Optional[Candidate] = candidate_at_rank(net, 0) if k > 0 else None
    while c is not None and len(out) < k:
        out.append(c)
        c = next_best(net, c)
    return out


def level_of(net: CPNet, issue: int) -> int:
    return _levels(net)[issue]


def levels_count(net: CPNet) -> int:
    return max(_levels(net))


def _levels(net: CPNet) -> list[int]:
    level = [0] * net.m
    for issue in net.topological:
        parents = net.tables[issue].parents
        level[issue] = 1 + max((level[p] for p in parents), default=0)
    return level


def flip_rows(net: CPNet, rows: Iterable[Row]) -> CPNet:
    """Return a copy of ``net`` with each listed cp-statement inverted."""
    by_issue: dict[int, set[int]] = {}
    for issue, r in rows:
        by_issue.setdefault(issue, set()).symmetric_difference_update({r})
    if not by_issue:
        return net
    tables = list(net.tables)
    for issue, rs in by_issue.items():
        t = tables[issue]
        if any(not 0 <= r < len(t.rows) for r in rs):
            raise CPNetError(f"row out of range for issue {net.issues.names[issue]!r}")
        tables[issue] = replace(
            t, rows=tuple(b ^ 1 if r in rs else b for r, b in enumerate(t.rows))
        )
    return replace(net, tables=tuple(tables))


def all_candidates(m: int) -> Iterator[Candidate]:
    for x in range(2 ** m):
        yield tuple((x >> (m - 1 - i)) & 1 for i in range(m))


@dataclass(frozen=True)
class Voter:
    net: CPNet
    weight: int = 1
    cost_factor: int = 1
    name: str = ""


@dataclass(frozen=True)
class Profile:
    issues: IssueSet
    voters: tuple[Voter, ...] = field(default_factory=tuple)

    def __post_init__(self):
        for v in self.voters:
            if v.net.issues != self.issues:
                raise CPNetError("all voters must share the profile's issue set")
            if v.weight < 1 or v.cost_factor < 0:
                raise CPNetError("weights must be positive and cost factors non-negative")

    @property
    def n(self) -> int:
        return len(self.voters)

    @property
    def m(self) -> int:
        return self.issues.m

    @property
    def nets(self) -> list[CPNet]:
        return [v.net for v in self.voters]

    @property
    def weighted(self) -> bool:
        return any(v.weight != 1 for v in self.voters)

    @property
    def total_weight(self) -> int:
        return sum(v.weight for v in self.voters)

    def with_nets(self, nets: Sequence[CPNet]) -> "Profile":
        return replace(
            self,
            voters=tuple(replace(v, net=net) for v, net in zip(self.voters, nets)),
        )


def check_o_legal(profile: Profile, order: Sequence[int]) -> bool:
    if sorted(order) != list(range(profile.m)):
        raise ValueError("order must be a permutation of the issues")
    return all(not order_errors(net, order) for net in profile.nets)


def validate_profile(profile: Profile, p_max: int = DEFAULT_MAX_PARENTS) -> list[str]:
    errors = []
    for i, v in enumerate(profile.voters):
        label = v.name or f"voter {i}"
        errors.extend(f"{label}: {e}" for e in validate_cpnet(v.net, p_max))
    return errors
