"""Winner determination for one-step k-approval (plurality, veto, efficient k) and
sequential majority over profiles of CP-nets."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

from .cpnet import (
    Candidate,
    CPNet,
    Profile,
    all_candidates,
    candidate_at_rank,
    check_o_legal,
    rank_of,
    require_order,
    top_candidate,
    top_k,
)

Pattern = tuple[Optional[int], ...]

DEFAULT_K_CAP = 4096
SM_TIE_BIT = 1

RULES = ("op", "ov", "ok", "sm")
REGIMES = ("poly", "pow2")


class RuleError(ValueError):
    """Raised when a rule's preconditions (orders, O-legality, k) do not hold."""


@dataclass(frozen=True)
class VotingRule:
    tag: str
    k: int = 1
    regime: str = "poly"

    def __post_init__(self):
        if self.tag not in RULES:
            raise RuleError(f"unknown voting rule {self.tag!r}")
        if self.regime not in REGIMES:
            raise RuleError(f"unknown regime {self.regime!r}")
        if self.k < 1:
            raise RuleError("k must be positive")
        if self.regime == "pow2" and self.k & (self.k - 1):
            raise RuleError(f"k={self.k} is not a power of two")

    @property
    def approval(self) -> bool:
        return self.tag != "sm"

    def approvals(self, m: int) -> int:
        """Number of candidates each voter approves."""
        if self.tag == "op":
            return 1
        if self.tag == "ov":
            return 2 ** m - 1
        return min(self.k, 2 ** m)

    def __str__(self):
        if self.tag == "ok":
            return f"ok(k={self.k},{self.regime})"
        return self.tag


OP = VotingRule("op")
OV = VotingRule("ov")
SM = VotingRule("sm")


@dataclass(frozen=True)
class WinnerSet:
    """Scores of all candidates, stored sparsely.

    Candidates matching one of ``patterns`` get that pattern's score, every other
    candidate gets ``default_score``.  Patterns carry ``None`` exactly on the
    ``wildcards`` issues.
    """

    m: int
    patterns: dict[Pattern, int] = field(default_factory=dict)
    default_score: int = 0
    wildcards: tuple[int, ...] = ()

    def _key(self, c: Sequence[int]) -> Pattern:
        if not self.wildcards:
            return tuple(c)
        return tuple(None if i in self.wildcards else b for i, b in enumerate(c))

    def score(self, c: Sequence[int]) -> int:
        return self.patterns.get(self._key(c), self.default_score)

    @property
    def uncovered(self) -> int:
        return 2 ** self.m - len(self.patterns) * 2 ** len(self.wildcards)

    @property
    def best(self) -> int:
        scores = list(self.patterns.values())
        if self.uncovered:
            scores.append(self.default_score)
        return max(scores)

    def __contains__(self, c: Sequence[int]) -> bool:
        return self.score(c) == self.best

    def winning_patterns(self) -> list[Pattern]:
        best = self.best
        return sorted(p for p, s in self.patterns.items() if s == best)

    @property
    def size(self) -> int:
        n = len(self.winning_patterns()) * 2 ** len(self.wildcards)
        if self.uncovered and self.default_score == self.best:
            n += self.uncovered
        return n

    def explicit(self) -> list[Candidate]:
        """All winners, enumerated (exponential in m; for small instances)."""
        return [c for c in all_candidates(self.m) if c in self]

    def unique_winner(self) -> Optional[Candidate]:
        if self.size != 1:
            return None
        pats = self.winning_patterns()
        if pats and not self.wildcards:
            return tuple(pats[0])
        return self.explicit()[0]


def winners_op(profile: Profile) -> WinnerSet:
    scores: dict[Pattern, int] = {}
    for v in profile.voters:
        top = top_candidate(v.net)
        scores[top] = scores.get(top, 0) + v.weight
    return WinnerSet(profile.m, scores, 0)


def vetoed(net: CPNet) -> Candidate:
    return candidate_at_rank(net, 2 ** net.m - 1)


def winners_ov(profile: Profile) -> WinnerSet:
    total = profile.total_weight
    scores: dict[Pattern, int] = {}
    for v in profile.voters:
        c = vetoed(v.net)
        scores[c] = scores.get(c, total) - v.weight
    return WinnerSet(profile.m, scores, total)


def winners_okeff(
    profile: Profile,
    k: int,
    regime: str = "poly",
    order: Optional[Sequence[int]] = None,
    k_cap: int = DEFAULT_K_CAP,
) -> WinnerSet:
    m = profile.m
    if regime == "pow2":
        if k & (k - 1) or k < 1:
            raise RuleError(f"k={k} is not a power of two")
        if order is None or not check_o_legal(profile, order):
            raise RuleError("the power-of-two regime needs a global order the profile is legal for")
        j = min(k.bit_length() - 1, m)
        wild = tuple(sorted(order[m - j:]))
        scores: dict[Pattern, int] = {}
        for v in profile.voters:
            top = top_candidate(v.net)
            key = tuple(None if i in wild else b for i, b in enumerate(top))
            scores[key] = scores.get(key, 0) + v.weight
        return WinnerSet(m, scores, 0, wild)
    if regime != "poly":
        raise RuleError(f"unknown regime {regime!r}")
    if k > k_cap:
        raise RuleError(f"k={k} exceeds the enumeration cap {k_cap}")
    scores = {}
    for v in profile.voters:
        require_order(v.net)
        for c in top_k(v.net, k):
            scores[c] = scores.get(c, 0) + v.weight
    return WinnerSet(m, scores, 0)


def winner_sm(profile: Profile, order: Sequence[int], tie_bit: int = SM_TIE_BIT) -> Candidate:
    """Issue-by-issue weighted majority along ``order``; even splits go to ``tie_bit``."""
    if not check_o_legal(profile, order):
        raise RuleError("profile is not legal for the given order")
    c = [0] * profile.m
    for issue in order:
        ones = zeros = 0
        for v in profile.voters:
            if v.net.preferred(issue, c):
                ones += v.weight
            else:
                zeros += v.weight
        c[issue] = 1 if ones > zeros else 0 if zeros > ones else tie_bit
    return tuple(c)


def approves(net: CPNet, k: int, h: Sequence[int]) -> bool:
    return rank_of(net, h) < k


def winners(profile: Profile, rule: VotingRule, order: Optional[Sequence[int]] = None) -> WinnerSet:
    """Co-winner set under ``rule``; SM yields a single winner with score equal to total weight."""
    if rule.tag == "op":
        return winners_op(profile)
    if rule.tag == "ov":
        return winners_ov(profile)
    if rule.tag == "ok":
        return winners_okeff(profile, rule.k, rule.regime, order)
    if order is None:
        raise RuleError("sequential majority needs a global order")
    return WinnerSet(profile.m, {winner_sm(profile, order): profile.total_weight}, 0)


def is_winner(
    profile: Profile,
    rule: VotingRule,
    h: Sequence[int],
    order: Optional[Sequence[int]] = None,
    unique: bool = False,
) -> bool:
    """Whether ``h`` wins; with ``unique`` it must be the only winner."""
    ws = winners(profile, rule, order)
    if h not in ws:
        return False
    return ws.size == 1 if unique else True
