"""Source problems of the hardness reductions and their own exact solvers.

These solvers share no code with the bribery search so the two can check each other.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field


class SourceError(ValueError):
    pass


@dataclass(frozen=True)
class CNFFormula:
    """Clauses of exactly three distinct variables.

    Literals are signed 1-based variable numbers. NAE formulas use positive
    literals only.
    """

    variables: int
    clauses: tuple[tuple[int, int, int], ...] = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "clauses", tuple(tuple(c) for c in self.clauses))
        for clause in self.clauses:
            if len(clause) != 3:
                raise SourceError(f"clause {clause} does not have three literals")
            names = [abs(lit) for lit in clause]
            if len(set(names)) != 3:
                raise SourceError(f"clause {clause} repeats a variable")
            if any(lit == 0 or abs(lit) > self.variables for lit in clause):
                raise SourceError(f"clause {clause} names an unknown variable")

    @property
    def positive(self) -> bool:
        return all(lit > 0 for clause in self.clauses for lit in clause)


@dataclass(frozen=True)
class KnapsackInstance:
    """Pick objects of total weight at most ``budget`` and total value at least ``target``."""

    objects: tuple[tuple[int, int], ...]  # (weight, value)
    target: int
    budget: int

    def __post_init__(self):
        object.__setattr__(self, "objects", tuple(tuple(o) for o in self.objects))
        numbers = [x for o in self.objects for x in o] + [self.target, self.budget]
        if any(not isinstance(x, int) or x < 0 for x in numbers):
            raise SourceError("knapsack entries must be non-negative integers")

    @property
    def total_value(self) -> int:
        return sum(v for _, v in self.objects)


def _assignments(n: int):
    return itertools.product((False, True), repeat=n)


def nae_solutions(formula: CNFFormula) -> list[tuple[bool, ...]]:
    """Assignments under which no clause has all three variables equal."""
    out = []
    for a in _assignments(formula.variables):
        if all(len({a[abs(lit) - 1] for lit in clause}) == 2 for clause in formula.clauses):
            out.append(a)
    return out


def nae_satisfiable(formula: CNFFormula) -> bool:
    return bool(nae_solutions(formula))


def sat_satisfiable(formula: CNFFormula) -> bool:
    for a in _assignments(formula.variables):
        if all(any(a[abs(lit) - 1] == (lit > 0) for lit in clause) for clause in formula.clauses):
            return True
    return False


def knapsack_best_value(inst: KnapsackInstance) -> int:
    """Largest value reachable within the weight budget (0/1 table over weights)."""
    best = [0] * (inst.budget + 1)
    for w, v in inst.objects:
        for cap in range(inst.budget, w - 1, -1):
            best[cap] = max(best[cap], best[cap - w] + v)
    return best[inst.budget]


def knapsack_solvable(inst: KnapsackInstance) -> bool:
    return knapsack_best_value(inst) >= inst.target
