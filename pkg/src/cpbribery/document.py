"""Text formats: bribery instance documents (``.cpb``), DIMACS CNF and knapsack files.

A ``.cpb`` document::

    issues:
      main: fish meat
    voter Alice:
      weight: 1
      cost: 1
      order: main
      main: fish > meat
    query:
      rule: op
      ...

Table rows read ``issue: best > worst`` or ``issue | parent=value ...: best > worst``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Optional

from .bribery import ACTIONS, SCHEMES, SM_NEGATIVE_MODES, BriberyInstance, InstanceError
from .cpnet import CPNet, CPNetError, CPTable, IssueSet, Profile, Voter, validate_cpnet
from .sources import CNFFormula, KnapsackInstance, SourceError
from .voting import REGIMES, RULES, RuleError, VotingRule

NAME = re.compile(r"^[A-Za-z0-9_.*+~-]+$")
QUERY_KEYS = (
    "rule", "k", "regime", "action", "scheme", "budget", "hated",
    "negative", "unique", "sm-negative", "order",
)


class DocumentError(ValueError):
    """Malformed input; carries the offending line number when there is one."""

    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line else message)


@dataclass
class Document:
    profile: Profile
    instance: Optional[BriberyInstance] = None


def _int(text: str, line: int, what: str) -> int:
    if not re.fullmatch(r"-?\d+", text.strip()):
        raise DocumentError(f"{what} must be a decimal integer, got {text.strip()!r}", line)
    return int(text)


def _flag(text: str, line: int, what: str) -> bool:
    value = text.strip()
    if value not in ("yes", "no"):
        raise DocumentError(f"{what} must be yes or no", line)
    return value == "yes"


def _lines(text: str):
    for number, raw in enumerate(text.splitlines(), 1):
        stripped = raw.split("#", 1)[0].rstrip()
        if stripped.strip():
            yield number, raw[: len(raw) - len(raw.lstrip())], stripped.strip()


def _sections(text: str):
    """Group indented lines under their unindented header."""
    sections = []
    for number, indent, body in _lines(text):
        if not indent:
            if not body.endswith(":"):
                raise DocumentError(f"expected a section header ending in ':', got {body!r}", number)
            sections.append((number, body[:-1].strip(), []))
        else:
            if not sections:
                raise DocumentError("indented line outside any section", number)
            sections[-1][2].append((number, body))
    return sections


def _split(body: str, line: int) -> tuple[str, str]:
    if ":" not in body:
        raise DocumentError(f"expected 'key: value', got {body!r}", line)
    key, value = body.split(":", 1)
    return key.strip(), value.strip()


def _parse_issues(entries) -> IssueSet:
    names, values = [], []
    for line, body in entries:
        name, rest = _split(body, line)
        pair = rest.split()
        if len(pair) != 2 or pair[0] == pair[1]:
            raise DocumentError(f"issue {name!r} needs two distinct values", line)
        for token in [name, *pair]:
            if not NAME.match(token):
                raise DocumentError(f"bad name {token!r}", line)
        if name in names:
            raise DocumentError(f"issue {name!r} declared twice", line)
        names.append(name)
        values.append(tuple(pair))
    if not names:
        raise DocumentError("no issues declared")
    return IssueSet(tuple(names), tuple(values))


def _issue(issues: IssueSet, name: str, line: int) -> int:
    try:
        return issues.index(name)
    except CPNetError:
        raise DocumentError(f"unknown issue {name!r}", line) from None


def _value(issues: IssueSet, issue: int, name: str, line: int) -> int:
    try:
        return issues.bit_of(issue, name)
    except CPNetError:
        raise DocumentError(
            f"unknown value {name!r} for issue {issues.names[issue]!r}", line
        ) from None


def _row_key(issues: IssueSet, key: str, line: int):
    """``issue`` or ``issue | p=v q=w`` -> (issue, parents, parent bits)."""
    head, _, cond = key.partition("|")
    x = _issue(issues, head.strip(), line)
    parents, bits = [], []
    for item in cond.split():
        if "=" not in item:
            raise DocumentError(f"expected parent=value, got {item!r}", line)
        p_name, v_name = item.split("=", 1)
        p = _issue(issues, p_name, line)
        if p in parents:
            raise DocumentError(f"parent {p_name!r} repeated", line)
        parents.append(p)
        bits.append(_value(issues, p, v_name, line))
    return x, tuple(parents), tuple(bits)


def _row_index(bits) -> int:
    r = 0
    for b in bits:
        r = (r << 1) | b
    return r


def _parse_voter(name: str, header_line: int, entries, issues: IssueSet):
    weight, factor, order = 1, 1, None
    rows: dict[int, tuple[tuple[int, ...], dict[int, int], int]] = {}
    costs: dict = {}
    for line, body in entries:
        key, value = _split(body, line)
        if key == "weight":
            weight = _int(value, line, "weight")
        elif key == "cost":
            factor = _int(value, line, "cost")
        elif key == "order":
            order = tuple(_issue(issues, t, line) for t in value.split())
        elif key.startswith("flip-cost "):
            x, parents, bits = _row_key(issues, key[len("flip-cost "):], line)
            costs[(x, parents, bits)] = (_int(value, line, "flip cost"), line)
        else:
            x, parents, bits = _row_key(issues, key, line)
            prefs = [t.strip() for t in value.split(">")]
            if len(prefs) != 2:
                raise DocumentError("a cp-statement reads 'best > worst'", line)
            best = _value(issues, x, prefs[0], line)
            if _value(issues, x, prefs[1], line) == best:
                raise DocumentError("a cp-statement must order both values", line)
            known = rows.setdefault(x, (parents, {}, line))
            if known[0] != parents:
                raise DocumentError(
                    f"voter {name!r}: rows of issue {issues.names[x]!r} use different parents", line
                )
            r = _row_index(bits)
            if r in known[1]:
                raise DocumentError(
                    f"voter {name!r}: duplicate row for issue {issues.names[x]!r}", line
                )
            known[1][r] = best
    tables = []
    for x in range(issues.m):
        if x not in rows:
            raise DocumentError(
                f"voter {name!r}: no cp-statement for issue {issues.names[x]!r}", header_line
            )
        parents, table, line = rows[x]
        missing = [r for r in range(2 ** len(parents)) if r not in table]
        if missing:
            raise DocumentError(
                f"voter {name!r}: table of issue {issues.names[x]!r} misses "
                f"{len(missing)} of {2 ** len(parents)} rows",
                line,
            )
        tables.append(CPTable(x, parents, tuple(table[r] for r in range(len(table)))))
    net = CPNet(issues, tuple(tables), order)
    problems = validate_cpnet(net)
    if problems:
        raise DocumentError(f"voter {name!r}: " + "; ".join(problems), header_line)
    flip_costs = {}
    for (x, parents, bits), (c, line) in costs.items():
        if parents != tables[x].parents:
            raise DocumentError(f"voter {name!r}: flip cost row does not match the table", line)
        flip_costs[(x, _row_index(bits))] = c
    try:
        voter = Voter(net, weight, factor, name)
    except CPNetError as e:
        raise DocumentError(f"voter {name!r}: {e}", header_line) from None
    if weight < 1 or factor < 0:
        raise DocumentError(f"voter {name!r}: weight must be positive, cost non-negative", header_line)
    return voter, flip_costs


def _candidate(issues: IssueSet, text: str, line: int):
    bits: dict[int, int] = {}
    for item in text.split():
        if "=" not in item:
            raise DocumentError(f"expected issue=value, got {item!r}", line)
        i_name, v_name = item.split("=", 1)
        x = _issue(issues, i_name, line)
        if x in bits:
            raise DocumentError(f"issue {i_name!r} assigned twice", line)
        bits[x] = _value(issues, x, v_name, line)
    if len(bits) != issues.m:
        raise DocumentError("the hated candidate must assign every issue", line)
    return tuple(bits[x] for x in range(issues.m))


def _parse_query(entries, issues: IssueSet, profile: Profile, costs) -> BriberyInstance:
    fields: dict[str, tuple[str, int]] = {}
    for line, body in entries:
        key, value = _split(body, line)
        if key not in QUERY_KEYS:
            raise DocumentError(f"unknown query field {key!r}", line)
        if key in fields:
            raise DocumentError(f"query field {key!r} repeated", line)
        fields[key] = (value, line)
    for key in ("rule", "action", "scheme", "budget", "hated"):
        if key not in fields:
            raise DocumentError(f"query misses the {key!r} field")

    def get(key, default=None):
        return fields[key] if key in fields else (default, None)

    rule_tag, line = get("rule")
    if rule_tag not in RULES:
        raise DocumentError(f"unknown rule {rule_tag!r}", line)
    k_text, k_line = get("k", "1")
    regime, r_line = get("regime", "poly")
    if regime not in REGIMES:
        raise DocumentError(f"unknown regime {regime!r}", r_line)
    try:
        rule = VotingRule(rule_tag, _int(k_text, k_line, "k"), regime)
    except RuleError as e:
        raise DocumentError(str(e), k_line) from None
    action, line = get("action")
    if action not in ACTIONS:
        raise DocumentError(f"unknown bribery action {action!r}", line)
    scheme, line = get("scheme")
    if scheme not in SCHEMES:
        raise DocumentError(f"unknown cost scheme {scheme!r}", line)
    budget = _int(*get("budget"), "budget")
    hated = _candidate(issues, *get("hated"))
    negative = _flag(*get("negative", "no"), "negative")
    unique = _flag(*get("unique", "no"), "unique")
    sm_mode, line = get("sm-negative", "top")
    if sm_mode not in SM_NEGATIVE_MODES:
        raise DocumentError(f"unknown sm-negative mode {sm_mode!r}", line)
    order = None
    if "order" in fields:
        text, line = fields["order"]
        order = tuple(_issue(issues, t, line) for t in text.split())
        if sorted(order) != list(range(issues.m)):
            raise DocumentError("the global order must list every issue once", line)
    flip_costs = tuple(costs) if any(costs) else None
    try:
        inst = BriberyInstance(
            profile, rule, action, scheme, budget, hated, negative, order,
            flip_costs, unique, sm_mode,
        )
    except InstanceError as e:
        raise DocumentError(str(e)) from None
    problems = inst.validate()
    if problems:
        raise DocumentError("; ".join(problems))
    return inst


def parse_document(text: str) -> Document:
    sections = _sections(text)
    if not sections or sections[0][1] != "issues":
        raise DocumentError("a document starts with the 'issues:' section", sections[0][0] if sections else None)
    issues = _parse_issues(sections[0][2])
    voters, costs, names = [], [], set()
    query = None
    for line, header, entries in sections[1:]:
        if header.startswith("voter "):
            if query is not None:
                raise DocumentError("voters must precede the query", line)
            name = header[len("voter "):].strip()
            if not NAME.match(name) or name in names:
                raise DocumentError(f"bad or repeated voter name {name!r}", line)
            names.add(name)
            voter, flip_costs = _parse_voter(name, line, entries, issues)
            voters.append(voter)
            costs.append(flip_costs)
        elif header == "query":
            if query is not None:
                raise DocumentError("second query section", line)
            query = entries
        else:
            raise DocumentError(f"unknown section {header!r}", line)
    profile = Profile(issues, tuple(voters))
    instance = None if query is None else _parse_query(query, issues, profile, costs)
    return Document(profile, instance)


def parse_instance(text: str) -> BriberyInstance:
    doc = parse_document(text)
    if doc.instance is None:
        raise DocumentError("the document has no query section")
    return doc.instance


# --- writing -----------------------------------------------------------------


def row_text(issues: IssueSet, table: CPTable, r: int) -> str:
    head = issues.names[table.issue]
    if not table.parents:
        return head
    assign = table.parent_assignment(r)
    cond = " ".join(f"{issues.names[p]}={issues.value_name(p, assign[p])}" for p in table.parents)
    return f"{head} | {cond}"


def serialize_profile(profile: Profile, flip_costs=None) -> list[str]:
    issues = profile.issues
    out = ["issues:"]
    for x, name in enumerate(issues.names):
        out.append(f"  {name}: {issues.values[x][0]} {issues.values[x][1]}")
    for i, v in enumerate(profile.voters):
        out.append(f"voter {v.name or f'v{i + 1}'}:")
        out.append(f"  weight: {v.weight}")
        out.append(f"  cost: {v.cost_factor}")
        if v.net.order is not None:
            out.append("  order: " + " ".join(issues.names[x] for x in v.net.order))
        for t in v.net.tables:
            for r in reversed(range(len(t.rows))):
                best = t.rows[r]
                pair = (issues.value_name(t.issue, best), issues.value_name(t.issue, 1 - best))
                out.append(f"  {row_text(issues, t, r)}: {pair[0]} > {pair[1]}")
        if flip_costs is not None:
            for t in v.net.tables:
                for r in reversed(range(len(t.rows))):
                    out.append(f"  flip-cost {row_text(issues, t, r)}: {flip_costs[i][(t.issue, r)]}")
    return out


def serialize_instance(inst: BriberyInstance) -> str:
    profile = inst.profile
    names = [v.name for v in profile.voters]
    if any(not n for n in names) or len(set(names)) != len(names):
        voters = tuple(
            Voter(v.net, v.weight, v.cost_factor, f"v{i + 1}") for i, v in enumerate(profile.voters)
        )
        profile = Profile(profile.issues, voters)
    issues = profile.issues
    out = serialize_profile(profile, inst.flip_costs)
    rule = inst.rule
    out += [
        "query:",
        f"  rule: {rule.tag}",
        f"  k: {rule.k}",
        f"  regime: {rule.regime}",
        f"  action: {inst.action}",
        f"  scheme: {inst.scheme}",
        f"  budget: {inst.budget}",
        "  hated: " + " ".join(
            f"{issues.names[x]}={issues.value_name(x, b)}" for x, b in enumerate(inst.hated)
        ),
        f"  negative: {'yes' if inst.negative else 'no'}",
        f"  unique: {'yes' if inst.unique else 'no'}",
        f"  sm-negative: {inst.sm_negative}",
    ]
    if inst.global_order is not None:
        out.append("  order: " + " ".join(issues.names[x] for x in inst.global_order))
    return "\n".join(out) + "\n"


# --- DIMACS and knapsack ----------------------------------------------------------


def parse_dimacs(text: str) -> CNFFormula:
    """Three-literal DIMACS CNF; ``c`` lines are comments."""
    variables = None
    declared = None
    literals: list[int] = []
    clauses = []
    for number, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("c") or line.startswith("%"):
            continue
        if line.startswith("p"):
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise DocumentError("expected 'p cnf VARIABLES CLAUSES'", number)
            variables = _int(parts[2], number, "variable count")
            declared = _int(parts[3], number, "clause count")
            continue
        if variables is None:
            raise DocumentError("clause before the 'p cnf' header", number)
        for token in line.split():
            lit = _int(token, number, "literal")
            if lit == 0:
                if len(literals) != 3:
                    raise DocumentError(f"clause has {len(literals)} literals, expected 3", number)
                clauses.append(tuple(literals))
                literals = []
            else:
                literals.append(lit)
    if variables is None:
        raise DocumentError("missing 'p cnf' header")
    if literals:
        raise DocumentError("last clause is not terminated by 0")
    if declared is not None and declared != len(clauses):
        raise DocumentError(f"header declares {declared} clauses, found {len(clauses)}")
    try:
        return CNFFormula(variables, tuple(clauses))
    except SourceError as e:
        raise DocumentError(str(e)) from None


def parse_knapsack(text: str) -> KnapsackInstance:
    """Header ``target budget`` then one ``weight value`` pair per line."""
    rows = []
    for number, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise DocumentError("expected two integers", number)
        rows.append(tuple(_int(p, number, "entry") for p in parts))
    if not rows:
        raise DocumentError("missing the 'target budget' header")
    (target, budget), objects = rows[0], rows[1:]
    try:
        return KnapsackInstance(tuple(objects), target, budget)
    except SourceError as e:
        raise DocumentError(str(e)) from None
