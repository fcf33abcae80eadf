"""Command line front end: ``cpbribery {validate,winners,bribe,oracle,margin,reduce}``.

Exit status 0 when a result was computed, 2 for unusable input, 3 when the
exhaustive search would exceed its limits.
"""

from __future__ import annotations

import argparse
import sys
from typing import Optional, Sequence

from .bribery import BriberyInstance, InstanceError
from .cpnet import CPNetError, IssueSet
from .document import (
    DocumentError,
    parse_dimacs,
    parse_document,
    parse_instance,
    parse_knapsack,
    row_text,
    serialize_instance,
    serialize_profile,
)
from .oracle import Limits, LimitsExceeded, SolveResult, brute_force_solve
from .reductions import (
    ReductionError,
    reduce_3sat_ok_eval,
    reduce_knapsack_op,
    reduce_knapsack_ov,
    reduce_knapsack_sm,
    reduce_nae3sat,
)
from .solvers import dispatch_solve, margin_of_victory
from .sources import SourceError
from .voting import RuleError, VotingRule, winners

INPUT_ERRORS = (DocumentError, InstanceError, RuleError, CPNetError, SourceError, ReductionError, OSError)
EXPLICIT_CAP = 4096


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _limits(args) -> Limits:
    base = Limits.from_env()
    return Limits(
        args.max_issues if args.max_issues is not None else base.max_issues,
        args.max_rows if args.max_rows is not None else base.max_rows,
        args.max_voters if args.max_voters is not None else base.max_voters,
    )


def _order(issues: IssueSet, text: Optional[str], fallback=None):
    if text is None:
        return fallback
    names = text.replace(">", " ").replace(",", " ").split()
    try:
        order = tuple(issues.index(n) for n in names)
    except CPNetError as e:
        raise DocumentError(str(e)) from None
    if sorted(order) != list(range(issues.m)):
        raise DocumentError("--order must list every issue once")
    return order


def _rule(args) -> VotingRule:
    return VotingRule(args.rule, args.k, args.regime)


def format_result(inst: BriberyInstance, result: SolveResult) -> str:
    lines = [f"decision: {'yes' if result.decision else 'no'}", f"method: {result.method}"]
    if result.decision:
        lines.append(f"cost: {result.cost}")
        issues = inst.profile.issues
        for i, rows in result.plan:
            voter = inst.profile.voters[i]
            net = voter.net
            flips = ", ".join(row_text(issues, net.tables[x], r) for x, r in rows)
            lines.append(f"flip {voter.name or f'v{i + 1}'}: {flips}")
    return "\n".join(lines)


def cmd_validate(args) -> int:
    doc = parse_document(_read(args.file))
    print(f"ok: {doc.profile.m} issues, {doc.profile.n} voters"
          + (", query present" if doc.instance is not None else ""))
    return 0


def cmd_winners(args) -> int:
    doc = parse_document(_read(args.file))
    fallback = doc.instance.global_order if doc.instance is not None else None
    order = _order(doc.profile.issues, args.order, fallback)
    ws = winners(doc.profile, _rule(args), order)
    issues = doc.profile.issues
    if ws.size > EXPLICIT_CAP and ws.uncovered and ws.default_score == ws.best:
        print(f"{ws.size} winners with score {ws.best}")
        return 0
    shown = ws.winning_patterns() if ws.wildcards else ws.explicit()
    for c in shown:
        print(f"{issues.format(c)} score {ws.best}")
    return 0


def _solve(args, solver) -> int:
    inst = parse_instance(_read(args.file))
    print(format_result(inst, solver(inst, _limits(args))))
    return 0


def cmd_bribe(args) -> int:
    return _solve(args, dispatch_solve)


def cmd_oracle(args) -> int:
    return _solve(args, brute_force_solve)


def cmd_margin(args) -> int:
    doc = parse_document(_read(args.file))
    fallback = doc.instance.global_order if doc.instance is not None else None
    order = _order(doc.profile.issues, args.order, fallback)
    print(margin_of_victory(doc.profile, _rule(args), order, _limits(args)))
    return 0


def cmd_reduce(args) -> int:
    text = _read(args.source)
    kind = args.kind
    if kind == "3sat-ok":
        profile, k = reduce_3sat_ok_eval(parse_dimacs(text))
        print(f"# evaluate with: winners --rule ok --k {k}")
        print("\n".join(serialize_profile(profile)))
        return 0
    if kind == "nae3sat":
        rule = VotingRule(args.rule, 1)
        inst = reduce_nae3sat(parse_dimacs(text), args.action, args.cost, args.negative, rule)
    else:
        source = parse_knapsack(text)
        if kind == "knapsack-op":
            inst = reduce_knapsack_op(source, args.action, args.cost, args.negative, VotingRule(args.rule, 1))
        elif kind == "knapsack-ov":
            inst = reduce_knapsack_ov(source, args.action, args.cost, args.negative)
        else:
            inst = reduce_knapsack_sm(source, args.action, args.cost, args.negative)
    sys.stdout.write(serialize_instance(inst))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cpbribery", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def rule_flags(p):
        p.add_argument("--rule", choices=("op", "ov", "ok", "sm"), required=True)
        p.add_argument("--k", type=int, default=1)
        p.add_argument("--regime", choices=("poly", "pow2"), default="poly")
        p.add_argument("--order", help="global issue order, e.g. 'side main drink'")

    def limit_flags(p):
        p.add_argument("--max-issues", type=int)
        p.add_argument("--max-rows", type=int)
        p.add_argument("--max-voters", type=int)

    p = sub.add_parser("validate", help="check a document")
    p.add_argument("file")
    p.set_defaults(run=cmd_validate)

    p = sub.add_parser("winners", help="winner set of the document's profile")
    rule_flags(p)
    p.add_argument("file")
    p.set_defaults(run=cmd_winners)

    for name, run, text in (
        ("bribe", cmd_bribe, "solve the query, polynomially where possible"),
        ("oracle", cmd_oracle, "solve the query by exhaustive search"),
    ):
        p = sub.add_parser(name, help=text)
        limit_flags(p)
        p.add_argument("file")
        p.set_defaults(run=run)

    p = sub.add_parser("margin", help="margin of victory of the current winner")
    rule_flags(p)
    limit_flags(p)
    p.add_argument("file")
    p.set_defaults(run=cmd_margin)

    p = sub.add_parser("reduce", help="build a bribery instance from a source problem")
    p.add_argument("kind", choices=("nae3sat", "3sat-ok", "knapsack-op", "knapsack-ov", "knapsack-sm"))
    p.add_argument("--action", choices=("iv", "dv", "ivdv"), default="iv")
    p.add_argument("--cost", choices=("equal", "flip", "level", "any", "dist"), default="flip")
    p.add_argument("--negative", action="store_true")
    p.add_argument("--rule", choices=("op", "ok"), default="op")
    p.add_argument("source")
    p.set_defaults(run=cmd_reduce)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.run(args)
    except LimitsExceeded as e:
        print(f"error: limits exceeded: {e}", file=sys.stderr)
        return 3
    except INPUT_ERRORS as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
