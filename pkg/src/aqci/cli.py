"""Command-line interface.

One datum file (the documented JSON shape) is the single input format.
Subcommands either inspect one datum (validate, info, lct, mult, closure,
dot) or sweep an enumeration budget (enumerate, verify).  Exit codes:
0 success / all checks passed, 1 validation failure or any check failure,
2 usage errors (including unreadable files).  Diagnostics go to stderr;
with --json the primary stream carries only JSON.
"""

from __future__ import annotations

import argparse
import json
import sys

from .datum import (
    DatumFormatError,
    format_fraction,
    from_json,
    is_connected,
    to_dot,
    to_json,
    validate,
)
from .enumeration import EnumerationBudget, enumerate_data
from .invariants import summarize
from .lct import BudgetExceededError, find_closure_power, lct_datum, lct_lp
from .multiplicity import (
    OracleBudget,
    hilbert_samuel_table,
    multiplicity,
    multiplicity_lower_bound,
    multiplicity_upper_bound,
)
from .datum import monomial_ideal
from .verify import run_suite

__all__ = ["main"]


class _CliError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def _load(path: str):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except FileNotFoundError:
        raise _CliError(2, f"no such file: {path}") from None
    except OSError as exc:
        raise _CliError(2, f"cannot read {path}: {exc}") from None
    try:
        return from_json(text)
    except DatumFormatError as exc:
        raise _CliError(1, f"cannot parse datum file {path}: {exc}") from None


def _load_valid(path: str):
    d = _load(path)
    report = validate(d)
    if not report.ok:
        detail = "\n".join(f"  [{v.kind}] {v.message}" for v in report.violations)
        raise _CliError(1, f"invalid datum {path}:\n{detail}")
    return d


def _emit_json(payload) -> None:
    print(json.dumps(payload, sort_keys=True, indent=2))


def _cmd_validate(args) -> int:
    d = _load(args.file)
    report = validate(d)
    if args.json:
        _emit_json(
            {
                "valid": report.ok,
                "violations": [
                    {"kind": v.kind, "message": v.message, "members": [list(m) for m in v.members]}
                    for v in report.violations
                ],
            }
        )
    elif report.ok:
        print("valid")
    else:
        print("invalid:")
        for v in report.violations:
            print(f"  [{v.kind}] {v.message}")
    return 0 if report.ok else 1


def _cmd_info(args) -> int:
    d = _load_valid(args.file)
    s = summarize(d)
    result = multiplicity(d)
    lower = multiplicity_lower_bound(d)
    upper = multiplicity_upper_bound(d)
    closure_q = find_closure_power(d)
    if args.json:
        _emit_json(
            {
                "n": s.n,
                "emb": s.emb,
                "connected": is_connected(d),
                "lct": format_fraction(s.lct),
                "ceil_lct": s.ceil_lct,
                "group_order": s.group_order,
                "group_order_lattice": s.group_order_lattice,
                "branching_product": s.branching_product,
                "child_counts": [
                    {"member": list(j), "count": c} for j, c in s.child_counts
                ],
                "floor_factors": [
                    {"member": list(j), "value": format_fraction(v)} for j, v in s.floor_factors
                ],
                "child_weight_factors": [
                    {"member": list(j), "value": format_fraction(v)}
                    for j, v in s.child_weight_factors
                ],
                "multiplicity": {
                    "status": result.status,
                    "value": result.value,
                    "lower": format_fraction(result.lower),
                    "upper": format_fraction(result.upper),
                },
                "lower_bound": format_fraction(lower),
                "upper_bound": format_fraction(upper),
                "closure_power": closure_q,
            }
        )
        return 0
    print(f"n:                    {s.n}")
    print(f"embedding dimension:  {s.emb}")
    print(f"connected:            {'yes' if is_connected(d) else 'no'}")
    print(f"lct:                  {format_fraction(s.lct)}  (ceiling {s.ceil_lct})")
    print(f"group order:          {s.group_order}  (lattice route: {s.group_order_lattice})")
    print(f"branching product:    {s.branching_product}")
    if result.is_exact:
        print(f"multiplicity:         {result.value} (exact)")
    else:
        print(
            "multiplicity:         within "
            f"[{format_fraction(result.lower)}, {format_fraction(result.upper)}]"
        )
    print(f"bound envelope:       [{format_fraction(lower)}, {format_fraction(upper)}]")
    print(f"closure power:        {closure_q if closure_q is not None else 'none'}")
    return 0


def _cmd_lct(args) -> int:
    d = _load_valid(args.file)
    values = {}
    if args.method in ("recursion", "both"):
        values["recursion"] = lct_datum(d)
    if args.method in ("lp", "both"):
        values["lp"] = lct_lp(monomial_ideal(d))
    agree = len(set(values.values())) == 1
    if args.json:
        payload = {k: format_fraction(v) for k, v in values.items()}
        if args.method == "both":
            payload["agree"] = agree
        _emit_json(payload)
    else:
        for k, v in values.items():
            print(f"{k}: {format_fraction(v)}")
        if args.method == "both" and not agree:
            print("MISMATCH between the two routes", file=sys.stderr)
    return 0 if agree else 1


def _cmd_mult(args) -> int:
    d = _load_valid(args.file)
    budget = OracleBudget(k_max=args.k_max, point_ceiling=args.point_ceiling)
    payload: dict = {"method": args.method}
    lines: list[str] = []
    if args.method in ("auto", "bounds"):
        lower = multiplicity_lower_bound(d)
        upper = multiplicity_upper_bound(d)
        payload["lower_bound"] = format_fraction(lower)
        payload["upper_bound"] = format_fraction(upper)
        lines.append(f"bound envelope: [{format_fraction(lower)}, {format_fraction(upper)}]")
    if args.method == "auto":
        result = multiplicity(d)
        payload["multiplicity"] = {
            "status": result.status,
            "value": result.value,
            "lower": format_fraction(result.lower),
            "upper": format_fraction(result.upper),
            "trace": [
                {"rule": s.rule, "member": list(s.member) if s.member else None}
                for s in result.trace
            ],
        }
        if result.is_exact:
            lines.insert(0, f"multiplicity: {result.value} (exact)")
        else:
            lines.insert(
                0,
                "multiplicity: within "
                f"[{format_fraction(result.lower)}, {format_fraction(result.upper)}]",
            )
        lines.append("trace: " + ", ".join(s.rule for s in result.trace))
    if args.method == "oracle":
        table = hilbert_samuel_table(d, budget)
        payload["oracle"] = {
            "stabilized": table.stabilized,
            "e": table.e,
            "values": list(table.values),
            "points": table.points,
            "aborted": table.aborted,
        }
        if table.aborted:
            lines.append(f"oracle: aborted after {table.points} points (ceiling exceeded)")
        else:
            lines.append("colengths: " + " ".join(str(v) for v in table.values))
            if table.stabilized:
                lines.append(f"multiplicity: {table.e} (differences stabilized)")
            else:
                lines.append("multiplicity: not stabilized within budget")
    if args.json:
        _emit_json(payload)
    else:
        for line in lines:
            print(line)
    return 0


def _cmd_closure(args) -> int:
    d = _load_valid(args.file)
    try:
        q = find_closure_power(d)
    except BudgetExceededError as exc:
        raise _CliError(1, f"closure test refused: {exc}") from None
    if args.json:
        _emit_json({"closure_power": q})
    else:
        print(f"closure power: {q if q is not None else 'none'}")
    return 0


def _cmd_dot(args) -> int:
    d = _load_valid(args.file)
    sys.stdout.write(to_dot(d))
    return 0


def _cmd_enumerate(args) -> int:
    budget = EnumerationBudget(n_max=args.n, max_ratio=args.max_ratio)
    count = 0
    for d in enumerate_data(budget):
        if args.jsonl:
            print(to_json(d))
        else:
            parts = " ".join(
                "{" + ",".join(str(e) for e in m.elements) + "}:" + str(m.weight)
                for m in d.members
            )
            print(f"n={d.n}  {parts}")
        count += 1
    print(f"total: {count} classes", file=sys.stderr)
    return 0


def _cmd_verify(args) -> int:
    budget = EnumerationBudget(
        n_max=args.n_max,
        max_ratio=args.max_ratio,
        oracle=OracleBudget(k_max=args.k_max, point_ceiling=args.point_ceiling),
    )
    report = run_suite(budget, jobs=args.jobs)
    summary = report.summary
    if args.report:
        base = args.report
        jsonl = base[:-5] + ".jsonl" if base.endswith(".json") else base + ".jsonl"
        with open(base, "w", encoding="utf-8") as fh:
            fh.write(report.summary_json())
        with open(jsonl, "w", encoding="utf-8") as fh:
            fh.write(report.records_jsonl())
        print(f"report written to {base} and {jsonl}", file=sys.stderr)
    print(f"datum classes: {summary['datum_count']}")
    for cid, tally in summary["checks"].items():
        print(
            f"  {cid:<4} pass {tally['pass']:<5} fail {tally['fail']:<5} skip {tally['skip']}"
        )
    print(
        f"oracle: stabilized {summary['oracle_stabilized']}/{summary['datum_count']}"
        f" (skip rate {summary['oracle_skip_rate']})"
    )
    for name, grid in summary["grids"].items():
        print(
            f"grid {name}: {grid['points']} points, {grid['equality_points']} equalities,"
            f" {len(grid['failures'])} failures"
        )
    print("result: " + ("ALL PASSED" if summary["all_passed"] else "FAILURES FOUND"))
    return 0 if summary["all_passed"] else 1


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="aqci",
        description="Invariants of quotient singularities presented by weighted laminar families.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check the family axioms on a datum file")
    p.add_argument("file")
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=_cmd_validate)

    p = sub.add_parser("info", help="all invariants of one datum")
    p.add_argument("file")
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=_cmd_info)

    p = sub.add_parser("lct", help="log canonical threshold")
    p.add_argument("file")
    p.add_argument("--method", choices=("recursion", "lp", "both"), default="both")
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=_cmd_lct)

    p = sub.add_parser("mult", help="multiplicity (structural rules, bounds, or oracle)")
    p.add_argument("file")
    p.add_argument("--method", choices=("auto", "oracle", "bounds"), default="auto")
    p.add_argument("--k-max", type=int, default=12)
    p.add_argument("--point-ceiling", type=int, default=5_000_000)
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=_cmd_mult)

    p = sub.add_parser("closure", help="is the integral closure a power of the maximal ideal")
    p.add_argument("file")
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=_cmd_closure)

    p = sub.add_parser("dot", help="Graphviz rendering of the member forest")
    p.add_argument("file")
    p.set_defaults(fn=_cmd_dot)

    p = sub.add_parser("enumerate", help="list all isomorphism classes within a budget")
    p.add_argument("--n", type=int, required=True, help="largest ground-set size")
    p.add_argument("--max-ratio", type=int, default=3)
    p.add_argument("--jsonl", action="store_true", help="one datum JSON per line")
    p.set_defaults(fn=_cmd_enumerate)

    p = sub.add_parser("verify", help="run every check on every class within a budget")
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--max-ratio", type=int, default=3)
    p.add_argument("--report", help="write summary JSON here (records go to a .jsonl sibling)")
    p.add_argument("--k-max", type=int, default=12)
    p.add_argument("--point-ceiling", type=int, default=5_000_000)
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(fn=_cmd_verify)

    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except _CliError as exc:
        print(f"aqci: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
