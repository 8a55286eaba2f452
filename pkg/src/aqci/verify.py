"""Exhaustive verification of every bound and identity on enumerated data.

For each enumerated isomorphism class the suite computes all invariants,
runs the colength oracle, and evaluates the checks below.  Every check ends
pass, fail, or skip; a skip always carries a reason (usually an oracle that
did not stabilize within budget) and is never silently counted as a pass.
All comparisons are exact rational comparisons; there is no epsilon anywhere.

  C0  structural-consistency   axioms hold, canonical form is idempotent,
                               edge-count identity, branching product within
                               its power-of-two envelope
  C1  lct-two-routes           structural recursion equals the LP route
  C2  group-two-routes         group-order recursion equals the lattice index
  C3  group-scaling            weight scaling by a in {2,3} multiplies the
                               group order by a^(n-1) (connected data)
  C4  embedding-vs-lct         emb <= 2n - sum of component ceil(lct)
                               <= 2n - ceil(lct)
  C5  branching-bound          e <= branching product <= 2^(n-1), with
                               equality at 2^(n-1) iff emb = 2n-1
  C6  power-bound-equality     e <= 2^(n-ceil(lct)), with equality iff
                               emb = 2n - ceil(lct)
  C7  lower-bound-chain        e >= floor-factor product >= n^n/(|G| lct^n)
  C8  closure-power-criterion  the chain's second inequality is an equality
                               iff the closure of the ideal is a power of the
                               maximal ideal; the exponent is then n/lct and
                               the common singleton weight
  C9  floor-pinning            if every member's floor factor equals its
                               child-weight factor then e equals the product
  C10 reduce-upper             e <= r * e(reduced), equality when the
                               reduced lct is >= r
  C11 reduce-lower-strict      when lct = 1 strictly exceeds lct(reduced)/r,
                               e >= lct(reduced) * e(reduced)
  C12 component-product        e is multiplicative over components
  C13 oracle-vs-structural     the oracle e lies within every structural
                               bound and equals the structural value when
                               that is exact

Two closed-form inequality grids are checked alongside (exactly, over
rationals): the ceiling power inequality a <= 2^(ceil(b) - ceil(b/a)) with
its equality characterization, and concavity of x -> x log(x/c) in product
form with equality only at proportional arguments.
"""

from __future__ import annotations

import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import partial
from itertools import product

from .datum import (
    SpecialDatum,
    canonical_form,
    format_fraction,
    is_connected,
    children,
    maximal_elements,
    monomial_ideal,
    reduce,
    restrict,
    scale,
    to_payload,
    validate,
)
from .enumeration import EnumerationBudget, enumerate_data
from .invariants import (
    branching_product,
    edge_count_identity,
    embedding_dimension,
    floor_factor,
    floor_factor_product,
    group_order,
    group_order_lattice,
    top_child_weight,
)
from .lct import find_closure_power, lct_datum, lct_lp
from .multiplicity import (
    OracleBudget,
    hilbert_samuel_table,
    multiplicity,
    multiplicity_lower_bound,
    multiplicity_upper_bound,
)

__all__ = [
    "CHECKS",
    "VerificationReport",
    "check_datum",
    "run_suite",
    "ceiling_power_grid",
    "product_concavity_grid",
]

CHECKS: tuple[tuple[str, str], ...] = (
    ("C0", "structural-consistency"),
    ("C1", "lct-two-routes"),
    ("C2", "group-two-routes"),
    ("C3", "group-scaling"),
    ("C4", "embedding-vs-lct"),
    ("C5", "branching-bound"),
    ("C6", "power-bound-equality"),
    ("C7", "lower-bound-chain"),
    ("C8", "closure-power-criterion"),
    ("C9", "floor-pinning"),
    ("C10", "reduce-upper"),
    ("C11", "reduce-lower-strict"),
    ("C12", "component-product"),
    ("C13", "oracle-vs-structural"),
)

_NAMES = dict(CHECKS)


def _pass(cid: str) -> dict:
    return {"id": cid, "name": _NAMES[cid], "outcome": "pass"}

def _fail(cid: str, witness: dict) -> dict:
    return {"id": cid, "name": _NAMES[cid], "outcome": "fail", "witness": witness}

def _skip(cid: str, reason: str) -> dict:
    return {"id": cid, "name": _NAMES[cid], "outcome": "skip", "reason": reason}

def _cond(cid: str, ok: bool, witness: dict) -> dict:
    return _pass(cid) if ok else _fail(cid, witness)


def check_datum(d: SpecialDatum, oracle_budget: OracleBudget = OracleBudget()) -> dict:
    """Evaluate every check on one datum; returns a JSON-ready record."""
    n = d.n
    emb = embedding_dimension(d)
    conn = is_connected(d)
    maxes = maximal_elements(d)
    comps = [restrict(d, j) for j in maxes]
    lct = lct_datum(d)
    ceil_lct = math.ceil(lct)
    gorder = group_order(d)
    glattice = group_order_lattice(d)
    bprod = branching_product(d)
    edge_lhs, edge_rhs = edge_count_identity(d)
    ffp = floor_factor_product(d)
    power_lower = (Fraction(n) / lct) ** n / gorder
    closure_q = find_closure_power(d)
    result = multiplicity(d)
    lower = multiplicity_lower_bound(d)
    upper = multiplicity_upper_bound(d)
    table = hilbert_samuel_table(d, oracle_budget)
    e = table.e

    floors = [floor_factor(restrict(d, j)) for j in range(len(d.members))]
    weights_factors = [top_child_weight(restrict(d, j)) for j in range(len(d.members))]
    uniform = all(a == b for a, b in zip(floors, weights_factors))

    checks: list[dict] = []

    # C0: the datum itself is coherent.
    canon, _ = canonical_form(d)
    recanon, _ = canonical_form(canon)
    structural_ok = (
        validate(d).ok
        and recanon == canon
        and edge_lhs == edge_rhs
        and (not conn or edge_rhs == n - 1)
        and bprod <= 2 ** (n - len(maxes)) <= 2 ** (n - 1)
    )
    checks.append(
        _cond(
            "C0",
            structural_ok,
            {
                "violations": [v.kind for v in validate(d).violations],
                "edge_identity": [edge_lhs, edge_rhs],
                "branching_product": bprod,
            },
        )
    )

    lct_by_lp = lct_lp(monomial_ideal(d))
    checks.append(
        _cond(
            "C1",
            lct == lct_by_lp,
            {"recursion": format_fraction(lct), "lp": format_fraction(lct_by_lp)},
        )
    )

    checks.append(_cond("C2", gorder == glattice, {"recursion": gorder, "lattice": glattice}))

    if conn:
        ok = True
        wit = {}
        for a in (2, 3):
            scaled = scale(d, a)
            expected = a ** (n - 1) * gorder
            got_rec = group_order(scaled)
            got_lat = group_order_lattice(scaled)
            if got_rec != expected or got_lat != expected:
                ok = False
                wit = {"a": a, "expected": expected, "recursion": got_rec, "lattice": got_lat}
        checks.append(_cond("C3", ok, wit))
    else:
        checks.append(_skip("C3", "weight scaling is defined only for connected data"))

    comp_ceils = sum(math.ceil(lct_datum(c)) for c in comps)
    checks.append(
        _cond(
            "C4",
            emb <= 2 * n - comp_ceils <= 2 * n - ceil_lct,
            {"emb": emb, "component_ceils": comp_ceils, "ceil_lct": ceil_lct},
        )
    )

    if e is not None:
        half_power = 2 ** (n - 1)
        ok = e <= bprod and e <= half_power and ((e == half_power) == (emb == 2 * n - 1))
        checks.append(
            _cond("C5", ok, {"e": e, "branching_product": bprod, "emb": emb, "bound": half_power})
        )

        power = 2 ** (n - ceil_lct)
        ok = e <= power and ((e == power) == (emb == 2 * n - ceil_lct))
        checks.append(
            _cond("C6", ok, {"e": e, "bound": power, "emb": emb, "ceil_lct": ceil_lct})
        )
    else:
        checks.append(_skip("C5", "oracle did not stabilize"))
        checks.append(_skip("C6", "oracle did not stabilize"))

    if ffp < power_lower:
        checks.append(
            _fail(
                "C7",
                {
                    "floor_factor_product": format_fraction(ffp),
                    "power_lower_bound": format_fraction(power_lower),
                },
            )
        )
    elif e is None:
        checks.append(_skip("C7", "oracle did not stabilize"))
    else:
        checks.append(
            _cond(
                "C7",
                Fraction(e) >= ffp,
                {"e": e, "floor_factor_product": format_fraction(ffp)},
            )
        )

    tight = ffp == power_lower
    ok = tight == (closure_q is not None)
    wit = {
        "floor_factor_product": format_fraction(ffp),
        "power_lower_bound": format_fraction(power_lower),
        "closure_power": closure_q,
    }
    if ok and closure_q is not None:
        singles = [m.weight for m in d.members if len(m.elements) == 1]
        ok = Fraction(closure_q) * lct == n and all(w == closure_q for w in singles)
        wit["lct"] = format_fraction(lct)
        wit["singleton_weights"] = singles
    checks.append(_cond("C8", ok, wit))

    if not uniform:
        checks.append(_pass("C9"))
    elif e is None:
        checks.append(_skip("C9", "oracle did not stabilize"))
    else:
        checks.append(
            _cond(
                "C9",
                Fraction(e) == ffp,
                {"e": e, "floor_factor_product": format_fraction(ffp)},
            )
        )

    if conn and n >= 2:
        top = maxes[0]
        r = d.weight_of(children(d, top)[0])
        red = reduce(d, top)
        red_lct = lct_datum(red)
        red_table = hilbert_samuel_table(red, oracle_budget)
        if e is None:
            checks.append(_skip("C10", "oracle did not stabilize"))
        elif red_table.e is None:
            checks.append(_skip("C10", "oracle for the reduced datum did not stabilize"))
        else:
            ok = e <= r * red_table.e
            if red_lct >= r:
                ok = ok and e == r * red_table.e
            checks.append(
                _cond(
                    "C10",
                    ok,
                    {
                        "e": e,
                        "r": r,
                        "reduced_e": red_table.e,
                        "reduced_lct": format_fraction(red_lct),
                    },
                )
            )
        if red_lct < r:
            # Threshold of d is 1 here, strictly above red_lct / r.
            if e is None:
                checks.append(_skip("C11", "oracle did not stabilize"))
            elif red_table.e is None:
                checks.append(_skip("C11", "oracle for the reduced datum did not stabilize"))
            else:
                checks.append(
                    _cond(
                        "C11",
                        Fraction(e) >= red_lct * red_table.e,
                        {
                            "e": e,
                            "reduced_e": red_table.e,
                            "reduced_lct": format_fraction(red_lct),
                        },
                    )
                )
        else:
            checks.append(_skip("C11", "threshold hypothesis does not apply"))
    else:
        reason = "needs a connected datum with a composite top member"
        checks.append(_skip("C10", reason))
        checks.append(_skip("C11", reason))

    if not conn:
        comp_tables = [hilbert_samuel_table(c, oracle_budget) for c in comps]
        if e is None:
            checks.append(_skip("C12", "oracle did not stabilize"))
        elif any(t.e is None for t in comp_tables):
            checks.append(_skip("C12", "oracle for a component did not stabilize"))
        else:
            prod_e = math.prod(t.e for t in comp_tables)
            checks.append(
                _cond(
                    "C12",
                    e == prod_e,
                    {"e": e, "component_es": [t.e for t in comp_tables]},
                )
            )
    else:
        checks.append(_skip("C12", "datum is connected"))

    if e is None:
        checks.append(_skip("C13", "oracle did not stabilize"))
    else:
        ok = lower <= Fraction(e) <= upper
        if result.is_exact:
            ok = ok and e == result.value
        else:
            ok = ok and result.lower <= Fraction(e) <= result.upper
        checks.append(
            _cond(
                "C13",
                ok,
                {
                    "e": e,
                    "lower": format_fraction(lower),
                    "upper": format_fraction(upper),
                    "structural_status": result.status,
                    "structural_value": result.value,
                    "structural_lower": format_fraction(result.lower),
                    "structural_upper": format_fraction(result.upper),
                },
            )
        )

    pinned_without_uniform = e is not None and Fraction(e) == ffp and not uniform

    return {
        "datum": to_payload(d),
        "n": n,
        "emb": emb,
        "connected": conn,
        "lct": format_fraction(lct),
        "ceil_lct": ceil_lct,
        "group_order": gorder,
        "group_order_lattice": glattice,
        "branching_product": bprod,
        "edge_identity": [edge_lhs, edge_rhs],
        "floor_factors": [format_fraction(x) for x in floors],
        "child_weight_factors": [format_fraction(x) for x in weights_factors],
        "floor_factor_product": format_fraction(ffp),
        "power_lower_bound": format_fraction(power_lower),
        "lower_bound": format_fraction(lower),
        "upper_bound": format_fraction(upper),
        "closure_power": closure_q,
        "multiplicity": {
            "status": result.status,
            "value": result.value,
            "lower": format_fraction(result.lower),
            "upper": format_fraction(result.upper),
            "trace": [
                {"rule": s.rule, "member": list(s.member) if s.member else None}
                for s in result.trace
            ],
        },
        "oracle": {
            "stabilized": table.stabilized,
            "e": table.e,
            "values": list(table.values),
            "points": table.points,
            "aborted": table.aborted,
        },
        "pinned_without_uniform_factors": pinned_without_uniform,
        "checks": checks,
    }


def ceiling_power_grid() -> dict:
    """Exhaustive exact check of a <= 2^(ceil(b) - ceil(b/a)) on a rational grid.

    a runs over the integers [2, 12]; b runs over [a, 20] in steps of 1/4.
    Equality must occur exactly when a = 2 and ceil(b) - ceil(b/a) = 1.
    """
    failures: list[dict] = []
    points = 0
    equality_points = 0
    for a in range(2, 13):
        b = Fraction(a)
        while b <= 20:
            k = math.ceil(b) - math.ceil(b / a)
            bound = 2**k
            holds = a <= bound
            is_equal = a == bound
            should_be_equal = a == 2 and k == 1
            if not holds or is_equal != should_be_equal:
                failures.append({"a": a, "b": format_fraction(b), "exponent": k})
            points += 1
            equality_points += int(is_equal)
            b += Fraction(1, 4)
    return {"points": points, "equality_points": equality_points, "failures": failures}


def _weighted_power_ge(xs, cs) -> tuple[bool, bool]:
    """Compare prod((x_i/c_i)^(x_i)) with ((sum x)/(sum c))^(sum x), exactly.

    Raising both positive sides to the lcm of the exponent denominators turns
    the comparison into one between rationals with integer exponents.
    """
    s = math.lcm(*[x.denominator for x in xs])
    lhs = math.prod(((x / c) ** int(x * s) for x, c in zip(xs, cs)), start=Fraction(1))
    total_x = sum(xs)
    total_c = sum(cs)
    rhs = (total_x / total_c) ** int(total_x * s)
    return lhs >= rhs, lhs == rhs


def product_concavity_grid() -> dict:
    """Exhaustive exact check of the weighted power inequality on small grids.

    For positive rationals, prod((x_i/c_i)^(x_i)) >= ((sum x)/(sum c))^(sum x)
    with equality exactly when all the ratios x_i/c_i agree.  Checked for 2
    and 3 terms with every coordinate drawn from {1/2, 1, 3/2, 2, 3}.
    """
    grid = (Fraction(1, 2), Fraction(1), Fraction(3, 2), Fraction(2), Fraction(3))
    failures: list[dict] = []
    points = 0
    equality_points = 0
    for terms in (2, 3):
        for xs in product(grid, repeat=terms):
            for cs in product(grid, repeat=terms):
                ge, eq = _weighted_power_ge(xs, cs)
                proportional = all(x * cs[0] == xs[0] * c for x, c in zip(xs, cs))
                if not ge or eq != proportional:
                    failures.append(
                        {
                            "xs": [format_fraction(x) for x in xs],
                            "cs": [format_fraction(c) for c in cs],
                        }
                    )
                points += 1
                equality_points += int(eq)
    return {"points": points, "equality_points": equality_points, "failures": failures}


@dataclass(frozen=True)
class VerificationReport:
    summary: dict
    records: tuple[dict, ...]

    @property
    def all_passed(self) -> bool:
        return bool(self.summary["all_passed"])

    def summary_json(self) -> str:
        return json.dumps(self.summary, sort_keys=True, indent=2) + "\n"

    def records_jsonl(self) -> str:
        return "".join(json.dumps(r, sort_keys=True) + "\n" for r in self.records)


def _tally(records) -> dict:
    out = {cid: {"pass": 0, "fail": 0, "skip": 0} for cid, _ in CHECKS}
    for rec in records:
        for c in rec["checks"]:
            out[c["id"]][c["outcome"]] += 1
    return out


def run_suite(budget: EnumerationBudget, jobs: int = 1) -> VerificationReport:
    """Enumerate every class in budget, run all checks, and assemble a report.

    The report is deterministic: records appear in enumeration order and all
    JSON is emitted with sorted keys, so identical budgets produce
    byte-identical reports (regardless of `jobs`).
    """
    data = list(enumerate_data(budget))
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            records = list(pool.map(partial(check_datum, oracle_budget=budget.oracle), data))
    else:
        records = [check_datum(d, budget.oracle) for d in data]
    for i, rec in enumerate(records):
        rec["index"] = i

    tallies = _tally(records)
    failed_records = sum(
        1 for rec in records if any(c["outcome"] == "fail" for c in rec["checks"])
    )
    unstabilized = sum(1 for rec in records if not rec["oracle"]["stabilized"])
    ceiling = ceiling_power_grid()
    concavity = product_concavity_grid()
    summary = {
        "budget": {
            "n_max": budget.n_max,
            "max_ratio": budget.max_ratio,
            "oracle_k_max": budget.oracle.k_max,
            "oracle_point_ceiling": budget.oracle.point_ceiling,
        },
        "datum_count": len(records),
        "failed_records": failed_records,
        "checks": tallies,
        "oracle_stabilized": len(records) - unstabilized,
        "oracle_unstabilized": unstabilized,
        "oracle_skip_rate": f"{unstabilized}/{len(records)}",
        "interval_results": sum(
            1 for rec in records if rec["multiplicity"]["status"] == "interval"
        ),
        "pinned_without_uniform_factors": sum(
            1 for rec in records if rec["pinned_without_uniform_factors"]
        ),
        "grids": {"ceiling_power": ceiling, "product_concavity": concavity},
        "all_passed": failed_records == 0
        and not ceiling["failures"]
        and not concavity["failures"],
    }
    return VerificationReport(summary, tuple(records))
