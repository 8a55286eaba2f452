"""Hilbert-Samuel multiplicity of the ring presented by a datum.

Two routes are provided and never mixed:

  * `multiplicity` applies the structural rules.  It returns an exact value
    when the rule chain pins one down (dimension one; products over
    components; the reduce step when the reduced threshold is at least the
    child weight; tops whose children are all singletons) and otherwise a
    certified integer interval assembled from the known lower and upper
    bounds.  Each step is recorded in a trace.

  * `hilbert_samuel_table` measures colengths of powers of the maximal ideal
    directly on the semigroup of the ring and extracts the multiplicity from
    stabilized finite differences.  It is the ground truth the verification
    suite compares everything against, and it reports honestly when its
    budget was too small to stabilize (never a wrong value).

`multiplicity_lower_bound` / `multiplicity_upper_bound` expose the full
bound family on their own: the floor-factor product and the group-order
power bound from below, the branching product and the power-of-two bound
2^(n - ceil(lct)) from above, plus the recursive reduce and component rules.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .datum import SpecialDatum, children, maximal_elements, monomial_ideal, reduce, restrict
from .invariants import branching_product, floor_factor_product, group_order
from .lct import lct_datum

__all__ = [
    "OracleBudget",
    "TraceStep",
    "MultiplicityResult",
    "HilbertSamuelTable",
    "multiplicity",
    "multiplicity_lower_bound",
    "multiplicity_upper_bound",
    "hilbert_samuel_table",
]

EXACT = "exact"
INTERVAL = "interval"


@dataclass(frozen=True)
class OracleBudget:
    """Budget for the colength tabulation."""

    k_max: int = 12
    point_ceiling: int = 5_000_000


@dataclass(frozen=True)
class TraceStep:
    rule: str
    member: tuple[int, ...] | None = None


@dataclass(frozen=True)
class MultiplicityResult:
    status: str
    value: int | None
    lower: Fraction
    upper: Fraction
    trace: tuple[TraceStep, ...]

    @property
    def is_exact(self) -> bool:
        return self.status == EXACT


def _exact(value: int, trace) -> MultiplicityResult:
    v = Fraction(value)
    return MultiplicityResult(EXACT, value, v, v, tuple(trace))


def _interval(lower: Fraction, upper: Fraction, trace) -> MultiplicityResult:
    if lower == upper:
        return _exact(int(lower), tuple(trace) + (TraceStep("interval-pinned"),))
    return MultiplicityResult(INTERVAL, None, lower, upper, tuple(trace))


def multiplicity(d: SpecialDatum) -> MultiplicityResult:
    """Structural multiplicity: exact where the rules decide, else an interval."""
    maxes = maximal_elements(d)
    if d.n == 1:
        return _exact(1, (TraceStep("dimension-one"),))
    if len(maxes) > 1:
        parts = [multiplicity(restrict(d, j)) for j in maxes]
        trace = (TraceStep("component-product"),)
        for p in parts:
            trace += p.trace
        if all(p.is_exact for p in parts):
            return _exact(math.prod(p.value for p in parts), trace)
        lower = math.prod((p.lower for p in parts), start=Fraction(1))
        upper = math.prod((p.upper for p in parts), start=Fraction(1))
        return _interval(lower, upper, trace)

    top = maxes[0]
    top_elems = d.elements_of(top)
    kids = children(d, top)
    r = d.weight_of(kids[0])
    red = reduce(d, top)
    reduced_lct = lct_datum(red)
    sub = multiplicity(red)

    if reduced_lct >= r:
        # The threshold of d equals reduced_lct / r here, which is the exact
        # equality case of the reduce rule.
        trace = (TraceStep("reduce-equality", top_elems),) + sub.trace
        if sub.is_exact:
            return _exact(r * sub.value, trace)
        return _interval(r * sub.lower, r * sub.upper, trace)

    if all(len(d.elements_of(k)) == 1 for k in kids):
        # One binomial relation: the ring is a hypersurface.
        return _exact(min(r, d.n), (TraceStep("hypersurface", top_elems),))

    # Open case (threshold is 1, some child is composite): certified interval.
    lower = max(
        floor_factor_product(d),
        reduced_lct * sub.lower,
        Fraction(d.n**d.n, group_order(d)),
    )
    lower_int = Fraction(math.ceil(lower))
    upper = min(
        Fraction(r) * sub.upper,
        Fraction(branching_product(d)),
        Fraction(2 ** (d.n - 1)),
    )
    trace = (TraceStep("interval-bounds", top_elems),) + sub.trace
    return _interval(lower_int, upper, trace)


def multiplicity_upper_bound(d: SpecialDatum) -> Fraction:
    """Least available upper bound for the multiplicity, as an exact rational."""
    cands = [
        Fraction(branching_product(d)),
        Fraction(2 ** (d.n - math.ceil(lct_datum(d)))),
    ]
    maxes = maximal_elements(d)
    if len(maxes) > 1:
        cands.append(
            math.prod((multiplicity_upper_bound(restrict(d, j)) for j in maxes), start=Fraction(1))
        )
    elif d.n >= 2:
        top = maxes[0]
        r = d.weight_of(children(d, top)[0])
        cands.append(r * multiplicity_upper_bound(reduce(d, top)))
    return min(cands)


def multiplicity_lower_bound(d: SpecialDatum) -> Fraction:
    """Greatest available lower bound for the multiplicity, as an exact rational."""
    lct = lct_datum(d)
    cands = [
        Fraction(1),
        floor_factor_product(d),
        (Fraction(d.n) / lct) ** d.n / group_order(d),
    ]
    maxes = maximal_elements(d)
    if len(maxes) > 1:
        cands.append(
            math.prod((multiplicity_lower_bound(restrict(d, j)) for j in maxes), start=Fraction(1))
        )
    elif d.n >= 2:
        top = maxes[0]
        r = d.weight_of(children(d, top)[0])
        red = reduce(d, top)
        reduced_lct = lct_datum(red)
        factor = Fraction(r) if reduced_lct >= r else reduced_lct
        cands.append(factor * multiplicity_lower_bound(red))
    return max(cands)


@dataclass(frozen=True)
class HilbertSamuelTable:
    """Colengths of the powers of the maximal ideal, with difference analysis.

    values[k-1] is the colength of the k-th power for k = 1..k_max.  The
    table is `stabilized` when the last three n-th finite differences agree;
    `e` is then that common value.  `aborted` means the point budget ran out
    before the tabulation finished (then values is empty and e is None).
    """

    n: int
    values: tuple[int, ...]
    stabilized: bool
    e: int | None
    points: int
    aborted: bool


def hilbert_samuel_table(d: SpecialDatum, budget: OracleBudget = OracleBudget()) -> HilbertSamuelTable:
    """Tabulate colengths directly on the semigroup of the ring.

    A monomial of the ring lies in the k-th power of the maximal ideal
    exactly when its exponent vector is a sum of at least k generator
    vectors, so the colength of the k-th power counts semigroup points whose
    longest decomposition into generators has fewer than k parts.  The
    longest-decomposition length satisfies a DAG recurrence over the
    semigroup ordered by coordinate sum.  Only reachable semigroup points
    are generated (breadth-first closure under adding generators), which
    keeps the visited set a |G|-th of the ambient simplex.
    """
    gens = monomial_ideal(d).generators
    n = d.n
    bound = budget.k_max * max(sum(g) for g in gens)
    zero = (0,) * n

    points = {zero}
    frontier = [zero]
    while frontier:
        new = set()
        for p in frontier:
            for g in gens:
                q = tuple(a + b for a, b in zip(p, g))
                if sum(q) <= bound and q not in points and q not in new:
                    new.add(q)
        points |= new
        if len(points) > budget.point_ceiling:
            return HilbertSamuelTable(n, (), False, None, len(points), True)
        frontier = sorted(new)

    longest: dict[tuple[int, ...], int] = {}
    histogram = [0] * budget.k_max
    for p in sorted(points, key=lambda q: (sum(q), q)):
        if p == zero:
            longest[p] = 0
        else:
            best = -1
            for g in gens:
                q = tuple(a - b for a, b in zip(p, g))
                if all(x >= 0 for x in q):
                    lq = longest.get(q, -1)
                    if lq > best:
                        best = lq
            assert best >= 0, "reachable point lost its predecessors"
            longest[p] = best + 1
        if longest[p] < budget.k_max:
            histogram[longest[p]] += 1

    values = []
    total = 0
    for k in range(budget.k_max):
        total += histogram[k]
        values.append(total)

    diffs = values
    for _ in range(n):
        diffs = [b - a for a, b in zip(diffs, diffs[1:])]
    stabilized = len(diffs) >= 3 and diffs[-1] == diffs[-2] == diffs[-3]
    e = diffs[-1] if stabilized else None
    return HilbertSamuelTable(n, tuple(values), stabilized, e, len(points), False)
