"""Log canonical thresholds of the monomial ideals attached to data.

Every query here reduces to exact membership in the Newton polyhedron
Newt(a) = conv(generator exponents) + nonnegative orthant:

  * `newton_contains` decides p in Newt(a) by an exact feasibility LP and
    returns the convex-combination certificate on success;
  * `lct_lp` computes the threshold as 1/u* where u* is the least u with
    (u, .., u) in Newt(a), again by LP;
  * `lct_datum` computes the same number structurally: 1 in dimension one,
    additive over the components of a disconnected datum, and
    max{1, lct(reduced)/r} for a connected datum whose top member has
    children of weight r;
  * `multiplier_membership` decides interior membership of m + (1,..,1) in
    t*Newt(a), which is exact because Newt(a) is closed under adding the
    orthant: a point is interior iff some uniform positive shift down stays
    inside;
  * `closure_is_power` checks whether the integral closure of the ideal is
    exactly the q-th power of the maximal ideal, using the lattice-point
    description of the closure of a monomial ideal.

The two lct routes are deliberately independent and are cross-checked over
whole enumeration budgets by the verification suite.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from . import lp
from .datum import (
    MonomialIdeal,
    SpecialDatum,
    children,
    maximal_elements,
    monomial_ideal,
    reduce,
    restrict,
    signature,
)

__all__ = [
    "LpCertificate",
    "BudgetExceededError",
    "newton_contains",
    "lct_lp",
    "lct_datum",
    "multiplier_membership",
    "closure_is_power",
    "find_closure_power",
]


class BudgetExceededError(RuntimeError):
    """An exhaustive computation was refused because it would be too large."""


@dataclass(frozen=True)
class LpCertificate:
    """Convex weights proving a containment claim.

    `coefficients` maps generator index (into MonomialIdeal.generators) to a
    nonnegative rational; the weights sum to 1 and the weighted generator sum
    is dominated coordinatewise by the certified point divided by `value`
    (value = 1 for plain containment queries).
    """

    value: Fraction
    coefficients: dict[int, Fraction]


def _check_point(a: MonomialIdeal, p) -> tuple[Fraction, ...]:
    if len(p) != a.n:
        raise ValueError(f"point has {len(p)} coordinates, ideal lives in {a.n}")
    q = tuple(Fraction(x) for x in p)
    if any(x < 0 for x in q):
        raise ValueError(f"point {p} has a negative coordinate")
    return q


def newton_contains(a: MonomialIdeal, p) -> tuple[bool, LpCertificate | None]:
    """Decide p in conv(generators) + orthant, with certificate when true."""
    p = _check_point(a, p)
    gens = a.generators
    m, n = len(gens), a.n
    # Variables: convex weights (m), slacks (n).
    rows = []
    rhs = []
    for j in range(n):
        rows.append([Fraction(g[j]) for g in gens] + [Fraction(int(j == k)) for k in range(n)])
        rhs.append(p[j])
    rows.append([Fraction(1)] * m + [Fraction(0)] * n)
    rhs.append(Fraction(1))
    sol = lp.solve_min([Fraction(0)] * (m + n), rows, rhs)
    if sol.status != lp.OPTIMAL:
        return False, None
    coeffs = {i: sol.x[i] for i in range(m) if sol.x[i] != 0}
    return True, LpCertificate(Fraction(1), coeffs)


def lct_lp(a: MonomialIdeal) -> Fraction:
    """Threshold via the diagonal: minimize u with (u,..,u) in Newt(a)."""
    gens = a.generators
    m, n = len(gens), a.n
    # Variables: convex weights (m), u (1), slacks (n).
    rows = []
    rhs = []
    for j in range(n):
        row = [Fraction(g[j]) for g in gens]
        row.append(Fraction(-1))
        row.extend(Fraction(int(j == k)) for k in range(n))
        rows.append(row)
        rhs.append(Fraction(0))
    rows.append([Fraction(1)] * m + [Fraction(0)] * (n + 1))
    rhs.append(Fraction(1))
    c = [Fraction(0)] * m + [Fraction(1)] + [Fraction(0)] * n
    sol = lp.solve_min(c, rows, rhs)
    if sol.status != lp.OPTIMAL or sol.value <= 0:
        raise ArithmeticError(f"diagonal scaling LP failed: {sol.status}")
    return 1 / sol.value


_LCT_CACHE: dict[tuple, Fraction] = {}


def lct_datum(d: SpecialDatum) -> Fraction:
    """Threshold by structural recursion (memoized on the isomorphism class).

    The cache is a plain dict keyed by `signature`; concurrent re-insertion
    of the same value is benign.
    """
    sig = signature(d)
    hit = _LCT_CACHE.get(sig)
    if hit is not None:
        return hit
    maxes = maximal_elements(d)
    if len(maxes) > 1:
        val = sum((lct_datum(restrict(d, j)) for j in maxes), Fraction(0))
    elif d.n == 1:
        val = Fraction(1)
    else:
        top = maxes[0]
        r = d.weight_of(children(d, top)[0])
        val = max(Fraction(1), lct_datum(reduce(d, top)) / r)
    _LCT_CACHE[sig] = val
    return val


def multiplier_membership(a: MonomialIdeal, t: Fraction, m) -> bool:
    """Is m + (1,..,1) in the interior of t*Newt(a)?

    Decided exactly by maximizing the uniform shift eps with
    m + (1,..,1) - eps*(1,..,1) in t*Newt(a); interior membership is
    equivalent to a strictly positive optimum because the region is closed
    under adding the orthant.
    """
    t = Fraction(t)
    if t <= 0:
        raise ValueError(f"scaling factor must be positive, got {t}")
    m = _check_point(a, m)
    gens = a.generators
    k, n = len(gens), a.n
    # Variables: convex weights (k), eps+ (1), eps- (1), slacks (n).
    rows = []
    rhs = []
    for j in range(n):
        row = [t * Fraction(g[j]) for g in gens]
        row.extend([Fraction(1), Fraction(-1)])
        row.extend(Fraction(int(j == i)) for i in range(n))
        rows.append(row)
        rhs.append(m[j] + 1)
    rows.append([Fraction(1)] * k + [Fraction(0)] * (n + 2))
    rhs.append(Fraction(1))
    c = [Fraction(0)] * k + [Fraction(-1), Fraction(1)] + [Fraction(0)] * n
    sol = lp.solve_min(c, rows, rhs)
    if sol.status != lp.OPTIMAL:
        raise ArithmeticError(f"shift-maximization LP failed: {sol.status}")
    return -sol.value > 0


def _compositions(total: int, parts: int):
    """All nonnegative integer vectors of given length summing to total."""
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def closure_is_power(a: MonomialIdeal, q: int, point_ceiling: int = 10**6) -> bool:
    """Does the integral closure of `a` equal the q-th power of (x_1,..,x_n)?

    Containment in the power holds iff every generator has degree >= q; the
    reverse containment holds iff every degree-q exponent vector lies in
    Newt(a).  Refuses (BudgetExceededError) if the number of degree-q vectors
    exceeds `point_ceiling`.
    """
    if q < 1:
        raise ValueError(f"power must be >= 1, got {q}")
    if any(sum(g) < q for g in a.generators):
        return False
    count = math.comb(q + a.n - 1, a.n - 1)
    if count > point_ceiling:
        raise BudgetExceededError(
            f"{count} degree-{q} exponent vectors exceed the ceiling {point_ceiling}"
        )
    for p in _compositions(q, a.n):
        inside, _ = newton_contains(a, p)
        if not inside:
            return False
    return True


def find_closure_power(d: SpecialDatum, point_ceiling: int = 10**6) -> int | None:
    """The q with closure(a_d) = (x_1,..,x_n)^q, if one exists.

    Only a common singleton weight can be such a q (the closure meets the
    i-th axis exactly at multiples of the singleton weight of {i} at or above
    it), so nothing else needs testing.
    """
    singles = [m.weight for m in d.members if len(m.elements) == 1]
    q = singles[0]
    if any(w != q for w in singles):
        return None
    if not closure_is_power(monomial_ideal(d), q, point_ceiling):
        return None
    assert q * lct_datum(d) == d.n
    return q
