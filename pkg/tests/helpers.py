"""Independent brute-force oracles and fixture builders for the tests.

Nothing here imports the solver code under test beyond plain data types:
the point is to recompute expected values by a different route (exact
linear-system enumeration, breadth-first group closure, exhaustive labeled
generation) and freeze or compare.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations, product

from aqci import make_datum


def star(n: int, a: int):
    """One maximal member over n singleton leaves of weight a."""
    return make_datum(n, [(tuple(range(1, n + 1)), 1)] + [((i,), a) for i in range(1, n + 1)])


def two_stars(a: int, b: int):
    """Disjoint union of two 2-element stars with singleton weights a and b."""
    return make_datum(
        4, [((1, 2), 1), ((3, 4), 1), ((1,), a), ((2,), a), ((3,), b), ((4,), b)]
    )


def chain(*ratios: int):
    """A maximal chain: each level splits off one singleton, ratios top-down."""
    n = len(ratios) + 1
    members = []
    weight = 1
    for depth, r in enumerate(ratios):
        members.append((tuple(range(1, n - depth + 1)), weight))
        weight *= r
        members.append(((n - depth,), weight))
    members.append(((1,), weight))
    return make_datum(n, members)


def solve_linear(mat, rhs):
    """Solve a square rational system exactly; None if singular."""
    n = len(mat)
    a = [[Fraction(x) for x in row] + [Fraction(rhs[i])] for i, row in enumerate(mat)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            return None
        a[col], a[piv] = a[piv], a[col]
        a[col] = [x / a[col][col] for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [a[r][n] for r in range(n)]


def matrix_rank(mat) -> int:
    rows = [[Fraction(x) for x in row] for row in mat]
    rank = 0
    cols = len(rows[0]) if rows else 0
    for col in range(cols):
        piv = next((r for r in range(rank, len(rows)) if rows[r][col] != 0), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        rows[rank] = [x / rows[rank][col] for x in rows[rank]]
        for r in range(len(rows)):
            if r != rank and rows[r][col] != 0:
                f = rows[r][col]
                rows[r] = [x - f * y for x, y in zip(rows[r], rows[rank])]
        rank += 1
    return rank


def brute_min_max(vectors, offsets):
    """min over convex weights of max_j((weighted sum)[j] - offsets[j]).

    Enumerates candidate optima as solutions of square systems (a support of
    weights plus an equal-sized active coordinate set), keeping only feasible
    ones.  Exact, tiny, and entirely independent of the simplex code.
    """
    m = len(vectors)
    n = len(vectors[0])
    offsets = [Fraction(x) for x in offsets]
    best = None
    for size in range(1, m + 1):
        for support in combinations(range(m), size):
            for active in combinations(range(n), size):
                mat = [
                    [Fraction(vectors[i][j]) for i in support] + [Fraction(-1)] for j in active
                ]
                rhs = [offsets[j] for j in active]
                mat.append([Fraction(1)] * size + [Fraction(0)])
                rhs.append(Fraction(1))
                sol = solve_linear(mat, rhs)
                if sol is None:
                    continue
                lam, t = sol[:size], sol[size]
                if any(x < 0 for x in lam):
                    continue
                feasible = True
                for j in range(n):
                    val = sum(l * vectors[i][j] for l, i in zip(lam, support)) - offsets[j]
                    if val > t:
                        feasible = False
                        break
                if feasible and (best is None or t < best):
                    best = t
    return best


def brute_lp_min(c, A, b):
    """Optimal value of min c.x, A x = b, x >= 0 by basic-solution enumeration.

    Requires A to have full row rank (the caller filters); returns None when
    no feasible basic solution exists.  Unboundedness is not detected, so
    compare only against solver runs that report an optimum.
    """
    m = len(A)
    best = None
    for cols in combinations(range(len(c)), m):
        sol = solve_linear([[A[i][j] for j in cols] for i in range(m)], b)
        if sol is None or any(x < 0 for x in sol):
            continue
        val = sum(Fraction(c[j]) * x for j, x in zip(cols, sol))
        if best is None or val < best:
            best = val
    return best


def subgroup_order(gens, n: int) -> int:
    """Order of the subgroup of (Q/Z)^n generated by the given vectors."""
    zero = tuple(Fraction(0) for _ in range(n))
    seen = {zero}
    frontier = [zero]
    while frontier:
        new = []
        for p in frontier:
            for g in gens:
                q = tuple((a + b) % 1 for a, b in zip(p, g))
                if q not in seen:
                    seen.add(q)
                    new.append(q)
        frontier = new
    return len(seen)


def labeled_data(n: int, max_ratio: int):
    """Every valid datum on {1..n} (labeled, not up to isomorphism).

    Enumerates laminar families of composite sets, then every assignment of
    a ratio in [2, max_ratio] to each composite member; weights follow from
    the ratios along ancestor chains.
    """
    universe = [
        frozenset(c)
        for size in range(2, n + 1)
        for c in combinations(range(1, n + 1), size)
    ]
    out = []
    for bits in product((0, 1), repeat=len(universe)):
        fam = [s for s, keep in zip(universe, bits) if keep]
        if any(
            (a & b) and not (a <= b or b <= a) for a, b in combinations(fam, 2)
        ):
            continue
        for ratios in product(range(2, max_ratio + 1), repeat=len(fam)):
            rmap = dict(zip(fam, ratios))

            def weight_of(s) -> int:
                w = 1
                for anc, r in rmap.items():
                    if s < anc:
                        w *= r
                return w

            sets = [(tuple(sorted(f)), weight_of(f)) for f in fam]
            sets += [((i,), weight_of(frozenset((i,)))) for i in range(1, n + 1)]
            out.append(make_datum(n, sets))
    return out
