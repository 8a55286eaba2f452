"""Exact linear programming over the rationals.

A dense two-phase primal simplex on `fractions.Fraction`, with Bland's rule
for anti-cycling.  Every problem solved in this package has a handful of rows
and columns, so there is no point in sparsity, revised updates, or floating
point: exactness is the whole point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class LpSolution:
    status: str
    value: Fraction | None
    x: tuple[Fraction, ...] | None


def _pivot(tab, basis, obj, i, j):
    piv = tab[i][j]
    tab[i] = [v / piv for v in tab[i]]
    row = tab[i]
    for k in range(len(tab)):
        if k != i and tab[k][j] != 0:
            f = tab[k][j]
            tab[k] = [a - f * b for a, b in zip(tab[k], row)]
    if obj is not None and obj[j] != 0:
        f = obj[j]
        for c in range(len(obj)):
            obj[c] -= f * row[c]
    basis[i] = j


def _iterate(tab, basis, obj, ncols):
    """Run Bland-rule pivots to optimality; returns OPTIMAL or UNBOUNDED."""
    while True:
        enter = next((j for j in range(ncols) if obj[j] < 0), None)
        if enter is None:
            return OPTIMAL
        best = None
        for i in range(len(tab)):
            a = tab[i][enter]
            if a > 0:
                ratio = tab[i][-1] / a
                if best is None or ratio < best[0] or (ratio == best[0] and basis[i] < best[1]):
                    best = (ratio, basis[i], i)
        if best is None:
            return UNBOUNDED
        _pivot(tab, basis, obj, best[2], enter)


def solve_min(c, A, b) -> LpSolution:
    """Minimize c.x subject to A x = b, x >= 0, exactly.

    `A` is a list of rows.  Rows with negative right-hand side are flipped, a
    phase-1 run with artificial variables finds a basic feasible point (or
    proves infeasibility), leftover artificials are driven out or their rows
    dropped as redundant, and phase 2 optimizes the real objective.
    """
    m, n = len(A), len(c)
    cost = [Fraction(x) for x in c]
    tab = []
    for i in range(m):
        row = [Fraction(x) for x in A[i]]
        rhs = Fraction(b[i])
        if rhs < 0:
            row = [-x for x in row]
            rhs = -rhs
        tab.append(row + [Fraction(int(i == j)) for j in range(m)] + [rhs])
    basis = list(range(n, n + m))
    obj = [Fraction(0)] * n + [Fraction(1)] * m + [Fraction(0)]
    for i in range(m):
        if obj[basis[i]] != 0:
            f = obj[basis[i]]
            for cidx in range(len(obj)):
                obj[cidx] -= f * tab[i][cidx]
    _iterate(tab, basis, obj, n + m)
    if -obj[-1] != 0:
        return LpSolution(INFEASIBLE, None, None)

    drop = []
    for i in range(m):
        if basis[i] >= n:
            piv = next((j for j in range(n) if tab[i][j] != 0), None)
            if piv is None:
                drop.append(i)
            else:
                _pivot(tab, basis, None, i, piv)
    for i in sorted(drop, reverse=True):
        del tab[i]
        del basis[i]

    for i in range(len(tab)):
        tab[i] = tab[i][:n] + [tab[i][-1]]
    obj = cost + [Fraction(0)]
    for i in range(len(tab)):
        if obj[basis[i]] != 0:
            f = obj[basis[i]]
            for cidx in range(n + 1):
                obj[cidx] -= f * tab[i][cidx]
    status = _iterate(tab, basis, obj, n)
    if status == UNBOUNDED:
        return LpSolution(UNBOUNDED, None, None)
    x = [Fraction(0)] * n
    for i, bv in enumerate(basis):
        x[bv] = tab[i][-1]
    return LpSolution(OPTIMAL, -obj[-1], tuple(x))
