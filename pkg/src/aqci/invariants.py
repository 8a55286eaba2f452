"""Numerical invariants of a datum beyond the threshold.

The singularity presented by a datum is a quotient of affine n-space by a
finite abelian group acting diagonally.  This module computes:

  * `embedding_dimension`: the number of members (one ring generator each);
  * `child_count` / `branching_product`: the number of immediate sub-members
    per member and the product of those counts over non-singleton members,
    which bounds the multiplicity from above;
  * `group_order` via structural recursion, and `group_order_lattice` via an
    independent lattice-index computation from explicit group generators;
  * `floor_factor` / `top_child_weight` and their product over all members,
    the exact lower-bound machinery for the multiplicity.

The two group-order routes are kept separate on purpose; the verification
suite compares them on every enumerated datum.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .datum import (
    SpecialDatum,
    children,
    is_connected,
    maximal_elements,
    reduce,
    restrict,
)
from .lct import lct_datum

__all__ = [
    "embedding_dimension",
    "child_count",
    "branching_product",
    "edge_count_identity",
    "group_generators",
    "group_order",
    "group_order_lattice",
    "floor_factor",
    "top_child_weight",
    "floor_factor_product",
    "InvariantSummary",
    "summarize",
]


def embedding_dimension(d: SpecialDatum) -> int:
    return len(d.members)


def child_count(d: SpecialDatum, j: int) -> int:
    return len(children(d, j))


def branching_product(d: SpecialDatum) -> int:
    """Product of child counts over members with at least two elements."""
    out = 1
    for j in range(len(d.members)):
        if len(d.elements_of(j)) >= 2:
            out *= child_count(d, j)
    return out


def edge_count_identity(d: SpecialDatum) -> tuple[int, int]:
    """(sum of (child_count - 1) over non-singleton members, n - #roots).

    The two sides agree for every valid datum (a forest has as many edges as
    non-root nodes), and the right side equals n - 1 exactly when the datum
    is connected.
    """
    lhs = sum(
        child_count(d, j) - 1 for j in range(len(d.members)) if len(d.elements_of(j)) >= 2
    )
    rhs = d.n - len(maximal_elements(d))
    return lhs, rhs


def group_generators(d: SpecialDatum) -> list[tuple[Fraction, ...]]:
    """Generators of the acting group as vectors in (Q/Z)^n.

    For every member J with children J_1, .., J_k of common weight w, every
    ordered pair of distinct children, and every i in one child and j in the
    other, the group contains the diagonal element (e_i - e_j)/w.
    """
    gens: list[tuple[Fraction, ...]] = []
    for jdx in range(len(d.members)):
        kids = children(d, jdx)
        if len(kids) < 2:
            continue
        w = d.weight_of(kids[0])
        for k1 in kids:
            for k2 in kids:
                if k1 == k2:
                    continue
                for i in d.elements_of(k1):
                    for j in d.elements_of(k2):
                        v = [Fraction(0)] * d.n
                        v[i - 1] = Fraction(1, w)
                        v[j - 1] = Fraction(-1, w)
                        gens.append(tuple(v))
    return gens


def group_order(d: SpecialDatum) -> int:
    """Order of the acting group, by structural recursion.

    1 in dimension one; multiplicative over components; and for a connected
    datum with child weight r under the top member, r^(n-1) times the order
    for the reduced datum.
    """
    maxes = maximal_elements(d)
    if len(maxes) > 1:
        out = 1
        for j in maxes:
            out *= group_order(restrict(d, j))
        return out
    if d.n == 1:
        return 1
    top = maxes[0]
    r = d.weight_of(children(d, top)[0])
    return r ** (d.n - 1) * group_order(reduce(d, top))


def _row_lattice_diagonal(rows: list[list[int]], n: int) -> list[int]:
    """Pivot values of an integer row lattice after unimodular row reduction.

    The rows must span a full-rank sublattice of Z^n; the product of the
    returned pivots is the index of that sublattice.
    """
    mat = [list(r) for r in rows if any(r)]
    diag = []
    top = 0
    for col in range(n):
        while True:
            nz = [i for i in range(top, len(mat)) if mat[i][col] != 0]
            if not nz:
                raise ArithmeticError("row lattice is not full rank")
            if len(nz) == 1:
                break
            best = min(nz, key=lambda i: abs(mat[i][col]))
            for i in nz:
                if i != best:
                    f = mat[i][col] // mat[best][col]
                    mat[i] = [a - f * b for a, b in zip(mat[i], mat[best])]
            # Exact multiples vanish; otherwise remainders shrink, so the
            # loop terminates by infinite descent.
        i = nz[0]
        mat[top], mat[i] = mat[i], mat[top]
        if mat[top][col] < 0:
            mat[top] = [-a for a in mat[top]]
        diag.append(mat[top][col])
        top += 1
    return diag


def group_order_lattice(d: SpecialDatum) -> int:
    """Order of the acting group as a lattice index, from explicit generators.

    The dual description: the group is L/Z^n where L is generated by Z^n and
    the vectors from `group_generators`.  Clearing denominators by M gives an
    integer row lattice containing M*Z^n, and |L/Z^n| = M^n / [Z^n : M*L].
    """
    gens = group_generators(d)
    if not gens:
        return 1
    m = math.lcm(*[x.denominator for g in gens for x in g])
    rows = [[m * int(i == j) for j in range(d.n)] for i in range(d.n)]
    rows += [[int(x * m) for x in g] for g in gens]
    det = math.prod(_row_lattice_diagonal(rows, d.n))
    q, rem = divmod(m**d.n, det)
    assert rem == 0, "lattice index must divide the cleared-denominator volume"
    return q


def top_child_weight(d: SpecialDatum) -> Fraction:
    """Weight of the top member's children (1 in dimension one)."""
    maxes = maximal_elements(d)
    if len(maxes) != 1:
        raise ValueError("defined only for connected data")
    if d.n == 1:
        return Fraction(1)
    return Fraction(d.weight_of(children(d, maxes[0])[0]))


def floor_factor(d: SpecialDatum) -> Fraction:
    """min(threshold of the reduced datum, top child weight); 1 if n = 1.

    The product of this factor over all members (of the data induced on
    them) is a lower bound for the multiplicity.
    """
    maxes = maximal_elements(d)
    if len(maxes) != 1:
        raise ValueError("defined only for connected data")
    if d.n == 1:
        return Fraction(1)
    top = maxes[0]
    return min(lct_datum(reduce(d, top)), top_child_weight(d))


def floor_factor_product(d: SpecialDatum) -> Fraction:
    out = Fraction(1)
    for j in range(len(d.members)):
        out *= floor_factor(restrict(d, j))
    return out


@dataclass(frozen=True)
class InvariantSummary:
    n: int
    emb: int
    child_counts: tuple[tuple[tuple[int, ...], int], ...]
    branching_product: int
    floor_factors: tuple[tuple[tuple[int, ...], Fraction], ...]
    child_weight_factors: tuple[tuple[tuple[int, ...], Fraction], ...]
    group_order: int
    group_order_lattice: int
    lct: Fraction
    ceil_lct: int


def summarize(d: SpecialDatum) -> InvariantSummary:
    lct = lct_datum(d)
    return InvariantSummary(
        n=d.n,
        emb=embedding_dimension(d),
        child_counts=tuple(
            (d.elements_of(j), child_count(d, j))
            for j in range(len(d.members))
            if len(d.elements_of(j)) >= 2
        ),
        branching_product=branching_product(d),
        floor_factors=tuple(
            (d.elements_of(j), floor_factor(restrict(d, j))) for j in range(len(d.members))
        ),
        child_weight_factors=tuple(
            (d.elements_of(j), top_child_weight(restrict(d, j))) for j in range(len(d.members))
        ),
        group_order=group_order(d),
        group_order_lattice=group_order_lattice(d),
        lct=lct,
        ceil_lct=math.ceil(lct),
    )
