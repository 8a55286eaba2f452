"""Weighted laminar families on {1..n} and their structural operations.

A *datum* is a family of nonempty subsets ("members") of the ground set
{1, .., n}, each carrying a positive integer weight, subject to five axioms:

  1. every singleton {i} belongs to the family;
  2. any two members are nested or disjoint (laminarity);
  3. inclusion-maximal members have weight 1;
  4. if J is strictly contained in J' then w(J) > w(J') and w(J') divides w(J);
  5. members sharing the same immediate parent have equal weight.

A valid datum presents the invariant ring generated by the monomials
x_J^{w(J)} (product of the variables indexed by J, raised to w(J)), which is
a complete intersection quotient of affine space by a finite abelian group.
Everything else in this package (thresholds, group orders, multiplicities)
is computed from this one structure.

Nested members form a forest: for any member J with at least two elements
its immediate sub-members partition J into at least two blocks of equal
weight, and every parent-to-child weight ratio is an integer >= 2.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

__all__ = [
    "DatumFormatError",
    "InvalidDatumError",
    "Member",
    "SpecialDatum",
    "MonomialIdeal",
    "ValidationReport",
    "Violation",
    "make_datum",
    "validate",
    "require_valid",
    "children",
    "maximal_elements",
    "is_connected",
    "restrict",
    "reduce",
    "scale",
    "monomial_ideal",
    "signature",
    "canonical_form",
    "apply_permutation",
    "is_isomorphic",
    "to_payload",
    "from_payload",
    "to_json",
    "from_json",
    "to_dot",
    "format_fraction",
]


def format_fraction(x: Fraction) -> str:
    """Render an exact rational as "p/q", or just "p" for integers."""
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


class DatumFormatError(ValueError):
    """Input does not even parse into a datum candidate (bad JSON or shape)."""


class InvalidDatumError(ValueError):
    """A structurally parsed candidate that violates the family axioms."""

    def __init__(self, report: "ValidationReport"):
        super().__init__("; ".join(v.message for v in report.violations))
        self.report = report


def _member_key(m: "Member"):
    first = m.elements[0] if m.elements else 0
    return (first, len(m.elements), m.elements, m.weight)


@dataclass(frozen=True)
class Member:
    """One set of the family together with its weight."""

    elements: tuple[int, ...]
    weight: int

    def __post_init__(self):
        object.__setattr__(self, "elements", tuple(sorted(set(self.elements))))


@dataclass(frozen=True)
class SpecialDatum:
    """A candidate weighted laminar family; run validate() to check the axioms.

    Members are stored sorted by (smallest element, size), which is also the
    serialization order, so structural equality is label-for-label equality.
    """

    n: int
    members: tuple[Member, ...]

    def __post_init__(self):
        object.__setattr__(self, "members", tuple(sorted(self.members, key=_member_key)))

    def elements_of(self, j: int) -> tuple[int, ...]:
        return self.members[j].elements

    def weight_of(self, j: int) -> int:
        return self.members[j].weight


def make_datum(n: int, sets) -> SpecialDatum:
    """Build a datum candidate from (elements, weight) pairs."""
    return SpecialDatum(int(n), tuple(Member(tuple(e), int(w)) for e, w in sets))


@dataclass(frozen=True)
class Violation:
    kind: str
    message: str
    members: tuple[tuple[int, ...], ...] = ()


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...]

    @property
    def ok(self) -> bool:
        return not self.violations

    def kinds(self) -> tuple[str, ...]:
        return tuple(v.kind for v in self.violations)


# Violation kinds.  Structural kinds describe malformed candidates; the
# remaining kinds map one-to-one onto the five axioms.
BAD_DIMENSION = "bad-dimension"
NO_MEMBERS = "no-members"
EMPTY_MEMBER = "empty-member"
ELEMENT_RANGE = "element-out-of-range"
NONPOSITIVE_WEIGHT = "nonpositive-weight"
DUPLICATE_MEMBER = "duplicate-member"
MISSING_SINGLETON = "missing-singleton"
NOT_LAMINAR = "not-laminar"
MAXIMAL_WEIGHT = "maximal-weight-not-one"
WEIGHT_ORDER = "weight-not-decreasing-outward"
WEIGHT_DIVISIBILITY = "weight-not-divisible"
SIBLING_WEIGHTS = "sibling-weights-differ"


def validate(d: SpecialDatum) -> ValidationReport:
    """Check every axiom and report all violations at once (never raises)."""
    out: list[Violation] = []
    if d.n < 1:
        out.append(Violation(BAD_DIMENSION, f"ground set size must be >= 1, got {d.n}"))
    if not d.members:
        out.append(Violation(NO_MEMBERS, "family has no members"))

    for m in d.members:
        if not m.elements:
            out.append(Violation(EMPTY_MEMBER, "empty member set", (m.elements,)))
        elif d.n >= 1 and (m.elements[0] < 1 or m.elements[-1] > d.n):
            out.append(
                Violation(
                    ELEMENT_RANGE,
                    f"member {list(m.elements)} leaves the ground set {{1..{d.n}}}",
                    (m.elements,),
                )
            )
        if m.weight < 1:
            out.append(
                Violation(
                    NONPOSITIVE_WEIGHT,
                    f"member {list(m.elements)} has nonpositive weight {m.weight}",
                    (m.elements,),
                )
            )

    seen: dict[tuple[int, ...], int] = {}
    for m in d.members:
        seen[m.elements] = seen.get(m.elements, 0) + 1
    for elems, count in seen.items():
        if count > 1:
            out.append(
                Violation(DUPLICATE_MEMBER, f"member {list(elems)} appears {count} times", (elems,))
            )

    # Axiom 1: all singletons present.
    singletons = {m.elements[0] for m in d.members if len(m.elements) == 1}
    for i in range(1, d.n + 1):
        if i not in singletons:
            out.append(Violation(MISSING_SINGLETON, f"singleton {{{i}}} is missing", ((i,),)))

    # Axiom 2: pairwise nested or disjoint.
    sets = [frozenset(m.elements) for m in d.members]
    for a in range(len(sets)):
        for b in range(a + 1, len(sets)):
            sa, sb = sets[a], sets[b]
            if sa & sb and not (sa <= sb or sb <= sa):
                out.append(
                    Violation(
                        NOT_LAMINAR,
                        f"members {sorted(sa)} and {sorted(sb)} overlap without nesting",
                        (d.members[a].elements, d.members[b].elements),
                    )
                )

    # Axiom 3: maximal members have weight 1.
    for a in range(len(sets)):
        if any(b != a and sets[a] < sets[b] for b in range(len(sets))):
            continue
        if d.members[a].weight != 1:
            out.append(
                Violation(
                    MAXIMAL_WEIGHT,
                    f"maximal member {list(d.members[a].elements)} has weight "
                    f"{d.members[a].weight}, expected 1",
                    (d.members[a].elements,),
                )
            )

    # Axiom 4: weights strictly increase inward and divide outward-to-inward.
    for a in range(len(sets)):
        for b in range(len(sets)):
            if a == b or not (sets[a] < sets[b]):
                continue
            wi, wo = d.members[a].weight, d.members[b].weight
            pair = (d.members[a].elements, d.members[b].elements)
            if wi <= wo:
                out.append(
                    Violation(
                        WEIGHT_ORDER,
                        f"inner member {sorted(sets[a])} (weight {wi}) must outweigh "
                        f"outer member {sorted(sets[b])} (weight {wo})",
                        pair,
                    )
                )
            if wo > 0 and wi % wo != 0:
                out.append(
                    Violation(
                        WEIGHT_DIVISIBILITY,
                        f"weight {wo} of {sorted(sets[b])} does not divide weight "
                        f"{wi} of {sorted(sets[a])}",
                        pair,
                    )
                )

    # Axiom 5: children of a common parent share one weight.  Immediate
    # containment is meaningful even on sloppy candidates, so this check runs
    # unconditionally.
    for b in range(len(sets)):
        kids = [
            a
            for a in range(len(sets))
            if sets[a] < sets[b]
            and not any(sets[a] < sets[c] < sets[b] for c in range(len(sets)))
        ]
        weights = {d.members[a].weight for a in kids}
        if len(weights) > 1:
            out.append(
                Violation(
                    SIBLING_WEIGHTS,
                    f"children of {sorted(sets[b])} carry different weights {sorted(weights)}",
                    tuple(d.members[a].elements for a in kids),
                )
            )

    return ValidationReport(tuple(out))


def require_valid(d: SpecialDatum) -> None:
    report = validate(d)
    if not report.ok:
        raise InvalidDatumError(report)


def children(d: SpecialDatum, j: int) -> list[int]:
    """Indices of the immediate sub-members of member j, by smallest element."""
    outer = frozenset(d.elements_of(j))
    inner = [k for k in range(len(d.members)) if frozenset(d.elements_of(k)) < outer]
    tops = [
        k
        for k in inner
        if not any(
            frozenset(d.elements_of(k)) < frozenset(d.elements_of(m)) for m in inner if m != k
        )
    ]
    return sorted(tops, key=lambda k: d.elements_of(k)[0])


def maximal_elements(d: SpecialDatum) -> list[int]:
    """Indices of the inclusion-maximal members (the roots of the forest)."""
    sets = [frozenset(m.elements) for m in d.members]
    return [a for a in range(len(sets)) if not any(b != a and sets[a] < sets[b] for b in range(len(sets)))]


def is_connected(d: SpecialDatum) -> bool:
    """True when a single member covers the whole ground set."""
    return len(maximal_elements(d)) == 1


def restrict(d: SpecialDatum, j: int) -> SpecialDatum:
    """The induced datum on member j, relabeled to {1..|J|} preserving order.

    Weights inside J are divided by w(J), so J itself becomes the
    inclusion-maximal member of weight 1.
    """
    outer = d.elements_of(j)
    wj = d.weight_of(j)
    pos = {e: i for i, e in enumerate(outer, start=1)}
    inside = frozenset(outer)
    members = [
        Member(tuple(pos[e] for e in m.elements), m.weight // wj)
        for m in d.members
        if frozenset(m.elements) <= inside
    ]
    return SpecialDatum(len(outer), tuple(members))


def reduce(d: SpecialDatum, j: int) -> SpecialDatum:
    """Delete a maximal member with >= 2 elements, renormalizing inside it.

    Each child block becomes maximal: weights of members inside a child J_i
    are divided by w(J_i); members outside j are untouched.
    """
    outer = frozenset(d.elements_of(j))
    if len(outer) < 2:
        raise ValueError("cannot delete a singleton member")
    if any(
        k != j and outer < frozenset(d.elements_of(k)) for k in range(len(d.members))
    ):
        raise ValueError("only inclusion-maximal members can be deleted")
    kid_sets = [(k, frozenset(d.elements_of(k))) for k in children(d, j)]
    members = []
    for i, m in enumerate(d.members):
        if i == j:
            continue
        w = m.weight
        for k, ks in kid_sets:
            if frozenset(m.elements) <= ks:
                w = m.weight // d.weight_of(k)
                break
        members.append(Member(m.elements, w))
    return SpecialDatum(d.n, tuple(members))


def scale(d: SpecialDatum, a: int) -> SpecialDatum:
    """Multiply every non-maximal weight by a (connected data only)."""
    if a < 1:
        raise ValueError(f"scale factor must be >= 1, got {a}")
    maxes = maximal_elements(d)
    if len(maxes) != 1:
        raise ValueError("scaling is defined only for connected data")
    top = maxes[0]
    members = tuple(
        Member(m.elements, 1 if i == top else m.weight * a) for i, m in enumerate(d.members)
    )
    return SpecialDatum(d.n, members)


@dataclass(frozen=True)
class MonomialIdeal:
    """A monomial ideal given by exponent vectors of its generators."""

    n: int
    generators: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        gens = sorted(set(tuple(int(x) for x in g) for g in self.generators))
        for g in gens:
            if len(g) != self.n:
                raise ValueError(f"generator {g} does not have {self.n} coordinates")
            if any(x < 0 for x in g):
                raise ValueError(f"generator {g} has a negative exponent")
            if not any(g):
                raise ValueError("the zero vector cannot generate a proper ideal")
        object.__setattr__(self, "generators", tuple(gens))


def monomial_ideal(d: SpecialDatum) -> MonomialIdeal:
    """The ideal generated by one monomial per member: exponent w(J) on J."""
    gens = []
    for m in d.members:
        v = [0] * d.n
        for e in m.elements:
            v[e - 1] = m.weight
        gens.append(tuple(v))
    return MonomialIdeal(d.n, tuple(gens))


def _node_signature(d: SpecialDatum, j: int):
    kids = children(d, j)
    if not kids:
        return (0,)
    ratio = d.weight_of(kids[0]) // d.weight_of(j)
    return (1, ratio, tuple(sorted(_node_signature(d, k) for k in kids)))


def signature(d: SpecialDatum):
    """A hashable forest shape + ratio labels, invariant under relabeling."""
    return tuple(sorted(_node_signature(d, j) for j in maximal_elements(d)))


def apply_permutation(d: SpecialDatum, perm: tuple[int, ...]) -> SpecialDatum:
    """Relabel the ground set; perm[i-1] is the new name of element i."""
    members = tuple(Member(tuple(perm[e - 1] for e in m.elements), m.weight) for m in d.members)
    return SpecialDatum(d.n, members)


def canonical_form(d: SpecialDatum) -> tuple[SpecialDatum, tuple[int, ...]]:
    """A canonical representative of the isomorphism class, plus the relabeling.

    Equal-signature siblings are tie-broken by their current smallest element,
    so the permutation itself is deterministic.
    """
    sig_cache: dict[int, tuple] = {}

    def sig(j: int):
        if j not in sig_cache:
            sig_cache[j] = _node_signature(d, j)
        return sig_cache[j]

    order: list[int] = []

    def visit(j: int) -> None:
        kids = children(d, j)
        if not kids:
            order.append(d.elements_of(j)[0])
            return
        for k in sorted(kids, key=lambda k: (sig(k), d.elements_of(k)[0])):
            visit(k)

    for j in sorted(maximal_elements(d), key=lambda k: (sig(k), d.elements_of(k)[0])):
        visit(j)

    perm = [0] * d.n
    for new, old in enumerate(order, start=1):
        perm[old - 1] = new
    perm_t = tuple(perm)
    return apply_permutation(d, perm_t), perm_t


def is_isomorphic(d1: SpecialDatum, d2: SpecialDatum) -> bool:
    return d1.n == d2.n and signature(d1) == signature(d2)


def to_payload(d: SpecialDatum) -> dict:
    return {
        "n": d.n,
        "sets": [{"elements": list(m.elements), "weight": m.weight} for m in d.members],
    }


def from_payload(obj) -> SpecialDatum:
    """Parse the documented JSON shape into a candidate (axioms not checked)."""
    if not isinstance(obj, dict):
        raise DatumFormatError("datum must be a JSON object")
    if set(obj.keys()) != {"n", "sets"}:
        raise DatumFormatError('datum object must have exactly the keys "n" and "sets"')
    n = obj["n"]
    if isinstance(n, bool) or not isinstance(n, int):
        raise DatumFormatError('"n" must be an integer')
    raw = obj["sets"]
    if not isinstance(raw, list):
        raise DatumFormatError('"sets" must be a list')
    members = []
    for entry in raw:
        if not isinstance(entry, dict) or set(entry.keys()) != {"elements", "weight"}:
            raise DatumFormatError('each set must be an object with keys "elements" and "weight"')
        elems = entry["elements"]
        weight = entry["weight"]
        if not isinstance(elems, list) or not elems:
            raise DatumFormatError('"elements" must be a nonempty list')
        for e in elems:
            if isinstance(e, bool) or not isinstance(e, int):
                raise DatumFormatError(f"element {e!r} is not an integer")
        if len(set(elems)) != len(elems):
            raise DatumFormatError(f"elements {elems} contain a repeat")
        if isinstance(weight, bool) or not isinstance(weight, int):
            raise DatumFormatError(f"weight {weight!r} is not an integer")
        members.append(Member(tuple(elems), weight))
    return SpecialDatum(n, tuple(members))


def to_json(d: SpecialDatum) -> str:
    return json.dumps(to_payload(d), sort_keys=True)


def from_json(text: str) -> SpecialDatum:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DatumFormatError(f"malformed JSON: {exc}") from exc
    return from_payload(obj)


def to_dot(d: SpecialDatum) -> str:
    """Graphviz rendering: one node per member (labeled by weight), edges
    from parent to child, members of equal depth on one rank."""
    lines = ["digraph datum {", "  rankdir=TB;", "  node [shape=circle];"]
    for idx, m in enumerate(d.members):
        lines.append(f'  v{idx} [label="{m.weight}"];')
    depth = {}
    stack = [(j, 0) for j in maximal_elements(d)]
    while stack:
        j, dep = stack.pop()
        depth[j] = dep
        for k in children(d, j):
            stack.append((k, dep + 1))
    for j in range(len(d.members)):
        for k in children(d, j):
            lines.append(f"  v{j} -> v{k};")
    for dep in sorted(set(depth.values())):
        same = [f"v{j};" for j in sorted(depth) if depth[j] == dep]
        lines.append("  { rank=same; " + " ".join(same) + " }")
    lines.append("}")
    return "\n".join(lines) + "\n"
