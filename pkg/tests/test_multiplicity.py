"""Structural multiplicity rules against the colength tabulation oracle."""

from __future__ import annotations

import math
from fractions import Fraction

from aqci import (
    EXACT,
    INTERVAL,
    EnumerationBudget,
    OracleBudget,
    enumerate_data,
    hilbert_samuel_table,
    make_datum,
    multiplicity,
    multiplicity_lower_bound,
    multiplicity_upper_bound,
)

from helpers import chain, star, two_stars


def loose_points(n):
    return make_datum(n, [((i,), 1) for i in range(1, n + 1)])


INTERVAL_FIXTURE = make_datum(
    4,
    [((1, 2, 3, 4), 1), ((1,), 3), ((2, 3, 4), 3), ((2,), 6), ((3,), 6), ((4,), 6)],
)


# ---------------------------------------------------------------------------
# Structural recursion: exact cases


def test_dimension_one_is_regular():
    res = multiplicity(loose_points(1))
    assert res.is_exact and res.value == 1
    assert [s.rule for s in res.trace] == ["dimension-one"]


def test_star_values_cap_at_the_dimension():
    assert multiplicity(star(3, 2)).value == 2
    assert multiplicity(star(3, 3)).value == 3
    assert multiplicity(star(3, 4)).value == 3
    assert multiplicity(star(3, 5)).value == 3
    assert multiplicity(star(2, 5)).value == 2


def test_star_trace_rules():
    assert any(s.rule == "reduce-equality" for s in multiplicity(star(3, 2)).trace)
    assert any(s.rule == "hypersurface" for s in multiplicity(star(3, 4)).trace)


def test_component_product():
    res = multiplicity(two_stars(2, 2))
    assert res.is_exact and res.value == 4
    assert res.trace[0].rule == "component-product"
    assert multiplicity(two_stars(2, 3)).value == 4
    assert multiplicity(loose_points(4)).value == 1


def test_chain_multiplicities():
    assert multiplicity(chain(2, 2)).value == 4
    assert multiplicity(chain(3, 3, 3)).value == 8


def test_interval_fixture_is_an_honest_interval():
    res = multiplicity(INTERVAL_FIXTURE)
    assert res.status == INTERVAL
    assert res.value is None
    assert res.lower == 5
    assert res.upper == 6


def test_exact_results_are_self_consistent():
    for d in enumerate_data(EnumerationBudget(n_max=4, max_ratio=3)):
        res = multiplicity(d)
        assert res.lower <= res.upper
        if res.is_exact:
            assert res.lower == res.upper == res.value
            assert res.value >= 1
        else:
            assert res.value is None
            assert res.lower < res.upper
        assert res.trace


# ---------------------------------------------------------------------------
# Standalone bound aggregators


def test_bound_aggregator_fixture_values():
    assert multiplicity_lower_bound(star(3, 2)) == 2
    assert multiplicity_upper_bound(star(3, 2)) == 2
    assert multiplicity_lower_bound(star(3, 4)) == 3
    assert multiplicity_upper_bound(star(3, 4)) == 3
    assert multiplicity_lower_bound(INTERVAL_FIXTURE) == 5
    assert multiplicity_upper_bound(INTERVAL_FIXTURE) == 6


def test_bounds_bracket_the_structural_result():
    for d in enumerate_data(EnumerationBudget(n_max=4, max_ratio=3)):
        lo = multiplicity_lower_bound(d)
        hi = multiplicity_upper_bound(d)
        res = multiplicity(d)
        assert lo <= hi
        assert lo <= res.upper and res.lower <= hi
        assert hi <= 2 ** (d.n - 1)


# ---------------------------------------------------------------------------
# Colength tabulation oracle


def test_table_for_a_regular_point():
    t = hilbert_samuel_table(loose_points(1))
    assert t.values == tuple(range(1, 13))
    assert t.stabilized and t.e == 1
    assert not t.aborted


def test_table_for_a_regular_plane():
    t = hilbert_samuel_table(loose_points(2))
    assert t.values == tuple(math.comb(k + 1, 2) for k in range(1, 13))
    assert t.stabilized and t.e == 1


def test_table_for_the_weight_two_star():
    t = hilbert_samuel_table(star(3, 2))
    expected = tuple(math.comb(k + 2, 3) + math.comb(k + 1, 3) for k in range(1, 13))
    assert t.values == expected
    assert t.values[:4] == (1, 5, 14, 30)
    assert t.stabilized and t.e == 2


def test_table_for_two_stars():
    t = hilbert_samuel_table(two_stars(2, 2))
    assert t.values[:6] == (1, 7, 26, 70, 155, 301)
    assert t.stabilized and t.e == 4
    assert t.points == 5551


def test_table_confirms_hypersurface_rule():
    t = hilbert_samuel_table(star(3, 4))
    assert t.stabilized and t.e == 3


def test_table_pins_the_interval_fixture():
    t = hilbert_samuel_table(INTERVAL_FIXTURE)
    assert t.stabilized
    assert t.e == 5
    res = multiplicity(INTERVAL_FIXTURE)
    assert res.lower <= t.e <= res.upper


def test_table_values_strictly_increase():
    for d in (star(2, 3), star(3, 3), two_stars(2, 3), chain(2, 2)):
        t = hilbert_samuel_table(d)
        assert all(a < b for a, b in zip(t.values, t.values[1:]))


def test_table_matches_structural_rules_in_low_dimension():
    for d in enumerate_data(EnumerationBudget(n_max=3, max_ratio=3)):
        t = hilbert_samuel_table(d)
        assert t.stabilized, d
        res = multiplicity(d)
        assert res.is_exact
        assert t.e == res.value


def test_budget_abort_is_honest():
    t = hilbert_samuel_table(two_stars(2, 2), OracleBudget(k_max=12, point_ceiling=10))
    assert t.aborted
    assert not t.stabilized
    assert t.e is None
    assert t.values == ()
    assert t.points > 10


def test_shorter_table_may_fail_to_stabilize():
    # Three n-th differences need n + 3 table entries.
    t = hilbert_samuel_table(star(2, 2), OracleBudget(k_max=4))
    assert not t.stabilized
    t = hilbert_samuel_table(star(2, 2), OracleBudget(k_max=5))
    assert t.stabilized and t.e == 2
