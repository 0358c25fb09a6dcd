#!/usr/bin/env python3
"""
Ring catalog tests - curated local rings, expression parsing and the
bounded universe of non-local rings.
"""

import pytest

from ring_catalog import (CATALOG_IDS, RingUniverseFilter, UnsupportedBoundError, canonical_expr,
                          catalog_local_rings, catalog_table, check_catalog_invariants,
                          enumerate_factor_shapes, enumerate_nonlocal_rings, get_local_ring,
                          parse_factor_ids, ring_from_expr)
from ring_core import RingSpecError


def test_catalog_sizes():
    assert len(catalog_local_rings(4)) == 5
    assert len(catalog_local_rings(8)) == 13
    assert len(catalog_local_rings(9)) == 16


def test_catalog_order_up_to_four():
    assert [s.id for s in catalog_local_rings(4)] == ["Z2", "Z3", "F4", "Z4", "Z2[x]/(x^2)"]


def test_catalog_is_sorted_by_order():
    orders = [s.order for s in catalog_local_rings()]
    assert orders == sorted(orders)


def test_catalog_bound_is_capped():
    with pytest.raises(UnsupportedBoundError):
        catalog_local_rings(10)


def test_local_ring_metadata():
    z8 = get_local_ring("Z8")
    assert (z8.order, z8.characteristic, z8.is_field) == (8, 8, False)
    assert z8.maximal_ideal_is_principal
    assert len(z8.maximal_ideal) == 4 and z8.unit_count == 4

    assert not get_local_ring("Z2[x,y]/(x^2,xy,y^2)").maximal_ideal_is_principal
    assert not get_local_ring("Z4[x]/(2x,x^2)").maximal_ideal_is_principal
    assert get_local_ring("Z4[x]/(2x,x^2-2)").maximal_ideal_is_principal
    assert get_local_ring("Z3[x]/(x^2)").characteristic == 3

    fields = [s.id for s in catalog_local_rings() if s.is_field]
    assert fields == ["Z2", "Z3", "F4", "Z5", "Z7", "F8", "F9"]


def test_unknown_id():
    with pytest.raises(RingSpecError, match="Q8"):
        get_local_ring("Q8")


def test_catalog_table():
    table = catalog_table()
    assert list(table["id"]) == list(CATALOG_IDS)
    assert table.loc[table["id"] == "F9", "units"].item() == 8


def test_catalog_invariants_hold():
    assert check_catalog_invariants() == []


def test_parse_expressions():
    assert parse_factor_ids("F4*Z4[x]/(2x,x^2)") == ["F4", "Z4[x]/(2x,x^2)"]
    assert parse_factor_ids(" Z2*Z2*Z3 ") == ["Z2", "Z2", "Z3"]
    assert canonical_expr(["Z5", "F4"]) == "F4*Z5"
    assert canonical_expr(["Z2[x]/(x^2)", "Z3"]) == "Z3*Z2[x]/(x^2)"


@pytest.mark.parametrize("expr", ["Z2*Q8", "", "Z2**Z3", "Z2*Z10"])
def test_parse_rejects_bad_expressions(expr):
    with pytest.raises(RingSpecError):
        parse_factor_ids(expr)


def test_bad_token_is_named():
    with pytest.raises(RingSpecError, match='unknown token "Q8"'):
        ring_from_expr("Z2*Q8")


def test_two_factor_universe():
    shapes = list(enumerate_factor_shapes(RingUniverseFilter(max_factor_order=9, max_factors=2,
                                                             max_total_order=None)))
    assert len(shapes) == 136
    assert shapes[0] == ("Z2", "Z2")
    assert len(set(shapes)) == len(shapes)


def test_default_universe_size():
    shapes = list(enumerate_factor_shapes(RingUniverseFilter()))
    assert len(shapes) == 2510
    assert all(2 <= len(s) <= 4 for s in shapes)


def test_universe_respects_total_order():
    flt = RingUniverseFilter(max_factor_order=4, max_factors=3, max_total_order=12)
    rings = list(enumerate_nonlocal_rings(flt))
    assert all(r.order <= 12 for r in rings)
    assert "Z2*Z2*Z3" in [r.name for r in rings]
    assert "Z2*Z2*F4" not in [r.name for r in rings]


def test_universe_filter_validation():
    with pytest.raises(ValueError):
        RingUniverseFilter(max_factors=1)
    with pytest.raises(UnsupportedBoundError):
        RingUniverseFilter(max_factor_order=16)


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
