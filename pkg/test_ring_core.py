#!/usr/bin/env python3
"""
Ring core tests - tables, units, principal ideals and the axioms check.
"""

import numpy as np
import pytest

from ring_catalog import catalog_local_rings, get_local_ring, ring_from_expr
from ring_core import (ElementSet, FiniteRing, build_product, is_local, is_prime_power,
                       maximal_proper_principal_ideals, nonunits, principal_ideal, ring_axioms_hold,
                       units, zero_divisors)


def test_modular_ring_tables():
    z4 = get_local_ring("Z4").build()
    assert z4.labels == ("0", "1", "2", "3")
    assert z4.add(3, 3) == 2
    assert z4.multiply(2, 2) == 0
    assert units(z4).labels(z4) == ["1", "3"]


def test_field_of_four_elements():
    f4 = get_local_ring("F4").build()
    assert f4.labels == ("0", "1", "x", "1+x")
    x, x1 = f4.index_of("x"), f4.index_of("1+x")
    # x^2 = x + 1 and x(x+1) = 1
    assert f4.multiply(x, x) == x1
    assert f4.multiply(x, x1) == f4.one
    assert len(units(f4)) == 3


def test_index_of_unknown_label():
    with pytest.raises(ValueError):
        get_local_ring("Z3").build().index_of("5")


def test_every_catalog_ring_satisfies_the_axioms():
    for spec in catalog_local_rings():
        assert ring_axioms_hold(spec.build()), spec.id


def test_products_satisfy_the_axioms():
    for expr in ("Z2*Z3", "Z2*F4", "Z2*Z2*Z2", "Z3*Z2[x]/(x^2)", "Z4*Z9"):
        assert ring_axioms_hold(ring_from_expr(expr)), expr


def test_broken_table_fails_the_axioms():
    z3 = get_local_ring("Z3").build()
    mul = z3.mul_table.copy()
    mul[1, 2] = mul[2, 1] = 1
    broken = FiniteRing("broken", 3, z3.add_table.copy(), mul, z3.one, z3.labels)
    assert not ring_axioms_hold(broken)


def test_product_labels_are_lexicographic():
    r = ring_from_expr("Z2*Z3")
    assert r.labels == ("(0,0)", "(0,1)", "(0,2)", "(1,0)", "(1,1)", "(1,2)")
    assert r.factor_shape == ("Z2", "Z3")
    assert r.labels[r.one] == "(1,1)"


def test_product_needs_a_factor():
    with pytest.raises(ValueError):
        build_product([])


def test_locality():
    for spec in catalog_local_rings():
        assert is_local(spec.build()), spec.id
    assert not is_local(ring_from_expr("Z2*Z2"))
    assert not is_local(ring_from_expr("Z2*Z3*Z4"))


def test_zero_divisors_are_the_nonunits():
    for expr in ("Z2*Z3", "F4*Z4", "Z2*Z2[x,y]/(x^2,xy,y^2)"):
        r = ring_from_expr(expr)
        assert zero_divisors(r) == nonunits(r), expr


def test_principal_ideal():
    z8 = get_local_ring("Z8").build()
    assert principal_ideal(z8, z8.index_of("2")).labels(z8) == ["0", "2", "4", "6"]
    assert principal_ideal(z8, z8.index_of("4")).labels(z8) == ["0", "4"]
    with pytest.raises(ValueError):
        principal_ideal(z8, 8)


def test_maximal_principal_ideals_of_a_product_of_fields():
    r = ring_from_expr("Z2*Z3")
    ideals = [ideal.labels(r) for ideal in maximal_proper_principal_ideals(r)]
    assert ideals == [["(0,0)", "(0,1)", "(0,2)"], ["(0,0)", "(1,0)"]]


def test_non_principal_maximal_ideal_has_several_maximal_principal_ideals():
    r = get_local_ring("Z2[x,y]/(x^2,xy,y^2)").build()
    ideals = maximal_proper_principal_ideals(r)
    assert len(ideals) == 3
    assert all(len(ideal) == 2 for ideal in ideals)


def test_field_has_the_zero_ideal_only():
    f9 = get_local_ring("F9").build()
    assert [ideal.members for ideal in maximal_proper_principal_ideals(f9)] == [(0,)]


def test_element_set_validation():
    with pytest.raises(ValueError):
        ElementSet((2, 1), 4)
    with pytest.raises(ValueError):
        ElementSet((0, 4), 4)
    s = ElementSet.from_indices(np.array([3, 1, 1]), 4)
    assert s.members == (1, 3)
    assert 3 in s and 2 not in s
    assert s.issubset(ElementSet((0, 1, 3), 4))


def test_prime_powers():
    assert [n for n in range(1, 17) if is_prime_power(n)] == [2, 3, 4, 5, 7, 8, 9, 11, 13, 16]


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
