#!/usr/bin/env python3
"""
Ideal graph tests - construction against the definition, fixture counts,
structural forms of two-factor rings and export formats.
"""

import json

import networkx as nx
import numpy as np
import pytest

from ideal_graph import (ExportFormatError, SimpleGraph, complete_graph, cograph_structure_isomorphic,
                         cycle_graph, definition_adjacency, export_graph, join_form_isomorphic,
                         join_of_cliques, upper_ideal_graph)
from ring_catalog import RingUniverseFilter, enumerate_nonlocal_rings, get_local_ring, ring_from_expr
from verify import edge_count_fixtures


def graph_of(expr: str) -> SimpleGraph:
    return upper_ideal_graph(ring_from_expr(expr))


def test_smallest_graphs():
    g = graph_of("Z2*Z2")
    assert (g.v, g.e) == (3, 2)
    assert g.labels == ("(0,0)", "(0,1)", "(1,0)")
    assert (graph_of("Z2*Z3").v, graph_of("Z2*Z3").e) == (4, 4)
    assert (graph_of("Z2*Z2*Z2").v, graph_of("Z2*Z2*Z2").e) == (7, 15)


@pytest.mark.parametrize("expr,v,e", edge_count_fixtures())
def test_fixture_counts(expr, v, e):
    g = graph_of(expr)
    assert (g.v, g.e) == (v, e)


def test_field_graph_is_a_single_vertex():
    g = upper_ideal_graph(get_local_ring("F8").build())
    assert (g.v, g.e) == (1, 0)


def test_local_ring_graph_is_complete_when_maximal_ideal_is_principal():
    g = upper_ideal_graph(get_local_ring("Z9").build())
    assert (g.v, g.e) == (3, 3)


def test_construction_matches_definition():
    flt = RingUniverseFilter(max_factor_order=9, max_factors=4, max_total_order=64)
    checked = 0
    for r in enumerate_nonlocal_rings(flt):
        g = upper_ideal_graph(r)
        assert np.array_equal(g.adjacency, definition_adjacency(r)), r.name
        checked += 1
    assert checked > 100


def test_no_loops_and_symmetric():
    g = graph_of("Z3*Z4*Z2[x]/(x^2)")
    assert not g.adjacency.diagonal().any()
    assert np.array_equal(g.adjacency, g.adjacency.T)


def test_field_products_are_joins_of_cliques():
    fields = ["Z2", "Z3", "F4", "Z5", "Z7", "F8", "F9"]
    for i, a in enumerate(fields):
        for b in fields[i:]:
            r = ring_from_expr(f"{a}*{b}")
            g = upper_ideal_graph(r)
            assert join_form_isomorphic(r, g), r.name
            expected = join_of_cliques(1, get_local_ring(a).order - 1, get_local_ring(b).order - 1)
            assert nx.is_isomorphic(g.to_networkx(), expected), r.name


def test_principal_products_have_the_cograph_structure():
    assert cograph_structure_isomorphic(ring_from_expr("Z2*Z4"), graph_of("Z2*Z4"))
    assert cograph_structure_isomorphic(ring_from_expr("Z8*Z9"), graph_of("Z8*Z9"))
    r = ring_from_expr("Z2*Z2[x,y]/(x^2,xy,y^2)")
    assert not cograph_structure_isomorphic(r, upper_ideal_graph(r))


def test_json_export_is_deterministic():
    payload = export_graph(graph_of("Z2*Z2"), "json", ring="Z2*Z2")
    text = payload.decode("utf-8")
    assert '"v":3,"e":2' in text
    assert json.loads(text) == {"ring": "Z2*Z2", "v": 3, "e": 2,
                                "vertices": ["(0,0)", "(0,1)", "(1,0)"], "edges": [[0, 1], [0, 2]]}
    assert payload == export_graph(graph_of("Z2*Z2"), "json", ring="Z2*Z2")


def test_dot_export():
    text = export_graph(graph_of("Z2*Z3"), "dot").decode("utf-8")
    assert text.startswith("graph G {")
    assert text.count(" -- ") == 4


def test_unknown_export_format():
    with pytest.raises(ExportFormatError, match="gml"):
        export_graph(graph_of("Z2*Z3"), "gml")


def test_simple_graph_helpers():
    g = cycle_graph(5)
    assert g.is_connected()
    assert g.complement().e == 5
    assert g.induced([0, 1, 2]).e == 2
    assert SimpleGraph.from_networkx(nx.cycle_graph(5)).same_as(g)
    assert complete_graph(4).degrees().tolist() == [3, 3, 3, 3]
    with pytest.raises(ValueError):
        SimpleGraph.from_edges(["a"], [(0, 0)])


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
