#!/usr/bin/env python3
"""
Ideal Graph - the upper ideal relation graph of a finite ring.

Vertices are the non-units; x ~ y when some non-unit z has (x), (y) inside (z).
Since every proper principal ideal sits in a maximal one, the graph is the
union of the cliques spanned by the maximal proper principal ideals.
"""

import json
from typing import Iterable, List, Optional, Sequence, Tuple

import networkx as nx
import numpy as np

from ring_catalog import get_local_ring
from ring_core import FiniteRing, maximal_proper_principal_ideals, principal_ideal_masks


class ExportFormatError(ValueError):
    """Unknown graph export format."""


EXPORT_FORMATS = ("dot", "json")


class SimpleGraph:
    """Undirected simple graph on labelled vertices, stored as a dense adjacency."""

    def __init__(self, labels: Sequence[str], adjacency: np.ndarray, name: str = ""):
        adjacency = np.asarray(adjacency, dtype=bool)
        n = len(labels)
        if adjacency.shape != (n, n):
            raise ValueError(f"adjacency shape {adjacency.shape} does not match {n} labels")
        if not np.array_equal(adjacency, adjacency.T):
            raise ValueError("adjacency must be symmetric")
        if adjacency.diagonal().any():
            raise ValueError("simple graphs have no loops")
        adjacency = adjacency.copy()
        adjacency.setflags(write=False)
        self.labels: Tuple[str, ...] = tuple(labels)
        self.adjacency = adjacency
        self.name = name
        self._index = {label: i for i, label in enumerate(self.labels)}

    @classmethod
    def from_edges(cls, labels: Sequence[str], edges: Iterable[Tuple[int, int]],
                   name: str = "") -> "SimpleGraph":
        n = len(labels)
        adj = np.zeros((n, n), dtype=bool)
        for a, b in edges:
            if a == b:
                raise ValueError(f"loop at vertex {labels[a]}")
            adj[a, b] = adj[b, a] = True
        return cls(labels, adj, name)

    @classmethod
    def from_networkx(cls, graph: nx.Graph, name: str = "") -> "SimpleGraph":
        nodes = list(graph.nodes())
        pos = {u: i for i, u in enumerate(nodes)}
        return cls.from_edges([str(u) for u in nodes],
                              [(pos[a], pos[b]) for a, b in graph.edges()], name)

    @property
    def v(self) -> int:
        return len(self.labels)

    @property
    def e(self) -> int:
        return int(self.adjacency.sum()) // 2

    def index_of(self, label: str) -> int:
        return self._index[label]

    def degrees(self) -> np.ndarray:
        return self.adjacency.sum(axis=1)

    def neighbors(self, i: int) -> np.ndarray:
        return np.flatnonzero(self.adjacency[i])

    def has_edge(self, a: int, b: int) -> bool:
        return bool(self.adjacency[a, b])

    def edges(self) -> List[Tuple[int, int]]:
        rows, cols = np.nonzero(np.triu(self.adjacency, k=1))
        return [(int(a), int(b)) for a, b in zip(rows, cols)]

    def induced(self, vertices: Sequence[int]) -> "SimpleGraph":
        vertices = list(vertices)
        return SimpleGraph([self.labels[i] for i in vertices],
                           self.adjacency[np.ix_(vertices, vertices)], self.name)

    def complement(self) -> "SimpleGraph":
        comp = ~self.adjacency
        np.fill_diagonal(comp, False)
        return SimpleGraph(self.labels, comp, self.name)

    def is_connected(self) -> bool:
        if self.v == 0:
            return True
        return len(component_of(self.adjacency, 0)) == self.v

    def to_networkx(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(range(self.v))
        graph.add_edges_from(self.edges())
        return graph

    def same_as(self, other: "SimpleGraph") -> bool:
        """Equal as labelled graphs (vertex order may differ)."""
        if set(self.labels) != set(other.labels):
            return False
        order = [other.index_of(label) for label in self.labels]
        return bool(np.array_equal(self.adjacency, other.adjacency[np.ix_(order, order)]))

    def __repr__(self) -> str:
        return f"SimpleGraph({self.name!r}, v={self.v}, e={self.e})"


def component_of(adjacency: np.ndarray, start: int, allowed: Optional[np.ndarray] = None) -> List[int]:
    """Vertices reachable from start, optionally restricted to a boolean mask."""
    n = adjacency.shape[0]
    allowed = np.ones(n, dtype=bool) if allowed is None else allowed
    seen = np.zeros(n, dtype=bool)
    seen[start] = True
    frontier = seen.copy()
    while frontier.any():
        reach = adjacency[frontier].any(axis=0) & allowed & ~seen
        seen |= reach
        frontier = reach
    return [int(i) for i in np.flatnonzero(seen)]


def components(adjacency: np.ndarray, allowed: Optional[np.ndarray] = None) -> List[List[int]]:
    n = adjacency.shape[0]
    allowed = np.ones(n, dtype=bool) if allowed is None else allowed.copy()
    remaining = allowed.copy()
    parts = []
    while remaining.any():
        start = int(np.flatnonzero(remaining)[0])
        part = component_of(adjacency, start, allowed)
        parts.append(part)
        remaining[part] = False
    return parts


def complete_graph(n: int) -> SimpleGraph:
    adj = ~np.eye(n, dtype=bool)
    return SimpleGraph([str(i) for i in range(n)], adj, f"K{n}")


def cycle_graph(n: int) -> SimpleGraph:
    return SimpleGraph.from_edges([str(i) for i in range(n)],
                                  [(i, (i + 1) % n) for i in range(n)], f"C{n}")


def path_graph(n: int) -> SimpleGraph:
    return SimpleGraph.from_edges([str(i) for i in range(n)],
                                  [(i, i + 1) for i in range(n - 1)], f"P{n}")


def empty_graph(n: int) -> SimpleGraph:
    return SimpleGraph([str(i) for i in range(n)], np.zeros((n, n), dtype=bool), f"E{n}")


def upper_ideal_graph(r: FiniteRing) -> SimpleGraph:
    """
    CORE FEATURE: build the upper ideal relation graph of r.
    """
    nonunit_idx = np.flatnonzero(~r.unit_mask())
    cliques = np.array([ideal.mask()[nonunit_idx] for ideal in maximal_proper_principal_ideals(r)],
                       dtype=np.int32)
    adj = (cliques.T @ cliques) > 0
    np.fill_diagonal(adj, False)
    return SimpleGraph([r.labels[i] for i in nonunit_idx], adj, r.name)


def definition_adjacency(r: FiniteRing) -> np.ndarray:
    """
    Adjacency straight from the definition: some non-unit z with (x), (y) in (z).
    Quadratic in the number of non-units; kept as an oracle for small rings.
    """
    nonunit_idx = np.flatnonzero(~r.unit_mask())
    ideals = principal_ideal_masks(r, nonunit_idx)
    # contained[x, z] is True when (x) is a subset of (z)
    contained = ~(ideals[:, None, :] & ~ideals[None, :, :]).any(axis=2)
    c = contained.astype(np.int32)
    adj = (c @ c.T) > 0
    np.fill_diagonal(adj, False)
    return adj


def export_graph(g: SimpleGraph, fmt: str, ring: Optional[str] = None) -> bytes:
    """Deterministic DOT or JSON serialisation of a graph."""
    edges = g.edges()
    if fmt == "json":
        payload = {
            "ring": ring if ring is not None else g.name,
            "v": g.v,
            "e": g.e,
            "vertices": list(g.labels),
            "edges": [[a, b] for a, b in edges],
        }
        return (json.dumps(payload, separators=(",", ":")) + "\n").encode("utf-8")
    if fmt == "dot":
        lines = ["graph G {"]
        lines += [f"  {json.dumps(label)};" for label in g.labels]
        lines += [f"  {json.dumps(g.labels[a])} -- {json.dumps(g.labels[b])};" for a, b in edges]
        lines.append("}")
        return ("\n".join(lines) + "\n").encode("utf-8")
    raise ExportFormatError(f"unknown export format \"{fmt}\"; use one of {', '.join(EXPORT_FORMATS)}")


def join_form_isomorphic(r: FiniteRing, g: SimpleGraph) -> bool:
    """
    For a product of two fields F1 x F2, check that the identity on labels is an
    isomorphism onto K1 v (K_{|F1|-1} u K_{|F2|-1}) with (0,0) as the cut vertex.
    """
    if r.element_coords is None or r.element_coords.shape[1] != 2:
        return False
    expected = np.zeros_like(g.adjacency)
    coords = {r.labels[i]: tuple(int(c) for c in r.element_coords[i]) for i in range(r.order)}
    vcoords = [coords[label] for label in g.labels]
    for a, ca in enumerate(vcoords):
        for b, cb in enumerate(vcoords):
            if a == b:
                continue
            zero_a, zero_b = ca == (0, 0), cb == (0, 0)
            same_side = (ca[1] == 0 and cb[1] == 0) or (ca[0] == 0 and cb[0] == 0)
            expected[a, b] = zero_a or zero_b or same_side
    return bool(np.array_equal(expected, g.adjacency))


def join_of_cliques(center: int, left: int, right: int) -> nx.Graph:
    """K_center v (K_left u K_right) as a networkx graph."""
    graph = nx.complete_graph(center)
    left_nodes = [("L", i) for i in range(left)]
    right_nodes = [("R", i) for i in range(right)]
    graph.add_nodes_from(left_nodes + right_nodes)
    for side in (left_nodes, right_nodes):
        graph.add_edges_from((a, b) for i, a in enumerate(side) for b in side[i + 1:])
        graph.add_edges_from((c, s) for c in range(center) for s in side)
    return graph


def cograph_structure_isomorphic(r: FiniteRing, g: SimpleGraph) -> bool:
    """
    For R1 x R2 with both maximal ideals principal, check that the identity on
    labels is an isomorphism onto K_a v (K_b u K_c): the core M1 x M2 joined to
    the two clique sides M1 x U2 and U1 x M2.
    """
    if r.element_coords is None or len(r.factor_shape) != 2:
        return False
    m1, m2 = (get_local_ring(rid).maximal_ideal.mask() for rid in r.factor_shape)
    coords = {r.labels[i]: r.element_coords[i] for i in range(r.order)}
    in_first = np.array([bool(m1[coords[label][0]]) for label in g.labels])
    in_second = np.array([bool(m2[coords[label][1]]) for label in g.labels])
    expected = (in_first[:, None] & in_first[None, :]) | (in_second[:, None] & in_second[None, :])
    np.fill_diagonal(expected, False)
    return bool(np.array_equal(expected, g.adjacency))
