#!/usr/bin/env python3
"""
Graph Classify - membership tests for the graph classes used in the
classification theorems, each negative verdict carrying a checkable witness.

Structural recognizers (splittance, threshold peeling, cograph decomposition)
run on any size; the brute-force induced-subgraph search is kept for
cross-checking them on small graphs.
"""

from dataclasses import dataclass, field
from itertools import combinations
from typing import Any, Dict, List, Optional, Sequence, Tuple

import networkx as nx
import numpy as np

import config
from ideal_graph import SimpleGraph, components

CLASS_TAGS = ("split", "threshold", "cograph", "cactus", "unicyclic",
              "outerplanar", "planar", "ring_graph")


class ResourceCapError(RuntimeError):
    """A recognizer would exceed its configured resource cap."""


@dataclass
class ClassVerdict:
    tag: str
    value: Optional[bool]                    # None means the verdict was withheld
    witness: Optional[Dict[str, Any]] = None
    reason: str = ""
    embedding: Optional[Dict[int, List[int]]] = field(default=None, repr=False)

    @property
    def withheld(self) -> bool:
        return self.value is None

    def to_dict(self, g: SimpleGraph) -> Dict[str, Any]:
        out: Dict[str, Any] = {"value": self.value}
        if self.witness is not None:
            w = dict(self.witness)
            if "vertices" in w:
                w["vertices"] = [g.labels[i] for i in w["vertices"]]
            if "edges" in w:
                w["edges"] = [[g.labels[a], g.labels[b]] for a, b in w["edges"]]
            out["witness"] = w
        if self.reason:
            out["reason"] = self.reason
        return out


# --------------------------------------------------------------------------
# Forbidden induced subgraphs
# --------------------------------------------------------------------------

# pattern -> (vertex count, sorted degree sequence); unique among graphs of that order
PATTERNS = {
    "P4": (4, (1, 1, 2, 2)),
    "C4": (4, (2, 2, 2, 2)),
    "2K2": (4, (1, 1, 1, 1)),
    "C5": (5, (2, 2, 2, 2, 2)),
}


def induced_pattern(g: SimpleGraph, vertices: Sequence[int]) -> Optional[str]:
    sub = g.adjacency[np.ix_(vertices, vertices)]
    degrees = tuple(sorted(int(d) for d in sub.sum(axis=1)))
    for name, (size, seq) in PATTERNS.items():
        if size == len(vertices) and seq == degrees:
            return name
    return None


def brute_force_forbidden(g: SimpleGraph, patterns: Sequence[str]) -> Optional[Dict[str, Any]]:
    """First induced copy of any of the patterns, by exhaustive subset search."""
    if g.v > config.BRUTE_FORCE_MAX_VERTICES:
        raise ResourceCapError(
            f"brute-force search is capped at {config.BRUTE_FORCE_MAX_VERTICES} vertices, got {g.v}")
    wanted = set(patterns)
    sizes = sorted({PATTERNS[p][0] for p in wanted})
    degrees = g.degrees()
    for size in sizes:
        # vertices of a P4/C4/2K2/C5 all have degree >= 1
        pool = [i for i in range(g.v) if degrees[i] >= 1]
        for subset in combinations(pool, size):
            name = induced_pattern(g, subset)
            if name in wanted:
                return {"kind": name, "vertices": list(subset)}
    return None


def _find_2k2(adj: np.ndarray) -> Optional[List[int]]:
    for a, b in zip(*np.nonzero(np.triu(adj, k=1))):
        rest = ~adj[a] & ~adj[b]
        rest[[a, b]] = False
        idx = np.flatnonzero(rest)
        if len(idx) < 2:
            continue
        sub = np.triu(adj[np.ix_(idx, idx)], k=1)
        if sub.any():
            c, d = np.argwhere(sub)[0]
            return [int(a), int(b), int(idx[c]), int(idx[d])]
    return None


def _find_c4(adj: np.ndarray) -> Optional[List[int]]:
    non = ~adj
    np.fill_diagonal(non, False)
    for a, c in zip(*np.nonzero(np.triu(non, k=1))):
        common = np.flatnonzero(adj[a] & adj[c])
        if len(common) < 2:
            continue
        sub = np.triu(non[np.ix_(common, common)], k=1)
        if sub.any():
            b, d = np.argwhere(sub)[0]
            return [int(a), int(common[b]), int(c), int(common[d])]
    return None


def _find_p4(adj: np.ndarray, extra: Optional[np.ndarray] = None) -> Optional[List[int]]:
    """Induced path a-b-c-d; `extra` optionally restricts both ends a and d."""
    for b, c in zip(*np.nonzero(adj)):
        ends_a = adj[b] & ~adj[c]
        ends_a[c] = False
        ends_d = adj[c] & ~adj[b]
        ends_d[b] = False
        if extra is not None:
            ends_a &= extra
            ends_d &= extra
        A, D = np.flatnonzero(ends_a), np.flatnonzero(ends_d)
        if len(A) == 0 or len(D) == 0:
            continue
        sub = ~adj[np.ix_(A, D)]
        if sub.any():
            i, j = np.argwhere(sub)[0]
            return [int(A[i]), int(b), int(c), int(D[j])]
    return None


def _find_c5(adj: np.ndarray) -> Optional[List[int]]:
    n = adj.shape[0]
    for e in range(n):
        outside = ~adj[e]
        outside[e] = False
        if outside.sum() < 2:
            continue
        # an induced P4 whose ends see e and whose middle does not closes an induced C5
        masked = adj & outside[:, None] & outside[None, :]
        for b, c in zip(*np.nonzero(masked)):
            ends_a = adj[b] & ~adj[c] & adj[e]
            ends_d = adj[c] & ~adj[b] & adj[e]
            A, D = np.flatnonzero(ends_a), np.flatnonzero(ends_d)
            if len(A) == 0 or len(D) == 0:
                continue
            sub = ~adj[np.ix_(A, D)]
            if sub.any():
                i, j = np.argwhere(sub)[0]
                return [int(e), int(A[i]), int(b), int(c), int(D[j])]
    return None


_FINDERS = {"2K2": _find_2k2, "C4": _find_c4, "P4": _find_p4, "C5": _find_c5}


def find_forbidden(g: SimpleGraph, patterns: Sequence[str],
                   within: Optional[Sequence[int]] = None) -> Optional[Dict[str, Any]]:
    """Targeted search for an induced pattern, optionally inside a vertex subset."""
    vertices = list(range(g.v)) if within is None else list(within)
    adj = g.adjacency[np.ix_(vertices, vertices)].copy()
    for name in patterns:
        found = _FINDERS[name](adj)
        if found is not None:
            return {"kind": name, "vertices": [vertices[i] for i in found]}
    return None


def witness_holds(g: SimpleGraph, witness: Dict[str, Any]) -> bool:
    """Re-verify an induced-subgraph witness against the graph."""
    return induced_pattern(g, witness["vertices"]) == witness["kind"]


# --------------------------------------------------------------------------
# Hereditary classes
# --------------------------------------------------------------------------

def is_split(g: SimpleGraph) -> ClassVerdict:
    """Splittance test on the degree sequence."""
    degrees = np.sort(g.degrees())[::-1]
    n = g.v
    m = 0
    for i in range(n):
        if degrees[i] >= i:
            m = i + 1
    lhs = int(degrees[:m].sum())
    rhs = m * (m - 1) + int(degrees[m:].sum())
    if lhs == rhs:
        return ClassVerdict("split", True)
    witness = find_forbidden(g, ("2K2", "C4", "C5"))
    return ClassVerdict("split", False, witness)


def threshold_peeling(adj: np.ndarray) -> List[int]:
    """Peel isolated/universal vertices; returns the stuck remainder (empty when threshold)."""
    alive = np.ones(adj.shape[0], dtype=bool)
    changed = True
    while changed and alive.any():
        changed = False
        count = int(alive.sum())
        deg = (adj & alive[None, :]).sum(axis=1)
        removable = alive & ((deg == 0) | (deg == count - 1))
        if removable.any():
            alive &= ~removable
            changed = True
    return [int(i) for i in np.flatnonzero(alive)]


def is_threshold(g: SimpleGraph) -> ClassVerdict:
    stuck = threshold_peeling(g.adjacency)
    if not stuck:
        return ClassVerdict("threshold", True)
    witness = find_forbidden(g, ("2K2", "C4", "P4"), within=stuck)
    return ClassVerdict("threshold", False, witness)


def is_cograph(g: SimpleGraph) -> ClassVerdict:
    """Recursive decomposition into components of the graph or of its complement."""
    adj = g.adjacency
    comp = ~adj
    np.fill_diagonal(comp, False)
    stack = [np.ones(g.v, dtype=bool)]
    while stack:
        part = stack.pop()
        if part.sum() <= 1:
            continue
        pieces = components(adj, part)
        if len(pieces) == 1:
            pieces = components(comp, part)
        if len(pieces) == 1:
            # connected and co-connected: an induced P4 lives here
            witness = find_forbidden(g, ("P4",), within=[int(i) for i in np.flatnonzero(part)])
            return ClassVerdict("cograph", False, witness)
        for piece in pieces:
            mask = np.zeros(g.v, dtype=bool)
            mask[piece] = True
            stack.append(mask)
    return ClassVerdict("cograph", True)


def structural_matches_brute_force(g: SimpleGraph) -> Dict[str, bool]:
    """Agreement of each structural recognizer with exhaustive forbidden-subgraph search."""
    expected = {
        "split": ("C4", "C5", "2K2"),
        "threshold": ("P4", "C4", "2K2"),
        "cograph": ("P4",),
    }
    recognizers = {"split": is_split, "threshold": is_threshold, "cograph": is_cograph}
    agreement = {}
    for tag, patterns in expected.items():
        verdict = recognizers[tag](g)
        brute = brute_force_forbidden(g, patterns) is None
        ok = verdict.value == brute
        if verdict.value is False:
            ok = ok and witness_holds(g, verdict.witness) and verdict.witness["kind"] in patterns
        agreement[tag] = ok
    return agreement


# --------------------------------------------------------------------------
# Cycle structure
# --------------------------------------------------------------------------

def _disconnected(tag: str, g: SimpleGraph) -> ClassVerdict:
    parts = components(g.adjacency)
    return ClassVerdict(tag, False, {"kind": "disconnected", "vertices": [parts[0][0], parts[1][0]]})


def _diamond(adj: np.ndarray) -> Optional[List[int]]:
    """Edge a-b with two common neighbours c, d: two cycles sharing the edge a-b."""
    for a, b in zip(*np.nonzero(np.triu(adj, k=1))):
        common = np.flatnonzero(adj[a] & adj[b])
        if len(common) >= 2:
            return [int(a), int(b), int(common[0]), int(common[1])]
    return None


def blocks(g: SimpleGraph) -> List[List[int]]:
    """Biconnected components (isolated vertices excluded), each sorted."""
    return sorted(sorted(b) for b in nx.biconnected_components(g.to_networkx()))


def is_cactus(g: SimpleGraph) -> ClassVerdict:
    if not g.is_connected():
        return _disconnected("cactus", g)
    if g.v >= 2 and 2 * g.e > 3 * (g.v - 1):
        diamond = _diamond(g.adjacency)
        if diamond is not None:
            return ClassVerdict("cactus", False, {"kind": "shared-edge cycles", "vertices": diamond})
    for block in blocks(g):
        sub = g.induced(block)
        if sub.v > 2 and sub.e != sub.v:
            return ClassVerdict("cactus", False, {"kind": "block", "vertices": block})
    return ClassVerdict("cactus", True)


def is_unicyclic(g: SimpleGraph) -> ClassVerdict:
    if not g.is_connected():
        return _disconnected("unicyclic", g)
    if g.e == g.v:
        return ClassVerdict("unicyclic", True)
    return ClassVerdict("unicyclic", False, {"kind": "edge-count", "v": g.v, "e": g.e})


# --------------------------------------------------------------------------
# Cliques
# --------------------------------------------------------------------------

def max_clique(g: SimpleGraph) -> List[int]:
    """
    Largest clique: exact branch-and-bound up to the configured size,
    greedy above it (any clique still gives a valid lower bound).
    """
    cached = getattr(g, "_max_clique", None)
    if cached is not None:
        return list(cached)
    if g.v == 0:
        best: List[int] = []
    elif g.v <= config.EXACT_CLIQUE_MAX_VERTICES:
        clique, _ = nx.max_weight_clique(g.to_networkx(), weight=None)
        best = sorted(int(c) for c in clique)
    else:
        adj = g.adjacency
        degrees = g.degrees()
        best = []
        for start in np.argsort(-degrees, kind="stable")[:8]:
            clique = [int(start)]
            candidates = adj[start].copy()
            while candidates.any():
                # highest overall degree among the remaining candidates
                pick = int(np.argmax(np.where(candidates, degrees, -1)))
                clique.append(pick)
                candidates &= adj[pick]
            if len(clique) > len(best):
                best = sorted(clique)
    g._max_clique = tuple(best)
    return best


# --------------------------------------------------------------------------
# Planarity family
# --------------------------------------------------------------------------

def _rotation_from_embedding(embedding: nx.PlanarEmbedding) -> Dict[int, List[int]]:
    return {int(u): [int(w) for w in embedding.neighbors_cw_order(u)] for u in embedding.nodes()}


def kuratowski_edges(graph: nx.Graph) -> List[Tuple[int, int]]:
    planar, counterexample = nx.check_planarity(graph, counterexample=True)
    if planar:
        raise ValueError("graph is planar; no Kuratowski subgraph exists")
    return sorted((min(a, b), max(a, b)) for a, b in counterexample.edges())


def _smoothed_paths(g: SimpleGraph, edges: Sequence[Tuple[int, int]],
                    degrees: Sequence[int]) -> Optional[Tuple[List[int], List[Tuple[int, int, int]]]]:
    """
    Branch vertices of the subgraph spanned by `edges` and the paths between
    them as (start, end, length); None when the edges leave g, the subgraph
    is disconnected or some degree falls outside `degrees`.
    """
    if not edges or any(not g.has_edge(a, b) for a, b in edges):
        return None
    h = nx.Graph(list(edges))
    if not nx.is_connected(h) or any(h.degree(u) not in degrees for u in h.nodes()):
        return None
    branch = [u for u in h.nodes() if h.degree(u) >= 3]
    if not branch:
        return None
    paths = []
    seen = set()
    for u in branch:
        for w in h.neighbors(u):
            prev, cur = u, w
            path_edges = [(u, w)]
            while h.degree(cur) == 2:
                nxt = next(x for x in h.neighbors(cur) if x != prev)
                prev, cur = cur, nxt
                path_edges.append((prev, cur))
            key = frozenset(frozenset(e) for e in path_edges)
            if key in seen:
                continue
            seen.add(key)
            if cur == u:
                return None
            paths.append((u, cur, len(path_edges)))
    return branch, paths


def _simple_core(branch: List[int], paths: List[Tuple[int, int, int]]) -> Optional[nx.Graph]:
    core = nx.MultiGraph()
    core.add_nodes_from(branch)
    core.add_edges_from((a, b) for a, b, _ in paths)
    simple = nx.Graph(core)
    return simple if simple.number_of_edges() == core.number_of_edges() else None


def verify_kuratowski(g: SimpleGraph, edges: Sequence[Tuple[int, int]]) -> Optional[str]:
    """
    Check that `edges` is a subdivision of K5 or K3,3 inside g; returns
    "K5"/"K3,3" or None when the witness does not verify.
    """
    smoothed = _smoothed_paths(g, edges, (2, 3, 4))
    if smoothed is None:
        return None
    branch, paths = smoothed
    simple = _simple_core(branch, paths)
    if simple is None:
        return None
    if len(branch) == 5 and nx.is_isomorphic(simple, nx.complete_graph(5)):
        return "K5"
    if len(branch) == 6 and nx.is_isomorphic(simple, nx.complete_bipartite_graph(3, 3)):
        return "K3,3"
    return None


def verify_outerplanar_witness(g: SimpleGraph, edges: Sequence[Tuple[int, int]]) -> Optional[str]:
    """
    Check that `edges` is a subdivision of K4 or K2,3 inside g; returns
    "K4"/"K2,3" or None when the witness does not verify.
    """
    smoothed = _smoothed_paths(g, edges, (2, 3))
    if smoothed is None:
        return None
    branch, paths = smoothed
    if len(branch) == 4:
        simple = _simple_core(branch, paths)
        if simple is not None and nx.is_isomorphic(simple, nx.complete_graph(4)):
            return "K4"
        return None
    # three internally disjoint paths between two vertices, none of them a chord
    if len(branch) == 2 and len(paths) == 3 and all(length >= 2 for _, _, length in paths):
        return "K2,3"
    return None


def is_planar(g: SimpleGraph) -> ClassVerdict:
    """Planar with a verified rotation system, or not with a Kuratowski witness."""
    if g.v >= 3 and g.e > 3 * g.v - 6:
        clique = max_clique(g)
        if len(clique) >= 5:
            return ClassVerdict("planar", False, {"kind": "K5", "vertices": clique[:5]})
    graph = g.to_networkx()
    planar, embedding = nx.check_planarity(graph)
    if planar:
        embedding.check_structure()
        return ClassVerdict("planar", True, embedding=_rotation_from_embedding(embedding))
    edges = kuratowski_edges(graph)
    kind = verify_kuratowski(g, edges) or "kuratowski"
    vertices = sorted({x for e in edges for x in e})
    return ClassVerdict("planar", False, {"kind": kind, "vertices": vertices, "edges": edges})


def _outerplanar_edges(edges: Sequence[Tuple[int, int]]) -> bool:
    graph = nx.Graph(list(edges))
    apex = ("apex",)
    graph.add_edges_from((apex, u) for u in list(graph.nodes()))
    return nx.check_planarity(graph)[0]


def minimal_outerplanar_obstruction(edges: Sequence[Tuple[int, int]]) -> List[Tuple[int, int]]:
    """
    Drop edges one at a time while the rest stays non-outerplanar. One pass
    leaves an edge-minimal obstruction: a K4 or K2,3 subdivision.
    """
    kept = list(edges)
    for edge in list(kept):
        trial = [e for e in kept if e != edge]
        if not _outerplanar_edges(trial):
            kept = trial
    return sorted(kept)


def is_outerplanar(g: SimpleGraph) -> ClassVerdict:
    """Outerplanar iff adding one universal vertex keeps the graph planar."""
    if g.v >= 4:
        clique = max_clique(g) if g.e > 2 * g.v - 3 else []
        if len(clique) >= 4:
            quad = sorted(clique[:4])
            return ClassVerdict("outerplanar", False, {"kind": "K4", "vertices": quad,
                                                       "edges": list(combinations(quad, 2))})
    graph = g.to_networkx()
    apex = g.v
    graph.add_edges_from((apex, u) for u in range(g.v))
    planar, embedding = nx.check_planarity(graph, counterexample=True)
    if planar:
        embedding.check_structure()
        rotation = _rotation_from_embedding(embedding)
        outer = {u: [w for w in nbrs if w != apex] for u, nbrs in rotation.items() if u != apex}
        return ClassVerdict("outerplanar", True, embedding=outer)
    # the counterexample minus the apex is still non-outerplanar
    edges = minimal_outerplanar_obstruction(
        sorted((min(a, b), max(a, b)) for a, b in embedding.edges() if apex not in (a, b)))
    kind = verify_outerplanar_witness(g, edges) or "unverified"
    vertices = sorted({x for e in edges for x in e})
    return ClassVerdict("outerplanar", False, {"kind": kind, "vertices": vertices, "edges": edges})


# --------------------------------------------------------------------------
# Ring graphs
# --------------------------------------------------------------------------

def graph_rank(g: SimpleGraph) -> int:
    """|E| - |V| + number of components."""
    return g.e - g.v + len(components(g.adjacency))


def chordless_cycles(g: SimpleGraph, cap: Optional[int] = None) -> List[List[int]]:
    cap = config.CYCLE_CAP if cap is None else cap
    found = []
    for cycle in nx.chordless_cycles(g.to_networkx()):
        if len(cycle) < 3:
            continue
        found.append([int(c) for c in cycle])
        if len(found) > cap:
            raise ResourceCapError(f"more than {cap} chordless cycles")
    return found


def graph_frank(g: SimpleGraph, cap: Optional[int] = None) -> int:
    return len(chordless_cycles(g, cap))


def k4_minor_core(g: SimpleGraph) -> List[int]:
    """
    Series-parallel reduction. A graph has no K4 subdivision iff deleting
    vertices of degree <= 1 and suppressing degree-2 vertices empties it;
    what is left otherwise has minimum degree 3.
    """
    h = g.to_networkx()
    queue = [u for u in h.nodes() if h.degree(u) <= 2]
    while queue:
        u = queue.pop()
        if u not in h or h.degree(u) > 2:
            continue
        nbrs = list(h.neighbors(u))
        h.remove_node(u)
        if len(nbrs) == 2:
            h.add_edge(*nbrs)
        queue.extend(w for w in nbrs if h.degree(w) <= 2)
    return sorted(int(u) for u in h.nodes())


def has_k4_subdivision(g: SimpleGraph) -> bool:
    return len(k4_minor_core(g)) > 0


def primitive_cycle_property(cycles: Sequence[Sequence[int]]) -> Optional[Tuple[int, int]]:
    """Pair of chordless cycles sharing two or more edges, or None when PCP holds."""
    edge_sets = []
    for cycle in cycles:
        k = len(cycle)
        edge_sets.append({frozenset((cycle[i], cycle[(i + 1) % k])) for i in range(k)})
    for i in range(len(edge_sets)):
        for j in range(i + 1, len(edge_sets)):
            if len(edge_sets[i] & edge_sets[j]) >= 2:
                return i, j
    return None


def is_ring_graph(g: SimpleGraph) -> ClassVerdict:
    """PCP, rank = frank and no K4 subdivision."""
    if g.v >= 4 and 2 * g.e > 3 * (g.v - 1):
        clique = max_clique(g)
        if len(clique) >= 4:
            return ClassVerdict("ring_graph", False, {"kind": "K4", "vertices": clique[:4]})
    core = k4_minor_core(g)
    if core:
        return ClassVerdict("ring_graph", False, {"kind": "K4 subdivision core", "vertices": core})
    if g.v > config.RING_GRAPH_MAX_VERTICES:
        return ClassVerdict("ring_graph", None,
                            reason=f"vertex cap {config.RING_GRAPH_MAX_VERTICES} exceeded")
    try:
        cycles = chordless_cycles(g)
    except ResourceCapError as e:
        return ClassVerdict("ring_graph", None, reason=str(e))
    clash = primitive_cycle_property(cycles)
    if clash is not None:
        shared = sorted(set(cycles[clash[0]]) | set(cycles[clash[1]]))
        return ClassVerdict("ring_graph", False, {"kind": "PCP violated", "vertices": shared})
    rank, frank = graph_rank(g), len(cycles)
    if rank != frank:
        return ClassVerdict("ring_graph", False, {"kind": "rank != frank", "rank": rank, "frank": frank})
    return ClassVerdict("ring_graph", True)


RECOGNIZERS = {
    "split": is_split,
    "threshold": is_threshold,
    "cograph": is_cograph,
    "cactus": is_cactus,
    "unicyclic": is_unicyclic,
    "outerplanar": is_outerplanar,
    "planar": is_planar,
    "ring_graph": is_ring_graph,
}


def classify_graph(g: SimpleGraph) -> Dict[str, ClassVerdict]:
    """All eight class verdicts in a fixed order."""
    return {tag: RECOGNIZERS[tag](g) for tag in CLASS_TAGS}
