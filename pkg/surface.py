#!/usr/bin/env python3
"""
Surface - genus and crosscap number of upper ideal graphs.

Lower bounds come from Euler's formula, the largest clique and a clique
face-hosting argument; upper bounds come from traced embedding schemes
(clique formulas, stored certificates, face insertion into clique
certificates, search, or the trivial neighbour-sorted rotation). A value is
reported exact only when both sides meet.
"""

import os
import re
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import permutations, product
from math import factorial
from typing import Dict, FrozenSet, Iterator, List, Optional, Sequence, Set, Tuple

import networkx as nx
import numpy as np

import config
from graph_classify import blocks, is_planar, max_clique
from ideal_graph import SimpleGraph, complete_graph, components, upper_ideal_graph
from ring_catalog import ring_from_expr


class EmbeddingError(ValueError):
    """Malformed embedding scheme or a scheme that does not trace to its declared surface."""


class CertificateError(ValueError):
    """Missing certificate or certificate for the wrong graph."""


# --------------------------------------------------------------------------
# Clique formulas
# --------------------------------------------------------------------------

def clique_genus(n: int) -> int:
    if n < 1:
        raise ValueError("clique size must be positive")
    if n <= 4:
        return 0
    return -(-(n - 3) * (n - 4) // 12)


def clique_crosscap(n: int) -> int:
    if n < 1:
        raise ValueError("clique size must be positive")
    if n <= 4:
        return 0
    if n == 7:
        return 3
    return -(-(n - 3) * (n - 4) // 6)


# --------------------------------------------------------------------------
# Surfaces and schemes
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class Surface:
    """Orientable surface of genus g, or the non-orientable surface with k crosscaps."""
    orientable: bool
    genus: int

    def __post_init__(self):
        if self.genus < 0 or (not self.orientable and self.genus == 0):
            raise ValueError(f"no such surface: {self.kind} {self.genus}")

    @property
    def kind(self) -> str:
        return "orientable" if self.orientable else "nonorientable"

    @property
    def euler_characteristic(self) -> int:
        return 2 - 2 * self.genus if self.orientable else 2 - self.genus

    def __str__(self) -> str:
        return f"{'S' if self.orientable else 'N'}{self.genus}"


SPHERE = Surface(True, 0)
TORUS = Surface(True, 1)
PROJECTIVE_PLANE = Surface(False, 1)

_SURFACE_NAMES = {"sphere": SPHERE, "plane": SPHERE, "torus": TORUS, "projective": PROJECTIVE_PLANE}


def parse_surface(text: str) -> Surface:
    """'sphere', 'torus', 'projective', 'S<g>' or 'N<k>'."""
    key = text.strip().lower()
    if key in _SURFACE_NAMES:
        return _SURFACE_NAMES[key]
    match = re.fullmatch(r"([sn])(\d+)", key)
    if not match:
        raise ValueError(f"unknown surface \"{text}\"; use sphere, torus, projective, S<g> or N<k>")
    return Surface(match.group(1) == "s", int(match.group(2)))


@dataclass
class EmbeddingScheme:
    """
    Signed rotation system on vertex labels. Only edges with sign -1 are
    stored; a scheme without negative edges is orientable.
    """
    rotation: Dict[str, List[str]]
    negative: Set[FrozenSet[str]] = field(default_factory=set)
    declared: Optional[Surface] = None

    def sign(self, u: str, v: str) -> int:
        return -1 if frozenset((u, v)) in self.negative else 1

    def to_text(self) -> str:
        """Certificate file format."""
        if self.declared is None:
            raise EmbeddingError("a certificate needs a declared surface")
        lines = [f"surface {self.declared.kind} {self.declared.genus}"]
        lines += [" ".join(["rot", u] + nbrs) for u, nbrs in self.rotation.items()]
        position = {u: i for i, u in enumerate(self.rotation)}
        signs = sorted((tuple(sorted(pair, key=position.get)) for pair in self.negative),
                       key=lambda p: (position[p[0]], position[p[1]]))
        lines += [f"sign {a} {b} -1" for a, b in signs]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "EmbeddingScheme":
        rotation: Dict[str, List[str]] = {}
        negative: Set[FrozenSet[str]] = set()
        declared = None
        for number, line in enumerate(text.splitlines(), start=1):
            parts = line.split()
            if not parts:
                continue
            if parts[0] == "surface" and len(parts) == 3:
                if parts[1] not in ("orientable", "nonorientable"):
                    raise EmbeddingError(f"line {number}: unknown surface kind {parts[1]!r}")
                try:
                    declared = Surface(parts[1] == "orientable", int(parts[2]))
                except ValueError as e:
                    raise EmbeddingError(f"line {number}: {e}") from None
            elif parts[0] == "rot" and len(parts) >= 2:
                rotation[parts[1]] = parts[2:]
            elif parts[0] == "sign" and len(parts) == 4 and parts[3] == "-1":
                negative.add(frozenset((parts[1], parts[2])))
            else:
                raise EmbeddingError(f"line {number}: cannot parse {line!r}")
        if declared is None:
            raise EmbeddingError("missing 'surface' header line")
        return cls(rotation, negative, declared)

    @classmethod
    def from_indexed(cls, g: SimpleGraph, rot: Sequence[Sequence[int]], negative: Set[FrozenSet[int]],
                     declared: Optional[Surface] = None) -> "EmbeddingScheme":
        labels = g.labels
        return cls({labels[u]: [labels[w] for w in rot[u]] for u in range(g.v)},
                   {frozenset(labels[x] for x in pair) for pair in negative}, declared)


@dataclass
class TraceResult:
    v: int
    e: int
    f: int
    surface: Surface
    faces: List[List[Tuple[int, int, int]]] = field(default_factory=list, repr=False)

    @property
    def euler_characteristic(self) -> int:
        return self.v - self.e + self.f

    @property
    def face_bound_holds(self) -> bool:
        """2e >= 3f for simple graphs with at least three vertices."""
        return self.v < 3 or 2 * self.e >= 3 * self.f


# --------------------------------------------------------------------------
# Face tracing
# --------------------------------------------------------------------------

def _indexed(g: SimpleGraph, scheme: EmbeddingScheme) -> Tuple[List[List[int]], Set[FrozenSet[int]]]:
    if set(scheme.rotation) != set(g.labels):
        raise EmbeddingError("rotation vertices differ from the graph's vertices")
    rot: List[List[int]] = [[] for _ in range(g.v)]
    for label, nbrs in scheme.rotation.items():
        u = g.index_of(label)
        try:
            order = [g.index_of(w) for w in nbrs]
        except KeyError as e:
            raise EmbeddingError(f"rotation at {label} names unknown vertex {e}") from None
        if sorted(order) != [int(w) for w in g.neighbors(u)]:
            raise EmbeddingError(f"rotation at {label} is not a permutation of its neighbours")
        rot[u] = order
    negative = set()
    for pair in scheme.negative:
        if len(pair) != 2:
            raise EmbeddingError(f"sign on a loop at {next(iter(pair))}")
        a, b = tuple(pair)
        if a not in g.labels or b not in g.labels or not g.has_edge(g.index_of(a), g.index_of(b)):
            raise EmbeddingError(f"sign on non-edge {a} {b}")
        negative.add(frozenset((g.index_of(a), g.index_of(b))))
    return rot, negative


def trace_indexed(rot: Sequence[Sequence[int]],
                  negative: Set[FrozenSet[int]]) -> List[List[Tuple[int, int, int]]]:
    """
    Facial walks of a signed rotation system. Each walk is a list of corners
    (vertex, arrived-from, direction); the reverse of every traced state is
    consumed with it so each face is counted once.
    """
    pos = [{w: i for i, w in enumerate(nbrs)} for nbrs in rot]
    used: Set[Tuple[int, int, int]] = set()
    faces = []
    for u in range(len(rot)):
        for v in rot[u]:
            for eps in (1, -1):
                if (u, v, eps) in used:
                    continue
                a, b, s = u, v, eps
                walk = []
                while (a, b, s) not in used:
                    lam = -1 if frozenset((a, b)) in negative else 1
                    used.add((a, b, s))
                    used.add((b, a, -s * lam))
                    s2 = s * lam
                    nbrs = rot[b]
                    i = pos[b][a]
                    w = nbrs[(i + 1) % len(nbrs)] if s2 == 1 else nbrs[(i - 1) % len(nbrs)]
                    walk.append((b, a, s2))
                    a, b, s = b, w, s2
                faces.append(walk)
    return faces


def switching_orientable(rot: Sequence[Sequence[int]], negative: Set[FrozenSet[int]]) -> bool:
    """True when vertex switching can make every edge sign positive."""
    colour: Dict[int, int] = {}
    for start in range(len(rot)):
        if start in colour:
            continue
        colour[start] = 1
        stack = [start]
        while stack:
            u = stack.pop()
            for w in rot[u]:
                want = colour[u] * (-1 if frozenset((u, w)) in negative else 1)
                if w not in colour:
                    colour[w] = want
                    stack.append(w)
                elif colour[w] != want:
                    return False
    return True


def _surface_of(v: int, e: int, f: int, orientable: bool) -> Surface:
    chi = v - e + f
    if orientable:
        if chi % 2:
            raise EmbeddingError(f"orientable trace with odd Euler characteristic {chi}")
        return Surface(True, (2 - chi) // 2)
    return Surface(False, 2 - chi)


def trace_faces(g: SimpleGraph, scheme: EmbeddingScheme) -> TraceResult:
    """
    CORE FEATURE: trace the faces of a scheme on g and derive its surface;
    a declared surface must agree with the trace.
    """
    if not g.is_connected():
        raise EmbeddingError("face tracing needs a connected graph")
    rot, negative = _indexed(g, scheme)
    faces = trace_indexed(rot, negative)
    if g.e == 0:
        faces = [[]]
    surface = _surface_of(g.v, g.e, len(faces), switching_orientable(rot, negative))
    if scheme.declared is not None and scheme.declared != surface:
        raise EmbeddingError(f"declared {scheme.declared} but the scheme traces to {surface}")
    return TraceResult(g.v, g.e, len(faces), surface, faces)


# --------------------------------------------------------------------------
# Lower bounds
# --------------------------------------------------------------------------

def euler_only_bounds(g: SimpleGraph) -> Tuple[int, int]:
    if g.v < 3:
        return 0, 0
    excess = g.e - 3 * g.v + 6
    return max(0, -(-excess // 6)), max(0, -(-excess // 3))


def euler_lower_bounds(g: SimpleGraph) -> Tuple[int, int]:
    """Euler bounds from 2e >= 3f, raised to the bounds of the largest clique found."""
    genus_lb, crosscap_lb = euler_only_bounds(g)
    omega = len(max_clique(g))
    if omega:
        genus_lb = max(genus_lb, clique_genus(omega))
        crosscap_lb = max(crosscap_lb, clique_crosscap(omega))
    return genus_lb, crosscap_lb


def _cyclic_orders(items: Sequence[int]) -> Iterator[Tuple[int, ...]]:
    """Cyclic orders up to rotation and reflection."""
    if len(items) <= 3:
        yield tuple(items)
        return
    first, rest = items[0], list(items[1:])
    for perm in permutations(rest):
        if perm[0] < perm[-1]:
            yield (first,) + perm


def _hostable(g: SimpleGraph, part: List[int], attachments: List[int]) -> bool:
    """Can the component sit in a disk whose boundary carries the attachments in some order?"""
    inside = set(part)
    base = nx.Graph()
    for u in part:
        for w in g.neighbors(u):
            w = int(w)
            if w in inside or w in attachments:
                base.add_edge(u, w)
    apex = -1
    for order in _cyclic_orders(attachments):
        h = base.copy()
        if len(order) >= 2:
            h.add_edges_from((order[i], order[(i + 1) % len(order)]) for i in range(len(order)))
        h.add_edges_from((apex, a) for a in order)
        if nx.check_planarity(h)[0]:
            return True
    return False


def face_hosting_raises(g: SimpleGraph, clique: Sequence[int], surface: Surface) -> bool:
    """
    True when g cannot embed on `surface`, given that the clique's minimum
    surface is exactly `surface` and every face of any clique embedding there
    is a cycle of length <= 5.
    """
    m = len(clique)
    if m < 5:
        return False
    if surface.orientable:
        if clique_genus(m) != surface.genus:
            return False
    else:
        # the clique must not fit on any surface of smaller Euler genus
        if clique_crosscap(m) != surface.genus or 2 * clique_genus(m) < surface.genus:
            return False
    edges = m * (m - 1) // 2
    faces = surface.euler_characteristic - m + edges
    longest = 2 * edges - 3 * (faces - 1)
    if longest > 5:
        return False
    outside = np.ones(g.v, dtype=bool)
    outside[list(clique)] = False
    in_clique = set(clique)
    for part in components(g.adjacency, outside):
        attachments = sorted({int(w) for u in part for w in g.neighbors(u) if int(w) in in_clique})
        if len(attachments) > longest:
            return True
        if not _hostable(g, part, attachments):
            return True
    return False


# --------------------------------------------------------------------------
# Certificates
# --------------------------------------------------------------------------

# certificate name -> the graph it must embed (ring expression or K<n>)
CERTIFICATE_GRAPHS: Dict[str, str] = {
    "z2_z2_z2_sphere": "Z2*Z2*Z2",
    "z2_z4_sphere": "Z2*Z4",
    "z2_z2dual_sphere": "Z2*Z2[x]/(x^2)",
    "z3_z4_torus": "Z3*Z4",
    "z3_z2dual_torus": "Z3*Z2[x]/(x^2)",
    "z2_z2_z3_genus2": "Z2*Z2*Z3",
    "f4_z5_projective": "F4*Z5",
    "z3_z4_projective": "Z3*Z4",
    "z3_z2dual_projective": "Z3*Z2[x]/(x^2)",
    "k5_torus": "K5",
    "k5_projective": "K5",
    "k6_torus": "K6",
    "k6_projective": "K6",
    "k7_torus": "K7",
    "k7_n3": "K7",
    "k8_genus2": "K8",
    "k8_n4": "K8",
}

# minimum-surface certificates of complete graphs, used for face insertion
CLIQUE_CERTIFICATES: Dict[Tuple[int, bool], str] = {
    (5, True): "k5_torus", (6, True): "k6_torus", (7, True): "k7_torus", (8, True): "k8_genus2",
    (5, False): "k5_projective", (6, False): "k6_projective", (7, False): "k7_n3", (8, False): "k8_n4",
}


def certificate_path(name: str, cert_dir: Optional[str] = None) -> str:
    return os.path.join(cert_dir or config.CERT_DIR, f"{name}.emb")


def load_certificate(name: str, cert_dir: Optional[str] = None) -> EmbeddingScheme:
    path = certificate_path(name, cert_dir)
    if not os.path.exists(path):
        raise CertificateError(f"no certificate named \"{name}\" in {os.path.dirname(path)}")
    with open(path, "r", encoding="utf-8") as handle:
        return EmbeddingScheme.from_text(handle.read())


def save_certificate(scheme: EmbeddingScheme, name: str, cert_dir: Optional[str] = None) -> str:
    path = certificate_path(sanitize_name(name), cert_dir)
    os.makedirs(os.path.dirname(path), exist_ok=True)
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(scheme.to_text())
    return path


def sanitize_name(name: str) -> str:
    return re.sub(r"[^A-Za-z0-9_.-]+", "_", name).strip("_")


def certificate_names(cert_dir: Optional[str] = None) -> List[str]:
    directory = cert_dir or config.CERT_DIR
    if not os.path.isdir(directory):
        return []
    return sorted(f[:-4] for f in os.listdir(directory) if f.endswith(".emb"))


def graph_for_certificate(name: str) -> SimpleGraph:
    source = CERTIFICATE_GRAPHS.get(name)
    if source is None:
        raise CertificateError(f"certificate \"{name}\" has no registered graph")
    match = re.fullmatch(r"K(\d+)", source)
    if match:
        return complete_graph(int(match.group(1)))
    return upper_ideal_graph(ring_from_expr(source))


def graph_from_scheme(scheme: EmbeddingScheme, name: str = "") -> SimpleGraph:
    """The graph a scheme describes; saved search results carry no registered source."""
    labels = list(scheme.rotation)
    index = {label: i for i, label in enumerate(labels)}
    edges = set()
    for u, nbrs in scheme.rotation.items():
        for w in nbrs:
            if w not in index:
                raise CertificateError(f"{name}: rotation at {u} names unknown vertex {w}")
            edges.add((min(index[u], index[w]), max(index[u], index[w])))
    return SimpleGraph.from_edges(labels, sorted(edges), name)


def verify_certificate(name: str, cert_dir: Optional[str] = None) -> TraceResult:
    """
    CORE FEATURE: load a stored certificate, check it embeds exactly its
    registered graph and re-trace it against the declared surface.
    """
    scheme = load_certificate(name, cert_dir)
    g = graph_for_certificate(name) if name in CERTIFICATE_GRAPHS else graph_from_scheme(scheme, name)
    try:
        result = trace_faces(g, scheme)
    except EmbeddingError as e:
        raise CertificateError(f"{name}: {e}") from None
    if not result.face_bound_holds:
        raise CertificateError(f"{name}: 2e >= 3f fails ({result.e} edges, {result.f} faces)")
    return result


@lru_cache(maxsize=8)
def _certificate_corpus(cert_dir: str) -> Tuple[Tuple[str, EmbeddingScheme], ...]:
    corpus = []
    for name in certificate_names(cert_dir):
        try:
            corpus.append((name, load_certificate(name, cert_dir)))
        except EmbeddingError as e:
            config.say(f"⚠️ Skipping unreadable certificate {name}: {e}")
    return tuple(corpus)


def find_certificate(g: SimpleGraph, orientable: bool,
                     cert_dir: Optional[str] = None) -> Optional[Tuple[str, TraceResult]]:
    """Best stored certificate of the given kind whose graph is exactly g (same labels and edges)."""
    wanted = {label: sorted(g.labels[w] for w in g.neighbors(i)) for i, label in enumerate(g.labels)}
    best = None
    for name, scheme in _certificate_corpus(cert_dir or config.CERT_DIR):
        if set(scheme.rotation) != set(wanted):
            continue
        if any(sorted(scheme.rotation[u]) != wanted[u] for u in wanted):
            continue
        try:
            result = trace_faces(g, scheme)
        except EmbeddingError:
            continue
        if result.surface.orientable != orientable:
            continue
        if best is None or result.euler_characteristic > best[1].euler_characteristic:
            best = (name, result)
    return best


# --------------------------------------------------------------------------
# Face insertion
# --------------------------------------------------------------------------

def _insert_vertex(rot: List[List[int]], negative: Set[FrozenSet[int]], x: int, nbrs: Sequence[int]) -> bool:
    """Put x inside a face that carries every vertex of nbrs, joining it to one corner of each."""
    wanted = set(nbrs)
    for face in trace_indexed(rot, negative):
        chosen, seen = [], set()
        for corner in face:
            if corner[0] in wanted and corner[0] not in seen:
                seen.add(corner[0])
                chosen.append(corner)
        if seen != wanted:
            continue
        for at, came_from, direction in chosen:
            i = rot[at].index(came_from)
            rot[at].insert(i + 1 if direction == 1 else i, x)
            if direction == -1:
                negative.add(frozenset((at, x)))
        rot[x] = [corner[0] for corner in reversed(chosen)]
        return True
    return False


def insert_into_clique(g: SimpleGraph, clique: Sequence[int],
                       base: EmbeddingScheme) -> Optional[EmbeddingScheme]:
    """
    Extend a scheme of the complete graph on len(clique) vertices to g by face
    insertion of the remaining vertices; None when some vertex finds no face.
    """
    m = len(clique)
    base_labels = list(base.rotation)
    if len(base_labels) != m:
        return None
    mapping = {label: clique[i] for i, label in enumerate(base_labels)}
    rot: List[List[int]] = [[] for _ in range(g.v)]
    for label, nbrs in base.rotation.items():
        rot[mapping[label]] = [mapping[w] for w in nbrs]
    negative = {frozenset(mapping[x] for x in pair) for pair in base.negative}
    placed = set(clique)
    rest = [u for u in range(g.v) if u not in placed]
    while rest:
        for x in rest:
            nbrs = [int(w) for w in g.neighbors(x) if int(w) in placed]
            if nbrs and _insert_vertex(rot, negative, x, nbrs):
                placed.add(x)
                rest.remove(x)
                break
        else:
            return None
    for u in range(g.v):
        if sorted(rot[u]) != [int(w) for w in g.neighbors(u)]:
            return None
    scheme = EmbeddingScheme.from_indexed(g, rot, negative)
    scheme.declared = trace_faces(g, scheme).surface
    return scheme


# --------------------------------------------------------------------------
# Search
# --------------------------------------------------------------------------

def baseline_scheme(g: SimpleGraph) -> EmbeddingScheme:
    """Orientable scheme with every rotation in label-index order."""
    rot = [[int(w) for w in g.neighbors(u)] for u in range(g.v)]
    return EmbeddingScheme.from_indexed(g, rot, set())


def _target_faces(g: SimpleGraph, target: Surface) -> int:
    return target.euler_characteristic - g.v + g.e


def _reaches(g: SimpleGraph, rot, negative, target: Surface) -> Optional[Surface]:
    faces = len(trace_indexed(rot, negative))
    if faces < _target_faces(g, target):
        return None
    orientable = switching_orientable(rot, negative)
    if orientable != target.orientable:
        return None
    return _surface_of(g.v, g.e, faces, orientable)


def _spanning_tree_edges(g: SimpleGraph) -> Set[FrozenSet[int]]:
    tree = nx.minimum_spanning_tree(g.to_networkx())
    return {frozenset(e) for e in tree.edges()}


def _reflection_vertex(degrees: Sequence[int]) -> Optional[int]:
    """First vertex whose rotation has a distinct mirror image."""
    for u, d in enumerate(degrees):
        if d >= 3:
            return u
    return None


def exhaustive_states(g: SimpleGraph, target: Surface) -> int:
    """Number of schemes the exhaustive search visits (one rotation fixed up to mirror image)."""
    degrees = [int(d) for d in g.degrees()]
    count = 1
    for d in degrees:
        count *= factorial(max(d - 1, 0))
    if _reflection_vertex(degrees) is not None:
        count //= 2
    if not target.orientable:
        count *= 2 ** (g.e - g.v + 1)
    return count


def exhaustive_search(g: SimpleGraph, target: Surface) -> Optional[EmbeddingScheme]:
    """
    Try every rotation system (and, for non-orientable targets, every sign
    pattern off a spanning tree). None means no scheme of g reaches `target`
    or a simpler surface of the same kind.
    """
    if g.e == 0:
        return EmbeddingScheme({label: [] for label in g.labels}, set(), SPHERE) if target.orientable else None
    nbrs = [[int(w) for w in g.neighbors(u)] for u in range(g.v)]
    # reversing every rotation keeps the faces, and keeps tree signs under switching
    mirror = _reflection_vertex([len(n) for n in nbrs])
    choices = []
    for u in range(g.v):
        if len(nbrs[u]) <= 2:
            choices.append([nbrs[u]])
            continue
        first, rest = nbrs[u][0], nbrs[u][1:]
        choices.append([[first] + list(p) for p in permutations(rest) if u != mirror or p[0] < p[-1]])
    if target.orientable:
        sign_choices: List[Set[FrozenSet[int]]] = [set()]
    else:
        # switching lets every spanning-tree edge stay positive
        tree = _spanning_tree_edges(g)
        free = sorted((frozenset(e) for e in g.edges() if frozenset(e) not in tree), key=sorted)
        sign_choices = [{e for e, bit in zip(free, bits) if bit}
                        for bits in product((0, 1), repeat=len(free))]
    for rot in product(*choices):
        rot = [list(r) for r in rot]
        for negative in sign_choices:
            reached = _reaches(g, rot, negative, target)
            if reached is not None:
                return EmbeddingScheme.from_indexed(g, rot, negative, reached)
    return None


def _hill_climb(g: SimpleGraph, target: Surface, seed: int, restarts: int,
                steps: int) -> Optional[EmbeddingScheme]:
    """Restarted local search on (rotations, signs) maximising the traced face count."""
    edges = [frozenset(e) for e in g.edges()]
    degrees = g.degrees()
    movable = [u for u in range(g.v) if degrees[u] >= 3]
    want = _target_faces(g, target)
    for restart in range(restarts):
        rng = np.random.default_rng([seed, restart])
        rot = [list(rng.permutation([int(w) for w in g.neighbors(u)])) for u in range(g.v)]
        rot = [[int(w) for w in r] for r in rot]
        negative: Set[FrozenSet[int]] = set()
        if not target.orientable:
            negative = {e for e in edges if rng.random() < 0.3}
        current = len(trace_indexed(rot, negative))
        for _ in range(steps):
            if current >= want:
                reached = _reaches(g, rot, negative, target)
                if reached is not None:
                    config.say(f"✅ Search reached {reached} (seed {seed}, restart {restart})")
                    return EmbeddingScheme.from_indexed(g, rot, negative, reached)
            flip_sign = not target.orientable and rng.random() < 0.3
            if flip_sign:
                edge = edges[int(rng.integers(len(edges)))]
                negative ^= {edge}
            else:
                if not movable:
                    break
                u = movable[int(rng.integers(len(movable)))]
                i = int(rng.integers(len(rot[u])))
                j = (i + 1) % len(rot[u])
                rot[u][i], rot[u][j] = rot[u][j], rot[u][i]
            faces = len(trace_indexed(rot, negative))
            if faces >= current or rng.random() < 0.01:
                current = faces
            elif flip_sign:
                negative ^= {edge}
            else:
                rot[u][i], rot[u][j] = rot[u][j], rot[u][i]
    return None


def search_embedding(g: SimpleGraph, target: Surface, budget: Optional[int] = None,
                     seed: Optional[int] = None, restarts: Optional[int] = None,
                     steps: Optional[int] = None) -> Optional[EmbeddingScheme]:
    """
    CORE FEATURE: look for a scheme of g on `target` (or a simpler surface of
    the same kind). The sphere is decided by planarity testing; other targets
    are searched exhaustively when the state count fits the budget, and by
    seeded local search otherwise. Only a local-search None is inconclusive.
    """
    if not g.is_connected():
        raise EmbeddingError("embedding search needs a connected graph")
    if g.e == 0:
        return EmbeddingScheme({label: [] for label in g.labels}, set(), SPHERE) if target.orientable else None
    budget = config.EXHAUSTIVE_LIMIT if budget is None else budget
    seed = config.SEED if seed is None else seed
    if target == SPHERE:
        verdict = is_planar(g)
        if not verdict.value:
            return None
        scheme = EmbeddingScheme.from_indexed(g, [verdict.embedding[u] for u in range(g.v)], set(), SPHERE)
    elif exhaustive_states(g, target) <= budget:
        config.say(f"🔍 Exhaustive search of {g.name or 'graph'} for {target}")
        scheme = exhaustive_search(g, target)
    else:
        config.say(f"🔍 Local search of {g.name or 'graph'} for {target} (seed {seed})")
        scheme = _hill_climb(g, target, seed,
                             config.RESTARTS if restarts is None else restarts,
                             config.STEPS if steps is None else steps)
    if scheme is not None:
        trace_faces(g, scheme)
    return scheme


# --------------------------------------------------------------------------
# Invariants
# --------------------------------------------------------------------------

@dataclass
class SurfaceInvariants:
    genus_lower: int
    genus_upper: int
    crosscap_lower: int
    crosscap_upper: int
    sources: Dict[str, str] = field(default_factory=dict)
    blocks: int = 1
    ambiguous: bool = False
    seed: Optional[int] = None

    def __post_init__(self):
        if self.genus_lower > self.genus_upper or self.crosscap_lower > self.crosscap_upper:
            raise ValueError(f"inconsistent bounds {self}")

    @property
    def genus(self) -> Optional[int]:
        return self.genus_lower if self.genus_lower == self.genus_upper else None

    @property
    def crosscap(self) -> Optional[int]:
        return self.crosscap_lower if self.crosscap_lower == self.crosscap_upper else None

    @property
    def mu(self) -> Optional[int]:
        if self.genus is None or self.crosscap is None:
            return None
        return max(2 - 2 * self.genus, 2 - self.crosscap)

    def genus_is(self, value: int) -> Optional[bool]:
        """Three-valued membership test: None while the bounds still straddle value."""
        if self.genus == value:
            return True
        if not self.genus_lower <= value <= self.genus_upper:
            return False
        return None

    def crosscap_is(self, value: int) -> Optional[bool]:
        if self.crosscap == value:
            return True
        if not self.crosscap_lower <= value <= self.crosscap_upper:
            return False
        return None

    def to_dict(self) -> Dict:
        out = {
            "genus": {"lower": self.genus_lower, "upper": self.genus_upper, "exact": self.genus is not None},
            "crosscap": {"lower": self.crosscap_lower, "upper": self.crosscap_upper,
                         "exact": self.crosscap is not None},
            "mu": self.mu,
            "blocks": self.blocks,
            "sources": dict(sorted(self.sources.items())),
        }
        if self.ambiguous:
            out["crosscap"]["ambiguous"] = True
        if self.seed is not None:
            out["seed"] = self.seed
        return out


@dataclass
class _Bound:
    lower: int
    upper: int
    lower_source: str
    upper_source: str

    def raise_lower(self, value: int, source: str):
        if value > self.lower:
            self.lower, self.lower_source = value, source

    def lower_upper(self, value: int, source: str):
        if value < self.upper:
            self.upper, self.upper_source = value, source

    @property
    def exact(self) -> bool:
        return self.lower == self.upper


def _cycle_rank(g: SimpleGraph) -> int:
    return g.e - g.v + 1


def _whole_graph_bounds(g: SimpleGraph) -> Tuple[_Bound, _Bound]:
    """Bounds without block detail: Euler/clique below, trivial embeddings above."""
    euler_g, euler_c = euler_only_bounds(g)
    omega = len(max_clique(g))
    genus = _Bound(euler_g, max(0, _cycle_rank(g) // 2), "euler", "cycle-rank")
    crosscap = _Bound(euler_c, max(0, _cycle_rank(g)), "euler", "cycle-rank")
    if omega:
        genus.raise_lower(clique_genus(omega), "clique")
        crosscap.raise_lower(clique_crosscap(omega), "clique")
    if g.e <= config.TRACE_MAX_EDGES and g.is_connected() and g.e:
        traced = trace_faces(g, baseline_scheme(g)).surface.genus
        genus.lower_upper(traced, "baseline")
    crosscap.lower_upper(2 * genus.upper + 1, "from-genus")
    return genus, crosscap


def _block_bounds(b: SimpleGraph, search: Optional[str], budget: Optional[int], seed: int,
                  found: Optional[List[EmbeddingScheme]] = None) -> Tuple[_Bound, _Bound]:
    m = b.v
    if b.e == m * (m - 1) // 2:
        g_exact, c_exact = clique_genus(m), clique_crosscap(m)
        return _Bound(g_exact, g_exact, "formula", "formula"), _Bound(c_exact, c_exact, "formula", "formula")
    if is_planar(b).value:
        return _Bound(0, 0, "planar", "planar"), _Bound(0, 0, "planar", "planar")

    genus, crosscap = _whole_graph_bounds(b)
    genus.raise_lower(max(genus.lower, 1), "nonplanar")
    crosscap.raise_lower(max(crosscap.lower, 1), "nonplanar")
    clique = max_clique(b)

    for orientable, bound in ((True, genus), (False, crosscap)):
        match = find_certificate(b, orientable)
        if match is not None:
            bound.lower_upper(match[1].surface.genus, f"certificate:{match[0]}")

    for orientable, bound in ((True, genus), (False, crosscap)):
        name = CLIQUE_CERTIFICATES.get((len(clique), orientable))
        if name is None or bound.exact:
            continue
        try:
            base = load_certificate(name)
        except CertificateError:
            continue
        scheme = insert_into_clique(b, clique, base)
        if scheme is not None and scheme.declared.orientable == orientable:
            bound.lower_upper(scheme.declared.genus, f"insertion:{name}")

    for orientable, bound in ((True, genus), (False, crosscap)):
        if not bound.exact and face_hosting_raises(b, clique, Surface(orientable, bound.lower)):
            bound.raise_lower(bound.lower + 1, "face-hosting")

    crosscap.lower_upper(2 * genus.upper + 1, "from-genus")

    for orientable, bound in ((True, genus), (False, crosscap)):
        if search in ("both", "genus" if orientable else "crosscap") and not bound.exact:
            scheme = search_embedding(b, Surface(orientable, bound.lower), budget=budget, seed=seed)
            if scheme is not None:
                bound.lower_upper(scheme.declared.genus, "search")
                if found is not None:
                    found.append(scheme)
    crosscap.lower_upper(2 * genus.upper + 1, "from-genus")
    return genus, crosscap


def _compose_crosscap(block_bounds: List[Tuple[_Bound, _Bound]], genus: _Bound,
                      whole_crosscap_lower: int) -> Tuple[_Bound, bool]:
    """
    Crosscap of a graph from its blocks. Both composition formulas are tried;
    a candidate survives when it meets its orientably-simple condition and
    lies inside the independent bounds.
    """
    k = len(block_bounds)
    lower = max([c.lower for _, c in block_bounds] + [whole_crosscap_lower])
    upper = min(sum(c.upper for _, c in block_bounds), 2 * genus.upper + 1)
    result = _Bound(lower, upper, "blocks", "blocks")
    if genus.upper == 0:
        return _Bound(0, 0, "planar", "planar"), False
    if result.exact or not genus.exact or not all(g.exact and c.exact for g, c in block_bounds):
        return result, False
    g_total = genus.lower
    simple_value = 1 - k + sum(c.lower for _, c in block_bounds)
    mu_sum = sum(max(2 - 2 * g.lower, 2 - c.lower) for g, c in block_bounds)
    folded_value = 2 * k - mu_sum
    survivors = set()
    if simple_value > 2 * g_total and lower <= simple_value <= upper:
        survivors.add(simple_value)
    if folded_value <= 2 * g_total and lower <= folded_value <= upper:
        survivors.add(folded_value)
    if len(survivors) == 1:
        value = survivors.pop()
        return _Bound(value, value, "composition", "composition"), False
    return result, True


def surface_invariants(g: SimpleGraph, search: Optional[str] = None, budget: Optional[int] = None,
                       seed: Optional[int] = None,
                       found: Optional[List[EmbeddingScheme]] = None) -> SurfaceInvariants:
    """
    CORE FEATURE: genus and crosscap bounds of a connected graph.
    search is None (bounds only), "genus", "crosscap" or "both".
    """
    if not g.is_connected():
        raise EmbeddingError("surface invariants need a connected graph")
    seed = config.SEED if seed is None else seed
    if g.v <= 2 or is_planar(g).value:
        return SurfaceInvariants(0, 0, 0, 0, {"genus_lower": "planar", "genus_upper": "planar",
                                              "crosscap_lower": "planar", "crosscap_upper": "planar"},
                                 blocks=max(1, len(blocks(g))), seed=seed if search else None)

    if g.v > config.BLOCK_DETAIL_MAX_VERTICES:
        genus, crosscap = _whole_graph_bounds(g)
        return SurfaceInvariants(genus.lower, genus.upper, crosscap.lower, crosscap.upper,
                                 {"genus_lower": genus.lower_source, "genus_upper": genus.upper_source,
                                  "crosscap_lower": crosscap.lower_source,
                                  "crosscap_upper": crosscap.upper_source},
                                 blocks=0, seed=seed if search else None)

    parts = blocks(g)
    per_block = [_block_bounds(g.induced(part), search, budget, seed, found) for part in parts]
    whole_genus, whole_crosscap = euler_lower_bounds(g)

    genus = _Bound(sum(b.lower for b, _ in per_block), sum(b.upper for b, _ in per_block), "blocks", "blocks")
    if len(per_block) == 1:
        genus = per_block[0][0]
    genus.raise_lower(whole_genus, "euler/clique")

    if len(per_block) == 1:
        crosscap, ambiguous = per_block[0][1], False
        crosscap.raise_lower(whole_crosscap, "euler/clique")
    else:
        crosscap, ambiguous = _compose_crosscap(per_block, genus, whole_crosscap)

    return SurfaceInvariants(genus.lower, genus.upper, crosscap.lower, crosscap.upper,
                             {"genus_lower": genus.lower_source, "genus_upper": genus.upper_source,
                              "crosscap_lower": crosscap.lower_source,
                              "crosscap_upper": crosscap.upper_source},
                             blocks=len(parts), ambiguous=ambiguous, seed=seed if search else None)


def genus_exact(g: SimpleGraph, budget: Optional[int] = None, seed: Optional[int] = None) -> SurfaceInvariants:
    """Block-wise genus with embedding search closing any gap that remains."""
    return surface_invariants(g, search="genus", budget=budget, seed=seed)


def crosscap_exact(g: SimpleGraph, budget: Optional[int] = None, seed: Optional[int] = None) -> SurfaceInvariants:
    """Block-wise crosscap number composed across cut vertices, with search on open blocks."""
    return surface_invariants(g, search="crosscap", budget=budget, seed=seed)
