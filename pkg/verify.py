#!/usr/bin/env python3
"""
Verify - reproduce the classification theorems for upper ideal graphs by
classifying every ring of a bounded universe and comparing the rings that
satisfy each property against the expected list.
"""

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

import pandas as pd

import config
from graph_classify import ClassVerdict, classify_graph
from ideal_graph import SimpleGraph, cograph_structure_isomorphic, join_form_isomorphic, upper_ideal_graph
from ring_catalog import (RingUniverseFilter, canonical_expr, enumerate_factor_shapes, get_local_ring,
                          ring_from_ids)
from ring_core import FiniteRing
from surface import SurfaceInvariants, surface_invariants


@dataclass
class ClassificationReport:
    ring: str
    factor_shape: Tuple[str, ...]
    v: int
    e: int
    verdicts: Dict[str, ClassVerdict]
    surface: SurfaceInvariants
    graph: SimpleGraph = field(repr=False)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "ring": self.ring,
            "v": self.v,
            "e": self.e,
            "classes": {tag: verdict.to_dict(self.graph) for tag, verdict in self.verdicts.items()},
            "surface": self.surface.to_dict(),
        }


def classify_ring(r: FiniteRing, search: Optional[str] = None, budget: Optional[int] = None,
                  seed: Optional[int] = None) -> ClassificationReport:
    """
    CORE FEATURE: every class verdict plus genus/crosscap bounds of the ring's graph.
    """
    g = upper_ideal_graph(r)
    verdicts = classify_graph(g)
    invariants = surface_invariants(g, search=search, budget=budget, seed=seed)
    name = canonical_expr(r.factor_shape) if r.factor_shape else r.name
    return ClassificationReport(name, r.factor_shape or (r.name,), g.v, g.e, verdicts, invariants, g)


# --------------------------------------------------------------------------
# Theorems
# --------------------------------------------------------------------------

def _is_field(rid: str) -> bool:
    return get_local_ring(rid).is_field


def _principal(rid: str) -> bool:
    return get_local_ring(rid).maximal_ideal_is_principal


def _listed(*exprs: str) -> Callable[[Tuple[str, ...]], bool]:
    wanted = frozenset(exprs)
    return lambda shape: canonical_expr(shape) in wanted


def _class_predicate(tag: str) -> Callable[[ClassificationReport], Optional[bool]]:
    return lambda report: report.verdicts[tag].value


@dataclass(frozen=True)
class TheoremSpec:
    id: str
    statement: str
    predicate: Callable[[ClassificationReport], Optional[bool]]
    expected: Callable[[Tuple[str, ...]], bool]
    note: str = ""


SMALL_CYCLIC = ("Z2*Z2", "Z2*Z3", "Z3*Z3")

THEOREMS: Dict[str, TheoremSpec] = {spec.id: spec for spec in [
    TheoremSpec("split", "split iff Z2*Z2*Z2 or Z2*F for a field F",
                _class_predicate("split"),
                lambda s: s == ("Z2", "Z2", "Z2") or (len(s) == 2 and s[0] == "Z2" and _is_field(s[1])),
                note="fields limited to the catalog"),
    TheoremSpec("threshold", "threshold iff Z2*F for a field F",
                _class_predicate("threshold"),
                lambda s: len(s) == 2 and s[0] == "Z2" and _is_field(s[1]),
                note="fields limited to the catalog"),
    TheoremSpec("cograph", "cograph iff R1*R2 with both maximal ideals principal",
                _class_predicate("cograph"),
                lambda s: len(s) == 2 and all(_principal(rid) for rid in s)),
    TheoremSpec("cactus", "cactus iff Z2*Z2, Z2*Z3 or Z3*Z3",
                _class_predicate("cactus"), _listed(*SMALL_CYCLIC)),
    TheoremSpec("unicyclic", "unicyclic iff Z2*Z3",
                _class_predicate("unicyclic"), _listed("Z2*Z3")),
    TheoremSpec("ringgraph", "ring graph iff Z2*Z2, Z2*Z3 or Z3*Z3",
                _class_predicate("ring_graph"), _listed(*SMALL_CYCLIC)),
    TheoremSpec("outerplanar", "outerplanar iff Z2*Z2, Z2*Z3 or Z3*Z3",
                _class_predicate("outerplanar"), _listed(*SMALL_CYCLIC)),
    TheoremSpec("planar", "planar iff one of nine rings",
                _class_predicate("planar"),
                _listed("Z2*Z2*Z2", "Z2*Z4", "Z2*Z2[x]/(x^2)", "Z2*F4", "Z2*Z2", "Z2*Z3", "Z3*Z3",
                        "Z3*F4", "F4*F4")),
    TheoremSpec("genus1", "genus 1 iff one of eight rings",
                lambda report: report.surface.genus_is(1),
                _listed("Z2*Z7", "Z3*Z7", "F4*Z7", "Z2*Z5", "Z3*Z5", "F4*Z5", "Z3*Z4", "Z3*Z2[x]/(x^2)")),
    TheoremSpec("genus2", "genus 2 iff one of nine rings",
                lambda report: report.surface.genus_is(2),
                _listed("Z2*Z2*Z3", "Z2*F8", "Z3*F8", "F4*F8", "Z7*Z7", "Z5*Z7", "Z5*Z5", "F4*Z4",
                        "F4*Z2[x]/(x^2)")),
    TheoremSpec("crosscap1", "crosscap 1 iff one of five rings",
                lambda report: report.surface.crosscap_is(1),
                _listed("Z2*Z5", "Z3*Z5", "F4*Z5", "Z3*Z4", "Z3*Z2[x]/(x^2)")),
    TheoremSpec("crosscap2", "crosscap 2 iff Z5*Z5",
                lambda report: report.surface.crosscap_is(2), _listed("Z5*Z5")),
]}


def get_theorem(theorem_id: str) -> TheoremSpec:
    if theorem_id not in THEOREMS:
        raise KeyError(f"unknown theorem \"{theorem_id}\"; valid ids: {' '.join(THEOREMS)}")
    return THEOREMS[theorem_id]


def edge_count_fixtures() -> List[Tuple[str, int, int]]:
    """Vertex and edge counts of selected upper ideal graphs."""
    return [
        ("Z2*Z2*Z3", 10, 31),
        ("Z2*Z8", 12, 50),
        ("Z2*Z2[x]/(x^3)", 12, 50),
        ("Z2*Z4[x]/(2x,x^2-2)", 12, 50),
        ("Z2*Z2[x,y]/(x^2,xy,y^2)", 12, 41),
        ("Z2*Z4[x]/(2x,x^2)", 12, 41),
        ("Z3*Z2[x,y]/(x^2,xy,y^2)", 16, 64),
        ("Z3*Z4[x]/(2x,x^2)", 16, 64),
        ("F4*Z2[x,y]/(x^2,xy,y^2)", 20, 97),
        ("F4*Z4[x]/(2x,x^2)", 20, 97),
        ("F8*F8", 15, 56),
        ("Z7*Z7", 13, 42),
        ("Z2*Z2*Z2*Z2", 15, 80),
    ]


# --------------------------------------------------------------------------
# Universe runs
# --------------------------------------------------------------------------

@dataclass
class VerificationReport:
    theorem: str
    filter: RingUniverseFilter
    computed: List[str]
    expected: List[str]
    missing: List[str]
    extra: List[str]
    inconclusive: List[str]
    witnesses: Dict[str, Dict[str, Any]]
    ms: int
    note: str = ""

    @property
    def passed(self) -> bool:
        return not self.missing and not self.extra and not self.inconclusive

    @property
    def status(self) -> str:
        if self.missing or self.extra:
            return "fail"
        return "inconclusive" if self.inconclusive else "pass"

    def to_dict(self) -> Dict[str, Any]:
        out = {
            "theorem": self.theorem,
            "filter": self.filter.to_dict(),
            "pass": self.passed,
            "status": self.status,
            "computed": self.computed,
            "expected": self.expected,
            "missing": self.missing,
            "extra": self.extra,
            "inconclusive": self.inconclusive,
            "witnesses": self.witnesses,
            "ms": self.ms,
        }
        if self.note:
            out["note"] = self.note
        return out


def _witness(report: ClassificationReport, theorem_id: str) -> Dict[str, Any]:
    if theorem_id in ("genus1", "genus2", "crosscap1", "crosscap2"):
        return {"v": report.v, "e": report.e, "surface": report.surface.to_dict()}
    tag = "ring_graph" if theorem_id == "ringgraph" else theorem_id
    return {"v": report.v, "e": report.e, tag: report.verdicts[tag].to_dict(report.graph)}


def _evaluate_shape(args: Tuple[Tuple[str, ...], Tuple[str, ...]]) -> Dict[str, Tuple[Optional[bool], Dict]]:
    """Worker: classify one ring and evaluate the requested theorems on it."""
    shape, theorem_ids = args
    report = classify_ring(ring_from_ids(shape))
    out = {}
    for tid in theorem_ids:
        value = THEOREMS[tid].predicate(report)
        out[tid] = (value, _witness(report, tid))
    return out


def _map_shapes(shapes: List[Tuple[str, ...]], theorem_ids: Tuple[str, ...], jobs: int):
    work = [(shape, theorem_ids) for shape in shapes]
    if jobs <= 1:
        for i, item in enumerate(work, start=1):
            yield _evaluate_shape(item)
            if i % 250 == 0:
                config.say(f"📊 {i}/{len(work)} rings classified")
        return
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        for i, result in enumerate(pool.map(_evaluate_shape, work, chunksize=8), start=1):
            yield result
            if i % 250 == 0:
                config.say(f"📊 {i}/{len(work)} rings classified")


def verify_theorems(specs: Sequence[TheoremSpec], flt: RingUniverseFilter,
                    jobs: Optional[int] = None) -> List[VerificationReport]:
    """
    CORE FEATURE: one universe pass shared by all requested theorems.
    Results do not depend on the job count: merging follows universe order.
    """
    jobs = config.JOBS if jobs is None else jobs
    shapes = list(enumerate_factor_shapes(flt))
    theorem_ids = tuple(spec.id for spec in specs)
    config.say(f"🔍 Classifying {len(shapes)} rings for {', '.join(theorem_ids)} (jobs={jobs})")
    start = time.perf_counter()
    results = list(_map_shapes(shapes, theorem_ids, jobs))
    ms = int((time.perf_counter() - start) * 1000)

    reports = []
    for spec in specs:
        computed, expected, inconclusive = [], [], []
        evidence: Dict[str, Dict] = {}
        for shape, result in zip(shapes, results):
            expr = canonical_expr(shape)
            value, witness = result[spec.id]
            evidence[expr] = witness
            if value is None:
                inconclusive.append(expr)
            elif value:
                computed.append(expr)
            if spec.expected(shape):
                expected.append(expr)
        computed_set, expected_set = set(computed), set(expected)
        missing = [x for x in expected if x not in computed_set and x not in inconclusive]
        extra = [x for x in computed if x not in expected_set]
        witnesses = {x: evidence[x] for x in missing + extra + inconclusive}
        report = VerificationReport(spec.id, flt, computed, expected, missing, extra, inconclusive,
                                    witnesses, ms, spec.note)
        marker = {"pass": "✅", "fail": "❌", "inconclusive": "⚠️"}[report.status]
        config.say(f"{marker} {spec.id}: {report.status} ({len(computed)} computed, {len(expected)} expected)")
        reports.append(report)
    return reports


def verify_theorem(spec: TheoremSpec, flt: RingUniverseFilter, jobs: Optional[int] = None) -> VerificationReport:
    return verify_theorems([spec], flt, jobs)[0]


def verify_all(flt: RingUniverseFilter, jobs: Optional[int] = None) -> List[VerificationReport]:
    return verify_theorems(list(THEOREMS.values()), flt, jobs)


def summary_table(reports: Sequence[VerificationReport]) -> pd.DataFrame:
    rows = [{
        "theorem": r.theorem,
        "status": r.status,
        "computed": len(r.computed),
        "expected": len(r.expected),
        "missing": len(r.missing),
        "extra": len(r.extra),
        "inconclusive": len(r.inconclusive),
        "ms": r.ms,
    } for r in reports]
    return pd.DataFrame(rows, columns=["theorem", "status", "computed", "expected", "missing", "extra",
                                       "inconclusive", "ms"])


def structural_mismatches(flt: RingUniverseFilter) -> List[str]:
    """
    Two-factor rings whose graph is not the expected join of cliques: the
    principal-ideal family against K_a v (K_b u K_c), field products against
    K_1 v (K_{|F1|-1} u K_{|F2|-1}).
    """
    problems = []
    for shape in enumerate_factor_shapes(flt):
        if len(shape) != 2 or not all(_principal(rid) for rid in shape):
            continue
        r = ring_from_ids(shape)
        g = upper_ideal_graph(r)
        if not cograph_structure_isomorphic(r, g):
            problems.append(f"{canonical_expr(shape)}: not K_a v (K_b u K_c)")
        if all(_is_field(rid) for rid in shape) and not join_form_isomorphic(r, g):
            problems.append(f"{canonical_expr(shape)}: not K_1 v (K_p u K_q)")
    return problems
