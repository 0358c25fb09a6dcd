#!/usr/bin/env python3
"""
Verification tests - ring classification reports and theorem runs over
bounded ring universes. The full default universe is marked slow.
"""

import pytest

from ring_catalog import RingUniverseFilter, ring_from_expr
from verify import (THEOREMS, TheoremSpec, classify_ring, get_theorem, structural_mismatches,
                    summary_table, verify_all, verify_theorem)

SMALL = RingUniverseFilter(max_factor_order=7, max_factors=3, max_total_order=100)


@pytest.fixture(scope="module")
def small_reports():
    return {report.theorem: report for report in verify_all(SMALL)}


def test_classify_ring_report():
    report = classify_ring(ring_from_expr("Z2*F4"))
    assert (report.ring, report.v, report.e) == ("Z2*F4", 5, 7)
    assert report.verdicts["planar"].value is True
    assert report.verdicts["threshold"].value is True
    assert report.verdicts["cactus"].value is False
    payload = report.to_dict()
    assert payload["classes"]["split"] == {"value": True}
    assert payload["surface"]["genus"] == {"lower": 0, "upper": 0, "exact": True}


def test_classify_ring_surface():
    report = classify_ring(ring_from_expr("Z3*Z4"))
    assert report.verdicts["planar"].value is False
    assert (report.surface.genus, report.surface.crosscap) == (1, 1)


def test_theorem_catalogue():
    assert list(THEOREMS) == ["split", "threshold", "cograph", "cactus", "unicyclic", "ringgraph",
                              "outerplanar", "planar", "genus1", "genus2", "crosscap1", "crosscap2"]
    with pytest.raises(KeyError, match="nosuch"):
        get_theorem("nosuch")


@pytest.mark.parametrize("theorem_id", list(THEOREMS))
def test_theorem_holds_on_small_universe(small_reports, theorem_id):
    report = small_reports[theorem_id]
    assert report.status == "pass", report.to_dict()
    assert report.computed == report.expected


def test_small_universe_lists(small_reports):
    assert small_reports["unicyclic"].computed == ["Z2*Z3"]
    assert small_reports["cactus"].computed == ["Z2*Z2", "Z2*Z3", "Z3*Z3"]
    assert small_reports["crosscap2"].computed == ["Z5*Z5"]
    assert len(small_reports["genus1"].computed) == 8


def test_enlarging_the_universe_keeps_computed_rings(small_reports):
    tiny = RingUniverseFilter(max_factor_order=4, max_factors=2, max_total_order=64)
    for theorem_id, spec in THEOREMS.items():
        narrow = verify_theorem(spec, tiny)
        assert set(narrow.computed) <= set(small_reports[theorem_id].computed), theorem_id


def test_report_serialisation(small_reports):
    payload = small_reports["planar"].to_dict()
    assert payload["pass"] is True
    assert payload["filter"] == {"max_factor_order": 7, "max_factors": 3, "max_total_order": 100}
    assert set(payload) >= {"theorem", "computed", "expected", "missing", "extra", "inconclusive", "ms"}
    table = summary_table(list(small_reports.values()))
    assert list(table["status"]) == ["pass"] * len(THEOREMS)


def test_results_do_not_depend_on_job_count():
    flt = RingUniverseFilter(max_factor_order=4, max_factors=2, max_total_order=None)
    single = verify_theorem(THEOREMS["cograph"], flt, jobs=1)
    pooled = verify_theorem(THEOREMS["cograph"], flt, jobs=2)
    assert single.computed == pooled.computed
    assert single.passed and pooled.passed


def test_mismatch_is_reported():
    flt = RingUniverseFilter(max_factor_order=4, max_factors=2, max_total_order=None)
    wrong = TheoremSpec("unicyclic", "deliberately wrong list", THEOREMS["unicyclic"].predicate,
                        lambda shape: shape == ("Z2", "Z2"))
    report = verify_theorem(wrong, flt)
    assert report.status == "fail"
    assert report.missing == ["Z2*Z2"]
    assert report.extra == ["Z2*Z3"]
    assert set(report.witnesses) == {"Z2*Z2", "Z2*Z3"}


def test_two_factor_structure():
    assert structural_mismatches(RingUniverseFilter(max_factor_order=9, max_factors=2,
                                                    max_total_order=None)) == []


@pytest.mark.slow
def test_every_theorem_on_the_default_universe():
    reports = verify_all(RingUniverseFilter(), jobs=4)
    assert [r.theorem for r in reports if not r.passed] == []


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
