#!/usr/bin/env python3
"""
CLI tests - subcommand output and exit codes.
"""

import json

import pytest

import cli
import config
from ring_core import RingSpecError


def run(capsys, *argv):
    code = cli.run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_parse_ring_expr():
    expr = cli.parse_ring_expr("Z5*F4")
    assert expr.factors == ["Z5", "F4"]
    assert expr.canonical == "F4*Z5"
    with pytest.raises(RingSpecError):
        cli.parse_ring_expr("Z2*Q8")


def test_rings_list(capsys):
    code, out, _ = run(capsys, "rings", "list", "--json")
    assert code == cli.EXIT_OK
    rows = json.loads(out)
    assert len(rows) == 16
    assert rows[0]["id"] == "Z2"

    code, out, _ = run(capsys, "rings", "list", "--max-order", "4")
    assert code == cli.EXIT_OK
    assert "Z2[x]/(x^2)" in out and "Z5" not in out


def test_rings_list_above_the_catalog(capsys):
    code, _, err = run(capsys, "rings", "list", "--max-order", "16")
    assert code == cli.EXIT_USAGE
    assert "9" in err


def test_graph_json(capsys):
    code, out, _ = run(capsys, "graph", "--ring", "Z2*Z2", "--format", "json")
    assert code == cli.EXIT_OK
    assert '"v":3,"e":2' in out


def test_graph_dot(capsys):
    code, out, _ = run(capsys, "graph", "--ring", "Z3*Z2", "--format", "dot")
    assert code == cli.EXIT_OK
    assert out.startswith("graph G {")


def test_graph_errors(capsys):
    code, _, err = run(capsys, "graph", "--ring", "Z2*Q8")
    assert code == cli.EXIT_USAGE
    assert 'unknown token "Q8"' in err
    code, _, err = run(capsys, "graph", "--ring", "Z2*Z3", "--format", "gml")
    assert code == cli.EXIT_USAGE
    assert "gml" in err


def test_classify(capsys):
    code, out, _ = run(capsys, "classify", "--ring", "Z2*F4", "--json")
    assert code == cli.EXIT_OK
    payload = json.loads(out)
    assert payload["classes"]["planar"]["value"] is True
    assert payload["classes"]["cactus"]["value"] is False

    code, out, _ = run(capsys, "classify", "--ring", "Z2*Z2*Z2")
    assert code == cli.EXIT_OK
    assert "threshold" in out and "P4" in out


def test_surface_bounds(capsys):
    code, out, _ = run(capsys, "surface", "--ring", "Z2*Z2*Z3", "--json")
    assert code == cli.EXIT_OK
    payload = json.loads(out)
    assert payload["genus"] == {"lower": 2, "upper": 2, "exact": True}
    assert payload["search"] is False


def test_surface_exact_echoes_seed(capsys, monkeypatch):
    monkeypatch.setattr(config, "RESTARTS", 1)
    monkeypatch.setattr(config, "STEPS", 50)
    code, out, _ = run(capsys, "surface", "--ring", "Z2*Z2*Z3", "--exact", "--budget", "0", "--seed", "11")
    assert code == cli.EXIT_OK
    assert "seed=11" in out
    assert "genus 2" in out


def test_certificate_verify(capsys):
    code, out, _ = run(capsys, "certificate", "verify", "all")
    assert code == cli.EXIT_OK
    assert "z2_z2_z3_genus2: orientable 2" in out
    assert "k7_n3: nonorientable 3" in out

    code, _, err = run(capsys, "certificate", "verify", "missing_one")
    assert code == cli.EXIT_USAGE
    assert "missing_one" in err


def test_verify_theorem(capsys):
    code, out, _ = run(capsys, "verify", "--theorem", "unicyclic", "--max-order", "4", "--max-factors", "2",
                       "--json")
    assert code == cli.EXIT_OK
    payload = json.loads(out)
    assert payload["pass"] is True
    assert payload["computed"] == ["Z2*Z3"]


def test_verify_all_text(capsys):
    code, out, _ = run(capsys, "verify", "--theorem", "all", "--max-order", "3", "--max-factors", "3")
    assert code == cli.EXIT_OK
    assert "crosscap2" in out


@pytest.mark.parametrize("argv", [("verify", "--theorem", "nosuch"), ("frobnicate",), ()])
def test_usage_errors_print_the_grammar(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == cli.EXIT_USAGE
    assert cli.GRAMMAR in err
    assert "Z4[x]/(2x,x^2-2)" in err


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
