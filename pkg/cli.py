#!/usr/bin/env python3
"""
Upper ideal graph toolkit - command line.

    python cli.py rings list [--max-order N] [--json]
    python cli.py graph --ring EXPR [--format dot|json]
    python cli.py classify --ring EXPR [--json]
    python cli.py surface --ring EXPR [--exact] [--budget N] [--seed S] [--save] [--json]
    python cli.py certificate verify NAME|all
    python cli.py verify --theorem ID|all [--max-order N] [--max-factors K] [--jobs N] [--json]

Exit codes: 0 success or pass, 1 verification mismatch, 2 usage error.
"""

import argparse
import json
import sys
from dataclasses import dataclass
from typing import List, Optional, Sequence

import config
from ideal_graph import EXPORT_FORMATS, ExportFormatError, export_graph, upper_ideal_graph
from ring_catalog import (CATALOG_IDS, MAX_CATALOG_ORDER, RingUniverseFilter, UnsupportedBoundError,
                          canonical_expr, catalog_table, parse_factor_ids, ring_from_ids)
from ring_core import RingSpecError
from surface import (CertificateError, EmbeddingError, certificate_names, save_certificate, sanitize_name,
                     surface_invariants, verify_certificate)
from verify import THEOREMS, classify_ring, get_theorem, summary_table, verify_all, verify_theorem

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE = 0, 1, 2

GRAMMAR = ("ring expressions join catalog ids with '*', e.g. Z2*Z3 or F4*Z4[x]/(2x,x^2); "
           f"valid ids: {' '.join(CATALOG_IDS)}")


@dataclass(frozen=True)
class RingExpr:
    raw: str
    factors: List[str]

    @property
    def canonical(self) -> str:
        return canonical_expr(self.factors) if len(self.factors) > 1 else self.factors[0]


def parse_ring_expr(s: str) -> RingExpr:
    return RingExpr(s, parse_factor_ids(s))


def _emit(text: str) -> None:
    sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _dump(payload) -> str:
    return json.dumps(payload, separators=(",", ":"))


# --------------------------------------------------------------------------
# Subcommands
# --------------------------------------------------------------------------

def cmd_rings(args) -> int:
    table = catalog_table(args.max_order)
    if args.json:
        _emit(_dump(table.to_dict(orient="records")))
    else:
        _emit(table.to_string(index=False))
    return EXIT_OK


def cmd_graph(args) -> int:
    expr = parse_ring_expr(args.ring)
    g = upper_ideal_graph(ring_from_ids(expr.factors))
    sys.stdout.write(export_graph(g, args.format, ring=expr.canonical).decode("utf-8"))
    return EXIT_OK


def cmd_classify(args) -> int:
    expr = parse_ring_expr(args.ring)
    report = classify_ring(ring_from_ids(expr.factors))
    if args.json:
        _emit(_dump(report.to_dict()))
        return EXIT_OK
    lines = [f"{report.ring}: v={report.v} e={report.e}"]
    for tag, verdict in report.verdicts.items():
        value = "withheld" if verdict.value is None else str(verdict.value).lower()
        detail = ""
        if verdict.witness is not None and "kind" in verdict.witness:
            labels = [report.graph.labels[i] for i in verdict.witness.get("vertices", [])]
            detail = f"  [{verdict.witness['kind']}: {' '.join(labels)}]" if labels else f"  [{verdict.witness['kind']}]"
        elif verdict.reason:
            detail = f"  [{verdict.reason}]"
        lines.append(f"  {tag:<12}{value}{detail}")
    lines.append(_format_surface(report.surface))
    _emit("\n".join(lines))
    return EXIT_OK


def _format_range(lower: int, upper: int) -> str:
    return str(lower) if lower == upper else f"[{lower},{upper}]"


def _format_surface(inv) -> str:
    genus = f"genus {_format_range(inv.genus_lower, inv.genus_upper)}"
    crosscap = f"crosscap {_format_range(inv.crosscap_lower, inv.crosscap_upper)}"
    if inv.ambiguous:
        crosscap += " (ambiguous composition)"
    src = inv.sources
    return (f"  {genus} (lower: {src.get('genus_lower')}, upper: {src.get('genus_upper')})\n"
            f"  {crosscap} (lower: {src.get('crosscap_lower')}, upper: {src.get('crosscap_upper')})")


def cmd_surface(args) -> int:
    expr = parse_ring_expr(args.ring)
    g = upper_ideal_graph(ring_from_ids(expr.factors))
    seed = config.SEED if args.seed is None else args.seed
    budget = config.EXHAUSTIVE_LIMIT if args.budget is None else args.budget
    found = []
    inv = surface_invariants(g, search="both" if args.exact else None, budget=budget, seed=seed, found=found)
    if args.save:
        for i, scheme in enumerate(found):
            suffix = f"-b{i}" if len(found) > 1 else ""
            path = save_certificate(scheme, f"{sanitize_name(expr.canonical)}{suffix}-{scheme.declared}")
            config.say(f"✅ Saved {path}")
    if args.json:
        payload = {"ring": expr.canonical, "v": g.v, "e": g.e, "seed": seed, "budget": budget,
                   "search": bool(args.exact)}
        payload.update(inv.to_dict())
        _emit(_dump(payload))
    else:
        _emit(f"{expr.canonical}: v={g.v} e={g.e} seed={seed} budget={budget} "
              f"search={'on' if args.exact else 'off'}\n{_format_surface(inv)}")
    return EXIT_OK


def cmd_certificate(args) -> int:
    names = certificate_names() if args.name == "all" else [args.name]
    if args.name != "all" and args.name not in certificate_names():
        raise CertificateError(f"no certificate named \"{args.name}\"; stored: {' '.join(certificate_names())}")
    failures = 0
    for name in names:
        try:
            result = verify_certificate(name)
        except CertificateError as e:
            failures += 1
            _emit(f"❌ {e}")
            continue
        _emit(f"✅ {name}: {result.surface.kind} {result.surface.genus} "
              f"(v={result.v} e={result.e} f={result.f})")
    return EXIT_MISMATCH if failures else EXIT_OK


def cmd_verify(args) -> int:
    flt = RingUniverseFilter(max_factor_order=args.max_order, max_factors=args.max_factors,
                             max_total_order=args.max_total_order)
    if args.theorem == "all":
        reports = verify_all(flt, jobs=args.jobs)
        if args.json:
            _emit(_dump([r.to_dict() for r in reports]))
        else:
            _emit(summary_table(reports).to_string(index=False))
    else:
        reports = [verify_theorem(get_theorem(args.theorem), flt, jobs=args.jobs)]
        if args.json:
            _emit(_dump(reports[0].to_dict()))
        else:
            r = reports[0]
            lines = [f"{r.theorem}: {r.status}", f"  computed: {', '.join(r.computed) or '-'}"]
            for label, items in (("missing", r.missing), ("extra", r.extra), ("inconclusive", r.inconclusive)):
                if items:
                    lines.append(f"  {label}: {', '.join(items)}")
            _emit("\n".join(lines))
    return EXIT_OK if all(r.passed for r in reports) else EXIT_MISMATCH


# --------------------------------------------------------------------------
# Parser
# --------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cli.py", description="Upper ideal relation graphs of finite rings",
                                     epilog=GRAMMAR)
    sub = parser.add_subparsers(dest="command", required=True)

    rings = sub.add_parser("rings", help="local ring catalog", epilog=GRAMMAR)
    rings.add_argument("action", choices=["list"])
    rings.add_argument("--max-order", type=int, default=MAX_CATALOG_ORDER)
    rings.add_argument("--json", action="store_true")
    rings.set_defaults(handler=cmd_rings)

    graph = sub.add_parser("graph", help="export the upper ideal graph", epilog=GRAMMAR)
    graph.add_argument("--ring", required=True)
    graph.add_argument("--format", default="json", help=f"one of {', '.join(EXPORT_FORMATS)}")
    graph.set_defaults(handler=cmd_graph)

    classify = sub.add_parser("classify", help="graph class verdicts and surface bounds", epilog=GRAMMAR)
    classify.add_argument("--ring", required=True)
    classify.add_argument("--json", action="store_true")
    classify.set_defaults(handler=cmd_classify)

    surface = sub.add_parser("surface", help="genus and crosscap bounds", epilog=GRAMMAR)
    surface.add_argument("--ring", required=True)
    surface.add_argument("--exact", action="store_true", help="run the budgeted embedding search")
    surface.add_argument("--budget", type=int, default=None, help="exhaustive search state limit")
    surface.add_argument("--seed", type=int, default=None)
    surface.add_argument("--save", action="store_true", help="store schemes found by search")
    surface.add_argument("--json", action="store_true")
    surface.set_defaults(handler=cmd_surface)

    certificate = sub.add_parser("certificate", help="stored embedding certificates")
    certificate.add_argument("action", choices=["verify"])
    certificate.add_argument("name", help="certificate name or 'all'")
    certificate.set_defaults(handler=cmd_certificate)

    verify = sub.add_parser("verify", help="reproduce a classification theorem",
                            epilog=f"theorems: {' '.join(THEOREMS)} all")
    verify.add_argument("--theorem", required=True, choices=list(THEOREMS) + ["all"])
    verify.add_argument("--max-order", type=int, default=MAX_CATALOG_ORDER)
    verify.add_argument("--max-factors", type=int, default=4)
    verify.add_argument("--max-total-order", type=int, default=1024)
    verify.add_argument("--jobs", type=int, default=None)
    verify.add_argument("--json", action="store_true")
    verify.set_defaults(handler=cmd_verify)
    return parser


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        if e.code in (0, None):
            return EXIT_OK
        print(GRAMMAR, file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.handler(args)
    except (RingSpecError, UnsupportedBoundError, ExportFormatError, CertificateError,
            EmbeddingError, KeyError, ValueError) as e:
        message = e.args[0] if isinstance(e, KeyError) and e.args else str(e)
        print(f"❌ {message}", file=sys.stderr)
        if isinstance(e, RingSpecError):
            print(GRAMMAR, file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
