"""Command-line interface: validation, colorings, quivers, homology, persistence.

Inputs come from files or from the bundled fixture dataset (``@name``
syntax).  All outputs are byte-stable across runs for identical inputs.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import fixtures
from .algebra import (
    AlgebraError,
    Biquandle,
    endomorphisms,
    load_biquandle,
    map_to_tuple_1indexed,
    validate_biquandle,
)
from .cliques import ComplexError, complex_from_json, directed_clique_complex
from .diagram import DiagramError, LinkDiagram, colorings, parse_diagram
from .homology import HomologyError, betti_gf2, integer_homology
from .persistence import (
    FiltrationError,
    filtered_complex,
    filtered_complex_from_json,
    persistence_pair,
    quiver_filtration,
    render_barcode_svg,
    render_barcode_text,
)
from .quiver import (
    QuiverError,
    build_quiver,
    in_degree_multiset,
    in_degree_polynomial,
    polynomial_to_string,
)


class CliError(Exception):
    """User-facing failure with a file/reason diagnostic."""


def _read(path: str, kind: str) -> str:
    if path.startswith("@"):
        raise CliError(f"{kind} {path!r} must be resolved via fixtures")
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise CliError(f"cannot read {kind} file {path}: {exc.strerror}") from exc


def _get_biquandle(ref: str) -> Biquandle:
    try:
        if ref.startswith("@"):
            return fixtures.load_biquandle(ref[1:])
        return load_biquandle(_read(ref, "biquandle"))
    except (AlgebraError, KeyError, json.JSONDecodeError) as exc:
        raise CliError(f"biquandle {ref}: {exc}") from exc


def _get_diagram(ref: str) -> LinkDiagram:
    try:
        if ref.startswith("@"):
            return fixtures.load_diagram(ref[1:])
        return parse_diagram(_read(ref, "diagram"))
    except (DiagramError, KeyError) as exc:
        raise CliError(f"diagram {ref}: {exc}") from exc


def _get_stages(ref: str):
    try:
        if ref.startswith("@"):
            return fixtures.load_filtration(ref[1:])
        return fixtures.stages_from_json(json.loads(_read(ref, "filtration")))
    except (KeyError, TypeError, json.JSONDecodeError) as exc:
        raise CliError(f"filtration {ref}: {exc}") from exc


def _get_endos(ref: str):
    try:
        if ref.startswith("@"):
            return fixtures.load_endoset(ref[1:])
        return fixtures.endoset_from_json(json.loads(_read(ref, "endomorphism set")))
    except (KeyError, TypeError, json.JSONDecodeError) as exc:
        raise CliError(f"endomorphism set {ref}: {exc}") from exc


def _get_complex_data(ref: str) -> dict:
    try:
        if ref.startswith("@"):
            return fixtures.load_complex_json(ref[1:])
        return json.loads(_read(ref, "complex"))
    except (KeyError, json.JSONDecodeError) as exc:
        raise CliError(f"complex {ref}: {exc}") from exc


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _json_dump(payload) -> str:
    return json.dumps(payload, indent=1, sort_keys=True) + "\n"


def cmd_check_biquandle(args) -> int:
    bq = _get_biquandle(args.biquandle)
    report = validate_biquandle(bq)
    payload = {"n": bq.n, "valid": report.ok}
    if not report.ok:
        payload["axiom"] = report.axiom
        payload["witness"] = [v + 1 for v in report.witness or ()]
    _emit(_json_dump(payload), args.out)
    return 0 if report.ok else 1


def cmd_endos(args) -> int:
    bq = _get_biquandle(args.biquandle)
    endos = endomorphisms(bq)
    _emit(_json_dump({"count": len(endos),
                      "maps": [map_to_tuple_1indexed(f) for f in endos]}), args.out)
    return 0


def cmd_color(args) -> int:
    diagram = _get_diagram(args.diagram)
    bq = _get_biquandle(args.biquandle)
    cols = colorings(diagram, bq)
    if args.count:
        _emit(f"{len(cols)}\n", args.out)
    else:
        _emit(_json_dump({"count": len(cols),
                          "colorings": [[v + 1 for v in c] for c in cols]}), args.out)
    return 0


def _endos_for(args, bq: Biquandle):
    if args.endos == "all":
        return endomorphisms(bq)
    return _get_endos(args.endos)


def cmd_quiver(args) -> int:
    diagram = _get_diagram(args.diagram)
    bq = _get_biquandle(args.biquandle)
    quiver = build_quiver(diagram, bq, _endos_for(args, bq))
    if args.format == "dot":
        _emit(quiver.to_dot(), args.out)
    else:
        _emit(_json_dump(quiver.to_json_dict()), args.out)
    return 0


def cmd_indegree(args) -> int:
    diagram = _get_diagram(args.diagram)
    bq = _get_biquandle(args.biquandle)
    if args.filtration:
        polys = in_degree_multiset(diagram, bq, _get_stages(args.filtration))
        payload = {
            "polynomials": [
                {"terms": {str(e): c for e, c in sorted(p.items())},
                 "text": polynomial_to_string(p)}
                for p in polys
            ]
        }
    else:
        poly = in_degree_polynomial(build_quiver(diagram, bq, _endos_for(args, bq)))
        payload = {"terms": {str(e): c for e, c in sorted(poly.items())},
                   "text": polynomial_to_string(poly)}
    _emit(_json_dump(payload), args.out)
    return 0


def cmd_homology(args) -> int:
    if args.complex:
        complex_ = complex_from_json(_get_complex_data(args.complex))
    else:
        if not (args.diagram and args.biquandle):
            raise CliError("homology needs either --complex or --diagram with --biquandle")
        diagram = _get_diagram(args.diagram)
        bq = _get_biquandle(args.biquandle)
        quiver = build_quiver(diagram, bq, _endos_for(args, bq))
        complex_ = directed_clique_complex(quiver, args.threshold, args.max_dim)
    top = args.max_hom_dim if args.max_hom_dim is not None else complex_.max_dim - 1
    if args.coeff == "gf2":
        payload = {"coeff": "gf2", "betti": betti_gf2(complex_, top)}
    else:
        profile = integer_homology(complex_, top)
        payload = {
            "coeff": "z",
            "free": list(profile.free),
            "torsion": [list(t) for t in profile.torsion],
            "groups": profile.group_strings(),
        }
    _emit(_json_dump(payload), args.out)
    return 0


def cmd_persist(args) -> int:
    if args.complex:
        fc = filtered_complex_from_json(_get_complex_data(args.complex))
        pp = persistence_pair(fc, args.threshold)
    else:
        if not (args.diagram and args.biquandle and args.filtration):
            raise CliError(
                "persist needs either --complex or --diagram, --biquandle and --filtration"
            )
        diagram = _get_diagram(args.diagram)
        bq = _get_biquandle(args.biquandle)
        stages = _get_stages(args.filtration)
        if not stages or stages[0]:
            raise CliError("persist requires a filtration whose first stage is empty")
        quivers = quiver_filtration(diagram, bq, stages)
        fc = filtered_complex(quivers, args.threshold, args.max_dim)
        pp = persistence_pair(fc, args.threshold)
    if args.format == "svg":
        _emit(render_barcode_svg(pp), args.out)
    elif args.format == "text":
        _emit(render_barcode_text(pp), args.out)
    else:
        _emit(_json_dump(pp.to_json_dict()), args.out)
    return 0


def cmd_fixtures(args) -> int:
    payload = {kind: fixtures.list_fixtures(kind) for kind in fixtures.KINDS}
    _emit(_json_dump(payload), args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="linkhom",
        description="Biquandle coloring invariants and persistent homology of links.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, diagram=False, biquandle=False, endos=False):
        if diagram:
            p.add_argument("--diagram", required=True,
                           help="diagram JSON file or @fixture")
        if biquandle:
            p.add_argument("--biquandle", required=True,
                           help="biquandle file (matrix or JSON) or @fixture")
        if endos:
            p.add_argument("--endos", default="all",
                           help="endomorphism set file, @fixture, or 'all'")
        p.add_argument("--out", help="write output to this path instead of stdout")

    p = sub.add_parser("check-biquandle", help="validate the axioms")
    common(p, biquandle=True)
    p.set_defaults(fn=cmd_check_biquandle)

    p = sub.add_parser("endos", help="enumerate endomorphisms")
    common(p, biquandle=True)
    p.set_defaults(fn=cmd_endos)

    p = sub.add_parser("color", help="enumerate or count colorings")
    common(p, diagram=True, biquandle=True)
    p.add_argument("--count", action="store_true", help="print only the count")
    p.set_defaults(fn=cmd_color)

    p = sub.add_parser("quiver", help="coloring quiver (JSON or DOT)")
    common(p, diagram=True, biquandle=True, endos=True)
    p.add_argument("--format", choices=("json", "dot"), default="json")
    p.set_defaults(fn=cmd_quiver)

    p = sub.add_parser("indegree", help="in-degree polynomial (single set or filtration)")
    common(p, diagram=True, biquandle=True, endos=True)
    p.add_argument("--filtration", help="nested stages file or @fixture")
    p.set_defaults(fn=cmd_indegree)

    p = sub.add_parser("homology", help="clique homology of the coloring quiver")
    p.add_argument("--diagram", help="diagram JSON file or @fixture")
    p.add_argument("--biquandle", help="biquandle file or @fixture")
    p.add_argument("--endos", default="all")
    p.add_argument("--complex", help="raw complex JSON file or @fixture")
    p.add_argument("-N", "--threshold", type=int, default=1,
                   help="edge multiplicity threshold (default 1)")
    p.add_argument("--max-dim", type=int, default=4, dest="max_dim")
    p.add_argument("--max-hom-dim", type=int, default=None, dest="max_hom_dim")
    p.add_argument("--coeff", choices=("gf2", "z"), default="gf2")
    p.add_argument("--out")
    p.set_defaults(fn=cmd_homology)

    p = sub.add_parser("persist", help="barcode and stillborn matrix of a filtration")
    p.add_argument("--diagram", help="diagram JSON file or @fixture")
    p.add_argument("--biquandle", help="biquandle file or @fixture")
    p.add_argument("--filtration", help="nested stages file or @fixture")
    p.add_argument("--complex", help="raw filtered-complex JSON file or @fixture")
    p.add_argument("-N", "--threshold", type=int, default=1)
    p.add_argument("--max-dim", type=int, default=4, dest="max_dim")
    p.add_argument("--format", choices=("json", "text", "svg"), default="json")
    p.add_argument("--out")
    p.set_defaults(fn=cmd_persist)

    p = sub.add_parser("fixtures", help="list bundled fixtures")
    p.add_argument("--out")
    p.set_defaults(fn=cmd_fixtures)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (AlgebraError, DiagramError, QuiverError, ComplexError,
            HomologyError, FiltrationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
