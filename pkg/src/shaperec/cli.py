"""Command line interface.

Exit status: 0 when valid (or nothing failed), 1 when violations were
found, 2 for usage, file or parse errors.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from typing import Optional, Sequence

from . import __version__
from .engine import (
    candidates_for_predicates,
    check_all,
    default_candidates,
    label_graph,
    satisfies,
)
from .ingest import PREFIXES, extract_arcs, format_arc_table, parse_shapes
from .oracle import InstanceTooLarge, closed_masks, minimal_closed_labelling, naive_consistency_solutions
from .rdf import GraphError, IRI, PointedGraph, nodes
from .report import labelling_rows, report_to_json, report_to_text, term_str
from .shapes import ShapeError
from .turtle import TurtleSyntaxError, parse_turtle

EXIT_OK, EXIT_INVALID, EXIT_ERROR = 0, 1, 2

log = logging.getLogger("shaperec")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="shaperec", description="Validate RDF data against recursive resource shapes.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND", parser_class=_Parser)
    sub.required = True

    def common(p, data=True, node=True, shape=True):
        if data:
            p.add_argument("--data", required=True, help="data graph (Turtle)")
        p.add_argument("--shapes", required=True, help="resource shape document (Turtle)")
        if node:
            p.add_argument("--node", required=True, help="IRI of the focus node")
        if shape:
            p.add_argument("--shape", required=True, help="IRI of the base resource shape")
        p.add_argument("--format", choices=("text", "json"), default="text")

    common(sub.add_parser("validate", help="check a focus node against a shape"))
    common(sub.add_parser("label", help="print the labelling from a focus node"))
    common(sub.add_parser("arcs", help="list the neighbour graph arcs of a shape document"), data=False, node=False, shape=False)
    p = sub.add_parser("check-all", help="list every candidate node that fails the shape")
    common(p, node=False)
    p.add_argument("--candidates", nargs="+", metavar="PREDICATE",
                   help="take candidates from triples with these predicate IRIs")
    p.add_argument("--workers", type=int, default=None, help=argparse.SUPPRESS)
    common(sub.add_parser("oracle", help="brute-force labelling analysis for small instances"))
    return parser


def _iri(text: str) -> IRI:
    text = text.strip()
    if text.startswith("<") and text.endswith(">"):
        text = text[1:-1]
    return IRI(text)


def _read(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror or exc}") from None
    except UnicodeDecodeError:
        raise UsageError(f"{path}: not valid UTF-8") from None
    try:
        return parse_turtle(text)
    except TurtleSyntaxError as exc:
        raise UsageError(f"{path}:{exc}") from None


def _use_color(stream) -> bool:
    mode = os.environ.get("SHAPEREC_COLOR", "auto").lower()
    if mode == "always":
        return True
    if mode == "never":
        return False
    return hasattr(stream, "isatty") and stream.isatty()


def _run(args, out) -> int:
    shapes_graph = _read(args.shapes)

    if args.command == "arcs":
        rows = extract_arcs(shapes_graph)
        if args.format == "json":
            data = [{"a": r.a.value, "direction": r.direction, "p": r.p.value, "b": r.b.value} for r in rows]
            out.write(json.dumps(data, indent=2) + "\n")
        else:
            out.write(format_arc_table(rows, {**PREFIXES, "foaf": "http://xmlns.com/foaf/0.1/"}))
        return EXIT_OK

    ps = parse_shapes(shapes_graph, _iri(args.shape))
    data = _read(args.data)

    if args.command == "check-all":
        if args.candidates:
            candidates = candidates_for_predicates(data, [_iri(p) for p in args.candidates])
        else:
            candidates = default_candidates(ps, data)
        failing = sorted(check_all(ps, data, candidates, workers=args.workers))
        if args.format == "json":
            out.write(json.dumps([term_str(x) for x in failing], indent=2) + "\n")
        else:
            out.writelines(term_str(x) + "\n" for x in failing)
        return EXIT_INVALID if failing else EXIT_OK

    focus = _iri(args.node)
    if focus not in nodes(data):
        raise UsageError(f"focus node {focus.n3()} does not occur in {args.data}")
    pg = PointedGraph(data, focus)

    if args.command == "validate":
        report = satisfies(ps, pg)
        if args.format == "json":
            out.write(report_to_json(report))
        else:
            out.write(report_to_text(report, color=_use_color(out)))
        return EXIT_OK if report.valid else EXIT_INVALID

    if args.command == "label":
        rows = labelling_rows(label_graph(pg, ps))
        if args.format == "json":
            out.write(json.dumps(rows, indent=2) + "\n")
        else:
            for row in rows:
                out.write(f"{row['node']}: {', '.join(row['labels']) or '-'}\n")
        return EXIT_OK

    if args.command == "oracle":
        ng = ps.neighbour_graph
        seed = (focus, ps.base_name)
        _, masks = closed_masks(data, ng, seed)
        least = minimal_closed_labelling(data, ng, seed)
        naive = naive_consistency_solutions(data, ng, focus, ps.base_name)
        least_rows = [{"node": term_str(x), "labels": sorted(ls)} for x, ls in sorted(least.labels().items())]
        naive_vars = [f"{term_str(x)} as {a}" for x, a in naive.variables]
        if args.format == "json":
            out.write(json.dumps({
                "closedLabellings": int(len(masks)),
                "leastSolution": least_rows,
                "naiveVariables": naive_vars,
                "naiveSolutions": [list(r) for r in naive.rows()],
            }, indent=2) + "\n")
        else:
            out.write(f"closed labellings: {len(masks)}\n")
            out.write("least solution:\n")
            out.writelines(f"  {r['node']}: {', '.join(r['labels'])}\n" for r in least_rows)
            out.write(f"naive solutions: {naive.count}\n")
            out.writelines(f"  v{i} = {v}\n" for i, v in enumerate(naive_vars))
            header = " ".join(f"v{i}" for i in range(len(naive_vars)))
            out.write(f"  {header}\n")
            for row in naive.rows():
                out.write("  " + " ".join(("T" if b else "F").ljust(len(f"v{i}")) for i, b in enumerate(row)).rstrip() + "\n")
        return EXIT_OK

    raise UsageError(f"unknown command {args.command!r}")


def main(argv: Optional[Sequence[str]] = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s", stream=err)
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        return _run(args, out)
    except UsageError as exc:
        err.write(f"error: {exc}\n")
        if str(exc).startswith("shaperec"):
            err.write(parser.format_usage())
        return EXIT_ERROR
    except (ShapeError, GraphError, InstanceTooLarge) as exc:
        code = getattr(exc, "code", "error")
        err.write(f"error: {code}: {exc}\n")
        return EXIT_ERROR
    except SystemExit as exc:  # --help / --version
        return exc.code if isinstance(exc.code, int) else EXIT_OK


if __name__ == "__main__":
    raise SystemExit(main())
