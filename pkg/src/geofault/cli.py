"""Command-line entry point.

Every subcommand is a thin composition of library calls: load a graph,
materialize, then check / validate / query / export. Machine-readable
results go to stdout, diagnostics to stderr. Exit codes: 0 success,
1 domain failure (inconsistent, non-conforming, or empty answer under
--expect-nonempty), 2 usage or parse errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .errors import GeoFaultError, ParseError
from .query import evaluate, explain_answer, parse_query
from .reasoner import check_consistency, compile_rules, materialize
from .schema import Schema, load_builtin_schema
from .schema_io import schema_from_document
from .store import Graph
from .terms import Term
from .turtle import (
    export_structured_json,
    graph_from_document,
    parse_turtle,
    serialize_turtle,
)
from .validator import compile_shapes, validate

SCHEMA_ENV = "GEOFAULT_SCHEMA"


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="geofault",
        description="GeoFault knowledge-graph engine",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--schema", help="schema Turtle file overriding the builtin "
                        f"(or ${SCHEMA_ENV})")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=lambda **kw:
                                argparse.ArgumentParser(parents=[common], **kw))

    p = sub.add_parser("check", help="materialize and report consistency")
    p.add_argument("graph")
    p.add_argument("--max-derived", type=int, default=None)
    p.add_argument("--format", choices=("text", "json"), default="text")

    p = sub.add_parser("validate", help="closed-world shape validation report")
    p.add_argument("graph")
    p.add_argument("--max-derived", type=int, default=None)

    p = sub.add_parser("query", help="run a .gfq query against a graph")
    p.add_argument("graph")
    p.add_argument("query")
    p.add_argument("--max-derived", type=int, default=None)
    p.add_argument("--expect-nonempty", action="store_true")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--explain", action="store_true",
                   help="also print the witnessing edges per answer (text format)")

    p = sub.add_parser("reason", help="materialize and print the graph")
    p.add_argument("graph")
    p.add_argument("--emit-inferred", action="store_true")
    p.add_argument("--max-derived", type=int, default=None)

    p = sub.add_parser("export", help="re-serialize a graph")
    p.add_argument("graph")
    p.add_argument("--format", choices=("ttl", "json"), default="ttl")
    p.add_argument("--max-derived", type=int, default=None)

    p = sub.add_parser("schema", help="inspect the active schema")
    p.add_argument("--list-classes", action="store_true")
    p.add_argument("--list-relations", action="store_true")

    p = sub.add_parser("serve", help="start the annotation service")
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--host", default="127.0.0.1")

    return parser


def _load_schema(path: str | None) -> Schema:
    path = path or os.environ.get(SCHEMA_ENV)
    if not path:
        return load_builtin_schema()
    text = Path(path).read_text(encoding="utf-8")
    return schema_from_document(parse_turtle(text, source_name=path))


def _load_graph(path: str, schema: Schema) -> Graph:
    text = Path(path).read_text(encoding="utf-8")
    doc = parse_turtle(text, source_name=Path(path).name)
    return graph_from_document(doc, schema)


def _materialized(args, schema: Schema) -> Graph:
    g = _load_graph(args.graph, schema)
    rules = compile_rules(schema)
    cap = getattr(args, "max_derived", None)
    if cap:
        return materialize(g, rules, max_derived=cap)
    return materialize(g, rules)


def _compact(term) -> str:
    """Default-namespace terms print bare; everything else prefixed."""
    if isinstance(term, Term):
        return term.local if term.ns == "geofault" else term.qname
    return str(term)


def run(argv: list[str]) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2

    try:
        schema = _load_schema(args.schema)

        if args.command == "check":
            report = check_consistency(_materialized(args, schema), schema)
            if args.format == "json":
                print(json.dumps(report.to_json_dict(), indent=2))
            elif report.consistent:
                print("consistent")
            else:
                print("inconsistent")
                for clash in report.clashes:
                    participants = ", ".join(t.qname for t in clash.participants)
                    print(f"  {clash.kind}: {participants}")
            return 0 if report.consistent else 1

        if args.command == "validate":
            m = _materialized(args, schema)
            report = validate(m, compile_shapes(schema))
            print(report.to_json())
            return 0 if report.conforms else 1

        if args.command == "query":
            m = _materialized(args, schema)
            text = Path(args.query).read_text(encoding="utf-8")
            q = parse_query(text, schema)
            answers = evaluate(m, q)
            if args.format == "json":
                payload = {
                    "projection": list(q.projection),
                    "bindings": [
                        {v: _compact(b[v]) for v in q.projection} for b in answers
                    ],
                    "explanations": [
                        [[_compact(e.subject), _compact(e.predicate), _compact(e.object)]
                         for e in explain_answer(m, q, b).edges]
                        for b in answers
                    ],
                }
                print(json.dumps(payload, indent=2))
            else:
                for b in answers:
                    print("\t".join(_compact(b[v]) for v in q.projection))
                    if args.explain:
                        for e in explain_answer(m, q, b).edges:
                            print(f"  # {_compact(e.subject)} {_compact(e.predicate)} "
                                  f"{_compact(e.object)}", file=sys.stderr)
            if args.expect_nonempty and not answers:
                print("no answers", file=sys.stderr)
                return 1
            return 0

        if args.command == "reason":
            m = _materialized(args, schema)
            print(serialize_turtle(m, include_inferred=args.emit_inferred), end="")
            return 0

        if args.command == "export":
            g = _load_graph(args.graph, schema)
            if args.format == "json":
                rules = compile_rules(schema)
                cap = args.max_derived
                m = materialize(g, rules, max_derived=cap) if cap else materialize(g, rules)
                print(export_structured_json(m))
            else:
                print(serialize_turtle(g), end="")
            return 0

        if args.command == "schema":
            shown = False
            if args.list_classes or not args.list_relations:
                for c in sorted(schema.classes, key=lambda c: c.term.qname):
                    print(c.term.qname)
                shown = True
            if args.list_relations:
                for r in sorted(schema.relations, key=lambda r: r.term.qname):
                    print(r.term.qname)
                shown = True
            return 0 if shown else 2

        if args.command == "serve":
            import uvicorn

            from .service import create_app

            uvicorn.run(create_app(schema=schema), host=args.host, port=args.port,
                        log_level="warning")
            return 0

    except FileNotFoundError as exc:
        print(f"error: no such file: {exc.filename}", file=sys.stderr)
        return 2
    except ParseError as exc:
        print(f"parse error at {exc.line}:{exc.column}: {exc.message}", file=sys.stderr)
        return 2
    except GeoFaultError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 2


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
