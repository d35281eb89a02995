"""Turtle subset reader/writer and the structured JSON export.

Grammar subset: @prefix directives, prefixed names, full IRIs in angle
brackets, `a` as the typing predicate, string/decimal/boolean literals
with an optional ^^ datatype, object lists (,), predicate lists (;), and
line comments (#). No blank nodes, no collections, no multi-line strings.

Serialization is byte-deterministic: subjects sort lexicographically,
predicates group with ';' (rdf:type first, written as 'a'), objects group
with ',' and sort. Only asserted/imported triples are written unless
include_inferred is set.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from decimal import Decimal, InvalidOperation
from typing import Iterable

from .errors import ParseError
from .store import Graph, Provenance, imported
from .schema import Schema
from .terms import (
    Literal,
    Node,
    PREFIXES,
    RDF_TYPE,
    Term,
    node_key,
)

Triple = tuple[Term, Term, Node]


@dataclass
class Document:
    prefixes: dict[str, str] = field(default_factory=dict)
    triples: list[Triple] = field(default_factory=list)
    source_name: str = "<string>"


# -- lexer -------------------------------------------------------------------

_PUNCT = {".", ";", ",", "^^"}


@dataclass(frozen=True)
class _Tok:
    kind: str  # prefixed | iri | string | number | punct | keyword | eof
    text: str
    line: int
    col: int


class _Lexer:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0
        self.line = 1
        self.col = 1

    def _error(self, message: str, line=None, col=None) -> ParseError:
        line = line or self.line
        col = col or self.col
        src = self.text.split("\n")
        snippet = src[line - 1][max(0, col - 11):col + 10] if line <= len(src) else ""
        return ParseError(line, col, message, snippet)

    def _advance(self, n: int = 1):
        for _ in range(n):
            if self.pos < len(self.text) and self.text[self.pos] == "\n":
                self.line += 1
                self.col = 1
            else:
                self.col += 1
            self.pos += 1

    def _skip_ws(self):
        while self.pos < len(self.text):
            ch = self.text[self.pos]
            if ch in " \t\r\n":
                self._advance()
            elif ch == "#":
                while self.pos < len(self.text) and self.text[self.pos] != "\n":
                    self._advance()
            else:
                return

    def next(self) -> _Tok:
        self._skip_ws()
        if self.pos >= len(self.text):
            return _Tok("eof", "", self.line, self.col)
        line, col = self.line, self.col
        ch = self.text[self.pos]
        if ch in ".;,":
            self._advance()
            return _Tok("punct", ch, line, col)
        if self.text.startswith("^^", self.pos):
            self._advance(2)
            return _Tok("punct", "^^", line, col)
        if ch == "<":
            end = self.text.find(">", self.pos + 1)
            nl = self.text.find("\n", self.pos + 1)
            if end == -1 or (nl != -1 and nl < end):
                raise self._error("unterminated IRI", line, col)
            text = self.text[self.pos + 1:end]
            self._advance(end + 1 - self.pos)
            return _Tok("iri", text, line, col)
        if ch == '"':
            out = []
            i = self.pos + 1
            while True:
                if i >= len(self.text) or self.text[i] == "\n":
                    raise self._error("unterminated string", line, col)
                c = self.text[i]
                if c == "\\":
                    if i + 1 >= len(self.text):
                        raise self._error("unterminated string", line, col)
                    esc = self.text[i + 1]
                    mapped = {"\\": "\\", '"': '"', "n": "\n", "t": "\t", "r": "\r"}.get(esc)
                    if mapped is None:
                        raise self._error(f"bad escape: \\{esc}", line, col)
                    out.append(mapped)
                    i += 2
                    continue
                if c == '"':
                    break
                out.append(c)
                i += 1
            self._advance(i + 1 - self.pos)
            return _Tok("string", "".join(out), line, col)
        if ch.isdigit() or (ch in "+-" and self.pos + 1 < len(self.text)
                            and self.text[self.pos + 1].isdigit()):
            i = self.pos + 1
            while i < len(self.text) and (self.text[i].isdigit() or self.text[i] == "."):
                i += 1
            # a trailing dot terminates the statement, not the number
            if self.text[i - 1] == ".":
                i -= 1
            text = self.text[self.pos:i]
            self._advance(i - self.pos)
            return _Tok("number", text, line, col)
        # bare word: prefixed name, @prefix, a, true/false
        i = self.pos
        while i < len(self.text) and (self.text[i].isalnum() or self.text[i] in "_:@-"):
            i += 1
        if i == self.pos:
            raise self._error(f"unexpected character {ch!r}", line, col)
        text = self.text[self.pos:i]
        self._advance(i - self.pos)
        if text in ("@prefix", "a", "true", "false"):
            return _Tok("keyword", text, line, col)
        if ":" in text:
            return _Tok("prefixed", text, line, col)
        raise self._error(f"expected a prefixed name, got {text!r}", line, col)


# -- parser ------------------------------------------------------------------


class _Parser:
    def __init__(self, text: str, source_name: str):
        self.lexer = _Lexer(text)
        self.doc = Document(prefixes={}, triples=[], source_name=source_name)
        self.tok = self.lexer.next()

    def _error(self, message: str, tok: _Tok | None = None) -> ParseError:
        tok = tok or self.tok
        return self.lexer._error(message, tok.line, tok.col)

    def _next(self):
        self.tok = self.lexer.next()

    def _expect_punct(self, text: str):
        if self.tok.kind != "punct" or self.tok.text != text:
            raise self._error(f"expected {text!r}")
        self._next()

    def _iri_to_term(self, iri: str, tok: _Tok) -> Term:
        table = {**PREFIXES, **self.doc.prefixes}
        for prefix, base in sorted(table.items(), key=lambda kv: -len(kv[1])):
            if iri.startswith(base) and len(iri) > len(base):
                return self._make_term(prefix, iri[len(base):], tok)
        raise self._error(f"IRI outside known namespaces: <{iri}>", tok)

    def _make_term(self, prefix: str, local: str, tok: _Tok) -> Term:
        try:
            return Term(prefix, local)
        except ValueError as exc:
            raise self._error(str(exc), tok) from None

    def _prefixed_to_term(self, text: str, tok: _Tok) -> Term:
        prefix, _, local = text.partition(":")
        if prefix not in self.doc.prefixes and prefix not in PREFIXES:
            raise self._error(f"undeclared prefix: {prefix!r}", tok)
        if not local:
            raise self._error("empty local name", tok)
        return self._make_term(prefix, local, tok)

    def _parse_term(self) -> Term:
        tok = self.tok
        if tok.kind == "prefixed":
            self._next()
            return self._prefixed_to_term(tok.text, tok)
        if tok.kind == "iri":
            self._next()
            return self._iri_to_term(tok.text, tok)
        raise self._error("expected a term")

    def _datatype_literal(self, lexical: str, dtype: Term, tok: _Tok) -> Literal:
        if dtype == Term("xsd", "string"):
            return Literal("string", lexical)
        if dtype == Term("xsd", "boolean"):
            if lexical not in ("true", "false"):
                raise self._error(f"bad boolean: {lexical!r}", tok)
            return Literal("boolean", lexical == "true")
        if dtype == Term("xsd", "decimal") or dtype == Term("xsd", "integer"):
            unit = None
        elif dtype.ns == "unit" and dtype.local in ("degree", "meter"):
            unit = dtype.local
        else:
            raise self._error(f"unsupported datatype: {dtype}", tok)
        try:
            return Literal("decimal", Decimal(lexical), unit)
        except InvalidOperation:
            raise self._error(f"bad decimal: {lexical!r}", tok) from None

    def _parse_object(self) -> Node:
        tok = self.tok
        if tok.kind in ("prefixed", "iri"):
            return self._parse_term()
        if tok.kind == "string":
            self._next()
            if self.tok.kind == "punct" and self.tok.text == "^^":
                self._next()
                dtok = self.tok
                dtype = self._parse_term()
                return self._datatype_literal(tok.text, dtype, dtok)
            return Literal("string", tok.text)
        if tok.kind == "number":
            self._next()
            try:
                return Literal("decimal", Decimal(tok.text))
            except InvalidOperation:
                raise self._error(f"bad number: {tok.text!r}", tok) from None
        if tok.kind == "keyword" and tok.text in ("true", "false"):
            self._next()
            return Literal("boolean", tok.text == "true")
        raise self._error("expected an object")

    def _parse_prefix_directive(self):
        self._next()
        tok = self.tok
        if tok.kind != "prefixed" or not tok.text.endswith(":") or tok.text.count(":") != 1:
            raise self._error("expected a prefix declaration like ex:")
        prefix = tok.text[:-1]
        self._next()
        if self.tok.kind != "iri":
            raise self._error("expected an IRI")
        iri = self.tok.text
        known = self.doc.prefixes.get(prefix, PREFIXES.get(prefix))
        if known is not None and known != iri:
            raise self._error(f"prefix {prefix!r} redeclared with a different IRI", tok)
        self.doc.prefixes[prefix] = iri
        self._next()
        self._expect_punct(".")

    def parse(self) -> Document:
        while self.tok.kind != "eof":
            if self.tok.kind == "keyword" and self.tok.text == "@prefix":
                self._parse_prefix_directive()
                continue
            subject = self._parse_term()
            while True:
                if self.tok.kind == "keyword" and self.tok.text == "a":
                    predicate = RDF_TYPE
                    self._next()
                else:
                    predicate = self._parse_term()
                while True:
                    obj = self._parse_object()
                    self.doc.triples.append((subject, predicate, obj))
                    if self.tok.kind == "punct" and self.tok.text == ",":
                        self._next()
                        continue
                    break
                if self.tok.kind == "punct" and self.tok.text == ";":
                    self._next()
                    continue
                break
            self._expect_punct(".")
        return self.doc


def parse_turtle(text: str, source_name: str = "<string>") -> Document:
    return _Parser(text, source_name).parse()


# -- serializer ----------------------------------------------------------------


def _term_out(term: Term, prefixes: dict[str, str]) -> str:
    if term.ns in prefixes or term.ns in PREFIXES:
        return term.qname
    raise ValueError(f"no prefix for namespace {term.ns!r}")


def _node_out(node: Node, prefixes: dict[str, str]) -> str:
    if isinstance(node, Term):
        return _term_out(node, prefixes)
    if node.kind == "string":
        body = node.value.replace("\\", "\\\\").replace('"', '\\"')
        body = body.replace("\n", "\\n").replace("\t", "\\t").replace("\r", "\\r")
        return f'"{body}"'
    if node.kind == "boolean":
        return node.lexical
    if node.unit:
        return f'"{node.lexical}"^^unit:{node.unit}'
    return node.lexical


def serialize_triples(triples: Iterable[Triple], prefixes: dict[str, str]) -> str:
    """Canonical Turtle bytes for a triple set (order-insensitive input)."""
    used = dict(prefixes)
    by_subject: dict[str, dict] = {}
    subject_term: dict[str, Term] = {}
    for s, p, o in triples:
        skey = _term_out(s, used)
        subject_term[skey] = s
        pkey = "a" if p == RDF_TYPE else _term_out(p, used)
        by_subject.setdefault(skey, {}).setdefault(pkey, set()).add(_node_out(o, used))
        if isinstance(o, Literal) and o.unit:
            used.setdefault("unit", PREFIXES["unit"])
    lines = []
    for prefix in sorted(used):
        lines.append(f"@prefix {prefix}: <{used[prefix]}> .")
    if used:
        lines.append("")
    for skey in sorted(by_subject):
        preds = by_subject[skey]
        pkeys = sorted(preds, key=lambda k: ("" if k == "a" else k))
        plines = []
        for pkey in pkeys:
            objs = ", ".join(sorted(preds[pkey]))
            plines.append(f"{pkey} {objs}")
        joined = " ;\n    ".join(plines)
        lines.append(f"{skey} {joined} .")
    return "\n".join(lines) + "\n"


def serialize_turtle(g: Graph, prefixes: dict[str, str] | None = None,
                     include_inferred: bool = False) -> str:
    prefixes = dict(PREFIXES if prefixes is None else prefixes)
    triples = [
        a.triple
        for a in g.assertions()
        if include_inferred or a.provenance.kind != "inferred"
    ]
    return serialize_triples(triples, prefixes)


def serialize_document(doc: Document) -> str:
    return serialize_triples(doc.triples, {**PREFIXES, **doc.prefixes})


def graph_from_document(doc: Document, schema: Schema,
                        provenance: Provenance | None = None) -> Graph:
    prov = provenance if provenance is not None else imported(doc.source_name)
    g = Graph(schema)
    for s, p, o in doc.triples:
        g.add(s, p, o, prov)
    return g


# -- structured export -----------------------------------------------------------


def export_structured(g: Graph, include_inferred: bool = True) -> dict:
    """Node/edge document for UI consumption; stable key order throughout."""
    names: dict[str, Term] = {}
    types: dict[str, list[str]] = {}
    edges = []
    for a in g.assertions():
        if not include_inferred and a.provenance.kind == "inferred":
            continue
        skey = a.subject.qname
        names.setdefault(skey, a.subject)
        if a.predicate == RDF_TYPE:
            types.setdefault(skey, []).append(a.object.qname)
            names.setdefault(a.object.qname, a.object)
            continue
        if isinstance(a.object, Term):
            names.setdefault(a.object.qname, a.object)
            to = a.object.qname
        else:
            to = _node_out(a.object, PREFIXES)
        edge = {
            "from": skey,
            "rel": a.predicate.qname,
            "to": to,
            "provenance": a.provenance.kind,
        }
        if a.provenance.kind == "inferred":
            edge["rule"] = a.provenance.detail
        elif a.provenance.kind == "imported":
            edge["source"] = a.provenance.detail
        edges.append(edge)
    schema = g.schema
    nodes = []
    for qname in sorted(names):
        term = names[qname]
        label = term.local
        if schema.is_class(term):
            label = schema.class_def(term).label
        nodes.append({
            "id": qname,
            "label": label,
            "types": sorted(set(types.get(qname, []))),
        })
    edges.sort(key=lambda e: (e["from"], e["rel"], e["to"]))
    return {
        "nodes": nodes,
        "edges": edges,
        "prefixes": {k: PREFIXES[k] for k in sorted(PREFIXES)},
    }


def export_structured_json(g: Graph, include_inferred: bool = True) -> str:
    return json.dumps(export_structured(g, include_inferred), indent=2)
