"""Conjunctive basic-graph-pattern queries with a small text syntax.

Grammar (files use extension .gfq, UTF-8, '#' comments):

    SELECT ?v [?v ...] [DISTINCT] WHERE pattern (';' pattern)*
    pattern := (term | ?var) (relation | TYPE) (term | ?var)

TYPE is sugar for rdf:type; subclass semantics comes from querying a
materialized graph, where every instance carries all its inferred types.
Bare names resolve through the schema (unique local name) and otherwise
default to the geofault namespace, so instance ids can be written plain.

Evaluation is a backtracking join, most-selective-pattern-first using
index cardinality estimates; answers come out in lexicographic order of
the projected terms. explain_answer replays the evaluation and returns
the witnessing edge per pattern, in pattern order.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import BindingNotAnAnswer, ParseError
from .schema import Schema
from .store import Assertion, Graph, TriplePattern, Var
from .terms import Node, RDF_TYPE, Term, node_key

_TOKEN = re.compile(r"\S+")
_VAR = re.compile(r"\?([A-Za-z_][A-Za-z0-9_]*)\Z")
_QNAME = re.compile(r"([A-Za-z][A-Za-z0-9_-]*):([A-Za-z][A-Za-z0-9_]*)\Z")
_BARE = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")


@dataclass(frozen=True)
class Query:
    patterns: tuple[TriplePattern, ...]
    projection: tuple[str, ...]
    distinct: bool = False

    def __post_init__(self):
        if not self.patterns:
            raise ValueError("queries need at least one pattern")
        in_patterns = set()
        for p in self.patterns:
            in_patterns |= p.variables()
        missing = set(self.projection) - in_patterns
        if missing:
            raise ValueError(f"projected variables not in any pattern: {sorted(missing)}")


@dataclass(frozen=True)
class BindingSet:
    items: tuple[tuple[str, Node], ...]  # sorted by variable name

    @staticmethod
    def of(mapping: dict[str, Node]) -> "BindingSet":
        return BindingSet(tuple(sorted(mapping.items())))

    def as_dict(self) -> dict[str, Node]:
        return dict(self.items)

    def __getitem__(self, name: str) -> Node:
        for k, v in self.items:
            if k == name:
                return v
        raise KeyError(name)


@dataclass(frozen=True)
class PathExplanation:
    edges: tuple[Assertion, ...]  # one witnessing edge per pattern, in pattern order


# -- parsing -------------------------------------------------------------------


def _strip_comments(text: str) -> list[str]:
    lines = []
    for raw in text.split("\n"):
        pos = raw.find("#")
        lines.append(raw if pos < 0 else raw[:pos])
    return lines


def _positions(lines: list[str]):
    for lineno, line in enumerate(lines, start=1):
        for m in _TOKEN.finditer(line):
            yield m.group(0), lineno, m.start() + 1


def parse_query(text: str, schema: Schema) -> Query:
    toks = list(_positions(_strip_comments(text)))

    def err(msg: str, at: int) -> ParseError:
        if at < len(toks):
            word, line, col = toks[at]
            return ParseError(line, col, msg, word)
        if toks:
            word, line, col = toks[-1]
            return ParseError(line, col + len(word), msg, word)
        return ParseError(1, 1, msg, "")

    i = 0
    if not toks or toks[0][0].upper() != "SELECT":
        raise err("expected SELECT", 0)
    i += 1
    projection = []
    while i < len(toks):
        m = _VAR.match(toks[i][0])
        if not m:
            break
        projection.append(m.group(1))
        i += 1
    if not projection:
        raise err("expected at least one ?variable after SELECT", i)
    distinct = False
    if i < len(toks) and toks[i][0].upper() == "DISTINCT":
        distinct = True
        i += 1
    if i >= len(toks) or toks[i][0].upper() != "WHERE":
        raise err("expected WHERE", i)
    i += 1

    def parse_part(at: int, position: str):
        word, line, col = toks[at]
        m = _VAR.match(word)
        if m:
            return Var(m.group(1))
        if position == "predicate" and word == "TYPE":
            return RDF_TYPE
        m = _QNAME.match(word)
        if m:
            return Term(m.group(1), m.group(2))
        if _BARE.match(word):
            try:
                term = schema.resolve_local(word)
            except Exception as exc:
                raise ParseError(line, col, str(exc), word) from None
            if position == "predicate" and not schema.is_relation(term):
                raise ParseError(line, col, f"not a relation: {word}", word)
            return term
        raise ParseError(line, col, f"cannot read term: {word!r}", word)

    patterns = []
    while i < len(toks):
        if i + 2 >= len(toks):
            raise err("incomplete pattern: expected subject, predicate, object", i)
        s = parse_part(i, "subject")
        p = parse_part(i + 1, "predicate")
        o = parse_part(i + 2, "object")
        patterns.append(TriplePattern(s, p, o))
        i += 3
        if i < len(toks):
            if toks[i][0] != ";":
                raise err("expected ';' between patterns", i)
            i += 1
    if not patterns:
        raise err("expected at least one pattern after WHERE", i)
    try:
        return Query(tuple(patterns), tuple(projection), distinct)
    except ValueError as exc:
        raise err(str(exc), 0) from None


# -- evaluation ------------------------------------------------------------------


def _bound(part, env: dict[str, Node]):
    if isinstance(part, Var):
        return env.get(part.name)
    return part


def _id_or_none(g: Graph, node):
    return None if node is None else g.lookup(node)


def _pattern_estimate(g: Graph, pattern: TriplePattern, env: dict[str, Node]) -> int:
    parts = [_bound(pattern.subject, env), _bound(pattern.predicate, env),
             _bound(pattern.object, env)]
    ids = []
    for part in parts:
        if part is None:
            ids.append(None)
        else:
            idx = g.lookup(part)
            if idx is None:
                return 0
            ids.append(idx)
    return g.estimate(ids[0], ids[1], ids[2])


def _candidates(g: Graph, pattern: TriplePattern, env: dict[str, Node]):
    concrete = TriplePattern(
        _bound(pattern.subject, env) or pattern.subject,
        _bound(pattern.predicate, env) or pattern.predicate,
        _bound(pattern.object, env) or pattern.object,
    )
    return g.match(concrete)


def _extend(pattern: TriplePattern, assertion: Assertion,
            env: dict[str, Node]) -> dict[str, Node] | None:
    out = env
    for part, value in ((pattern.subject, assertion.subject),
                        (pattern.predicate, assertion.predicate),
                        (pattern.object, assertion.object)):
        if isinstance(part, Var):
            seen = out.get(part.name)
            if seen is None:
                if out is env:
                    out = dict(env)
                out[part.name] = value
            elif seen != value:
                return None
        elif part != value:
            return None
    return out if out is not env else dict(env)


def _solutions(g: Graph, q: Query):
    """Deterministic depth-first join; yields (env, witness edges by
    original pattern index)."""
    order_done: list[int] = []

    def recurse(env: dict[str, Node], remaining: list[int],
                witnesses: dict[int, Assertion]):
        if not remaining:
            yield dict(env), dict(witnesses)
            return
        best = min(remaining, key=lambda i: (_pattern_estimate(g, q.patterns[i], env), i))
        rest = [i for i in remaining if i != best]
        for assertion in _candidates(g, q.patterns[best], env):
            extended = _extend(q.patterns[best], assertion, env)
            if extended is None:
                continue
            witnesses[best] = assertion
            yield from recurse(extended, rest, witnesses)
            del witnesses[best]

    yield from recurse({}, list(range(len(q.patterns))), {})


def evaluate(g: Graph, q: Query) -> list[BindingSet]:
    """Projections of all homomorphisms, in lexicographic order; DISTINCT
    collapses repeated rows."""
    rows = []
    for env, _ in _solutions(g, q):
        key = tuple(node_key(env[v]) for v in q.projection)
        rows.append((key, BindingSet.of({v: env[v] for v in q.projection})))
    if q.distinct:
        dedup: dict[tuple, BindingSet] = {}
        for key, b in rows:
            dedup.setdefault(key, b)
        rows = list(dedup.items())
    rows.sort(key=lambda kb: kb[0])
    return [b for _, b in rows]


def explain_answer(g: Graph, q: Query, b: BindingSet) -> PathExplanation:
    """Witnessing edges, one per pattern, for the first solution (under
    the deterministic evaluation order) that projects to b."""
    want = b.as_dict()
    if set(want) != set(q.projection):
        raise BindingNotAnAnswer("binding does not cover the projection")
    for env, witnesses in _solutions(g, q):
        if all(env[v] == want[v] for v in q.projection):
            return PathExplanation(tuple(witnesses[i] for i in range(len(q.patterns))))
    raise BindingNotAnAnswer(f"{want} is not an answer of this query")
