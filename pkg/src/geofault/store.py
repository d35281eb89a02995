"""Indexed assertion store.

Terms and literals are interned to dense store-local integer ids; the ids
never leave the store. Three indexes back pattern matching:

  fwd  predicate -> subject -> objects     (subject-predicate access)
  bwd  predicate -> object  -> subjects    (predicate-object access)
  so   (subject, object) packed -> predicates  (subject-object access)

Innermost collections hold a bare int while they have one element and are
promoted to a set on the second insert; with provenance stored as one
small int per triple this keeps a materialized multi-million-triple graph
within commodity-laptop memory.

Concurrency: single writer, many readers; readers should work on
snapshots. A snapshot shares the append-only intern table but copies the
indexes, so later writes to the source never show through.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Union

from .errors import (
    CannotRetractInferred,
    ResourceLimit,
    TypeMismatch,
    UnknownPredicate,
)
from .schema import Schema
from .terms import Literal, Node, RDF_TYPE, Term, node_key

_SHIFT = 24
_MAX_ID = 1 << _SHIFT  # 16.7M interned nodes per store


@dataclass(frozen=True)
class Provenance:
    kind: str  # asserted | imported | inferred
    detail: str | None = None  # source id / rule id

    def __post_init__(self):
        if self.kind not in ("asserted", "imported", "inferred"):
            raise ValueError(f"unknown provenance kind: {self.kind!r}")


ASSERTED = Provenance("asserted")


def imported(source: str) -> Provenance:
    return Provenance("imported", source)


def inferred(rule_id: str) -> Provenance:
    return Provenance("inferred", rule_id)


@dataclass(frozen=True)
class Assertion:
    subject: Term
    predicate: Term
    object: Node
    provenance: Provenance = ASSERTED

    @property
    def triple(self) -> tuple[Term, Term, Node]:
        return (self.subject, self.predicate, self.object)


@dataclass(frozen=True)
class Var:
    name: str

    def __post_init__(self):
        if not self.name:
            raise ValueError("variable names must be non-empty")


PatternPart = Union[Term, Literal, Var]


@dataclass(frozen=True)
class TriplePattern:
    subject: PatternPart
    predicate: PatternPart
    object: PatternPart

    def variables(self) -> set[str]:
        return {p.name for p in (self.subject, self.predicate, self.object) if isinstance(p, Var)}


# -- innermost index-value helpers -------------------------------------------
#
# An index slot holds a bare int while it has one element, a 2-tuple at two,
# and a set from three on. Small sets cost ~216 bytes each; the compressed
# forms keep million-triple graphs inside a laptop's memory.


def _vals(v) -> Iterator[int]:
    if isinstance(v, int):
        yield v
    else:
        yield from v


def _vals_contains(v, x: int) -> bool:
    return v == x if isinstance(v, int) else x in v


def _slot_add(d: dict, key: int, x: int) -> bool:
    """Add x under d[key]; returns False if already present."""
    cur = d.get(key)
    if cur is None:
        d[key] = x
        return True
    kind = type(cur)
    if kind is int:
        if cur == x:
            return False
        d[key] = (cur, x)
        return True
    if kind is tuple:
        if x == cur[0] or x == cur[1]:
            return False
        d[key] = {cur[0], cur[1], x}
        return True
    if x in cur:
        return False
    cur.add(x)
    return True


def _slot_remove(d: dict, key: int, x: int) -> None:
    cur = d.get(key)
    if cur is None:
        return
    kind = type(cur)
    if kind is int:
        if cur == x:
            del d[key]
        return
    if kind is tuple:
        if x == cur[0]:
            d[key] = cur[1]
        elif x == cur[1]:
            d[key] = cur[0]
        return
    cur.discard(x)
    if not cur:
        del d[key]
    elif len(cur) == 1:
        d[key] = next(iter(cur))


class Graph:
    """Triple store bound to a schema that fixes the valid predicates."""

    def __init__(self, schema: Schema):
        self.schema = schema
        self._nodes: list[Node] = []
        self._key_cache: list[str | None] = []
        self._ids: dict[Node, int] = {}
        self._fwd: dict[int, dict] = {}  # pred -> subj -> obj(s)
        self._bwd: dict[int, dict] = {}  # pred -> obj -> subj(s)
        self._so: dict[int, object] = {}  # (s<<SHIFT)|o -> pred(s)
        # provenance for non-asserted triples only; a triple present in the
        # indexes but absent here is plain asserted (code 0)
        self._prov: dict[int, int] = {}
        self._details: list[str | None] = [None]
        self._detail_ids: dict[str, int] = {}
        self._premises: dict[int, tuple] = {}  # packed -> packed premise triples
        self._count = 0
        self.materialized = False
        self._type_id: int | None = None

    # -- interning --------------------------------------------------------

    def intern(self, node: Node) -> int:
        idx = self._ids.get(node)
        if idx is None:
            idx = len(self._nodes)
            if idx >= _MAX_ID:
                raise ResourceLimit("term table overflow")
            self._ids[node] = idx
            self._nodes.append(node)
            self._key_cache.append(None)
        return idx

    def lookup(self, node: Node) -> int | None:
        return self._ids.get(node)

    def node(self, idx: int) -> Node:
        return self._nodes[idx]

    def key(self, idx: int) -> str:
        cached = self._key_cache[idx]
        if cached is None:
            cached = self._key_cache[idx] = node_key(self._nodes[idx])
        return cached

    @property
    def type_id(self) -> int:
        if self._type_id is None:
            self._type_id = self.intern(RDF_TYPE)
        return self._type_id

    # -- provenance encoding ----------------------------------------------

    _KINDS = ("asserted", "imported", "inferred")

    def _encode_prov(self, prov: Provenance) -> int:
        kind = self._KINDS.index(prov.kind)
        if prov.detail is None:
            return kind
        idx = self._detail_ids.get(prov.detail)
        if idx is None:
            idx = len(self._details)
            self._details.append(prov.detail)
            self._detail_ids[prov.detail] = idx
        return kind | (idx << 2)

    def _decode_prov(self, code: int) -> Provenance:
        kind = self._KINDS[code & 3]
        detail = self._details[code >> 2]
        if kind == "asserted":
            return ASSERTED
        return Provenance(kind, detail)

    @staticmethod
    def pack(s: int, p: int, o: int) -> int:
        return (s << (2 * _SHIFT)) | (p << _SHIFT) | o

    @staticmethod
    def unpack(t: int) -> tuple[int, int, int]:
        mask = _MAX_ID - 1
        return (t >> (2 * _SHIFT)) & mask, (t >> _SHIFT) & mask, t & mask

    # -- mutation ----------------------------------------------------------

    def _check_predicate(self, predicate: Term, obj: Node) -> None:
        if predicate == RDF_TYPE:
            if isinstance(obj, Literal):
                raise TypeMismatch("rdf:type takes a term object")
            return
        if not self.schema.is_relation(predicate):
            raise UnknownPredicate(f"predicate does not resolve: {predicate}")
        rel = self.schema.relation_def(predicate)
        if rel.literal_valued and isinstance(obj, Term):
            raise TypeMismatch(f"{predicate} takes a literal object")
        if not rel.literal_valued and isinstance(obj, Literal):
            raise TypeMismatch(f"{predicate} takes a term object")

    def add(self, subject: Term, predicate: Term, obj: Node,
            provenance: Provenance = ASSERTED) -> bool:
        """Assert a triple. Idempotent; the first writer's provenance sticks."""
        self._check_predicate(predicate, obj)
        s = self.intern(subject)
        p = self.intern(predicate)
        o = self.intern(obj)
        return self._add_ids(s, p, o, self._encode_prov(provenance))

    def add_assertion(self, a: Assertion) -> bool:
        return self.add(a.subject, a.predicate, a.object, a.provenance)

    def _add_ids(self, s: int, p: int, o: int, prov_code: int,
                 premises: tuple | None = None) -> bool:
        fwd = self._fwd.get(p)
        if fwd is None:
            fwd = self._fwd[p] = {}
            self._bwd[p] = {}
        if not _slot_add(fwd, s, o):
            return False
        _slot_add(self._bwd[p], o, s)
        _slot_add(self._so, (s << _SHIFT) | o, p)
        if prov_code:
            self._prov[self.pack(s, p, o)] = prov_code
        if premises is not None:
            self._premises[self.pack(s, p, o)] = premises
        self._count += 1
        return True

    def retract(self, subject: Term, predicate: Term, obj: Node) -> bool:
        s, p, o = self.lookup(subject), self.lookup(predicate), self.lookup(obj)
        if s is None or p is None or o is None:
            return False
        fwd = self._fwd.get(p)
        if fwd is None or not _vals_contains(fwd.get(s, -1), o):
            return False
        packed = self.pack(s, p, o)
        prov = self._prov.get(packed, 0)
        if (prov & 3) == 2:
            raise CannotRetractInferred(
                f"({subject} {predicate} {obj}) is inferred; re-materialize instead"
            )
        _slot_remove(fwd, s, o)
        if not fwd:
            del self._fwd[p]
            del self._bwd[p]
        else:
            _slot_remove(self._bwd[p], o, s)
        _slot_remove(self._so, (s << _SHIFT) | o, p)
        self._prov.pop(packed, None)
        self._premises.pop(packed, None)
        self._count -= 1
        return True

    # -- reads -------------------------------------------------------------

    def __len__(self) -> int:
        return self._count

    def contains(self, subject: Term, predicate: Term, obj: Node) -> bool:
        s, p, o = self.lookup(subject), self.lookup(predicate), self.lookup(obj)
        if s is None or p is None or o is None:
            return False
        return self._contains_ids(s, p, o)

    def _contains_ids(self, s: int, p: int, o: int) -> bool:
        # single probe on the subject-object index
        preds = self._so.get((s << _SHIFT) | o)
        if preds is None:
            return False
        return preds == p if isinstance(preds, int) else p in preds

    def provenance_of(self, subject: Term, predicate: Term, obj: Node) -> Provenance | None:
        s, p, o = self.lookup(subject), self.lookup(predicate), self.lookup(obj)
        if s is None or p is None or o is None or not self._contains_ids(s, p, o):
            return None
        return self._decode_prov(self._prov.get(self.pack(s, p, o), 0))

    def _iter_ids(self) -> Iterator[tuple[int, int, int]]:
        for p, fwd in self._fwd.items():
            for s, objs in fwd.items():
                for o in _vals(objs):
                    yield s, p, o

    def _iter_pattern_ids(self, s: int | None, p: int | None,
                          o: int | None) -> Iterator[tuple[int, int, int]]:
        """Candidate triples for a pattern with bound positions; picks the
        index with the most bound positions."""
        if p is not None:
            fwd = self._fwd.get(p)
            if fwd is None:
                return
            if s is not None:
                objs = fwd.get(s)
                if objs is None:
                    return
                if o is not None:
                    if _vals_contains(objs, o):
                        yield s, p, o
                    return
                for oo in _vals(objs):
                    yield s, p, oo
                return
            if o is not None:
                subs = self._bwd[p].get(o)
                if subs is None:
                    return
                for ss in _vals(subs):
                    yield ss, p, o
                return
            for ss, objs in fwd.items():
                for oo in _vals(objs):
                    yield ss, p, oo
            return
        if s is not None and o is not None:
            preds = self._so.get((s << _SHIFT) | o)
            if preds is None:
                return
            for pp in _vals(preds):
                yield s, pp, o
            return
        if s is not None:
            for pp, fwd in self._fwd.items():
                objs = fwd.get(s)
                if objs is not None:
                    for oo in _vals(objs):
                        yield s, pp, oo
            return
        if o is not None:
            for pp, bwd in self._bwd.items():
                subs = bwd.get(o)
                if subs is not None:
                    for ss in _vals(subs):
                        yield ss, pp, o
            return
        yield from self._iter_ids()

    def _assertion(self, s: int, p: int, o: int) -> Assertion:
        prov = self._decode_prov(self._prov.get(self.pack(s, p, o), 0))
        return Assertion(self._nodes[s], self._nodes[p], self._nodes[o], prov)

    def match(self, pattern: TriplePattern) -> list[Assertion]:
        """All assertions unifying with the pattern, in canonical order
        (subject, predicate, object keys). Repeated variables must agree."""
        bound: dict[str, int] = {}
        parts = []
        ok = True
        for part in (pattern.subject, pattern.predicate, pattern.object):
            if isinstance(part, Var):
                parts.append((part.name, None))
            else:
                idx = self.lookup(part)
                if idx is None:
                    ok = False
                parts.append((None, idx))
        if not ok:
            return []
        s_name, s_id = parts[0]
        p_name, p_id = parts[1]
        o_name, o_id = parts[2]
        out = []
        for s, p, o in self._iter_pattern_ids(s_id, p_id, o_id):
            bound.clear()
            fits = True
            for name, val in ((s_name, s), (p_name, p), (o_name, o)):
                if name is None:
                    continue
                if name in bound and bound[name] != val:
                    fits = False
                    break
                bound[name] = val
            if fits:
                out.append((s, p, o))
        key = self.key
        out.sort(key=lambda t: (key(t[0]), key(t[1]), key(t[2])))
        return [self._assertion(*t) for t in out]

    def assertions(self) -> Iterator[Assertion]:
        for s, p, o in self._iter_ids():
            yield self._assertion(s, p, o)

    def triple_set(self) -> set[tuple[str, str, str]]:
        key = self.key
        return {(key(s), key(p), key(o)) for s, p, o in self._iter_ids()}

    # -- estimates for query planning ---------------------------------------

    def estimate(self, s: int | None, p: int | None, o: int | None) -> int:
        if p is not None:
            fwd = self._fwd.get(p)
            if fwd is None:
                return 0
            if s is not None:
                objs = fwd.get(s)
                if objs is None:
                    return 0
                n = 1 if isinstance(objs, int) else len(objs)
                return 1 if o is not None else n
            if o is not None:
                subs = self._bwd[p].get(o)
                return 0 if subs is None else (1 if isinstance(subs, int) else len(subs))
            return sum(1 if isinstance(v, int) else len(v) for v in fwd.values())
        if s is not None and o is not None:
            preds = self._so.get((s << _SHIFT) | o)
            return 0 if preds is None else (1 if isinstance(preds, int) else len(preds))
        return self._count

    # -- copies --------------------------------------------------------------

    def snapshot(self) -> "Graph":
        """Immutable-by-convention logical copy; shares the intern table."""
        g = Graph.__new__(Graph)
        g.schema = self.schema
        g._nodes = self._nodes
        g._key_cache = self._key_cache
        g._ids = self._ids
        g._fwd = {p: {s: (v if isinstance(v, (int, tuple)) else set(v))
                      for s, v in m.items()}
                  for p, m in self._fwd.items()}
        g._bwd = {p: {o: (v if isinstance(v, (int, tuple)) else set(v))
                      for o, v in m.items()}
                  for p, m in self._bwd.items()}
        g._so = {k: (v if isinstance(v, (int, tuple)) else set(v))
                 for k, v in self._so.items()}
        g._prov = dict(self._prov)
        g._details = self._details
        g._detail_ids = self._detail_ids
        g._premises = dict(self._premises)
        g._count = self._count
        g.materialized = self.materialized
        g._type_id = self._type_id
        return g

    def audit_indexes(self) -> bool:
        """True iff the three indexes agree triple-for-triple."""
        from_fwd = {(s, p, o) for p, m in self._fwd.items()
                    for s, v in m.items() for o in _vals(v)}
        from_bwd = {(s, p, o) for p, m in self._bwd.items()
                    for o, v in m.items() for s in _vals(v)}
        from_so = {(k >> _SHIFT, p, k & (_MAX_ID - 1))
                   for k, v in self._so.items() for p in _vals(v)}
        return (from_fwd == from_bwd == from_so
                and len(from_fwd) == self._count
                and all(t in from_fwd for t in map(self.unpack, self._prov)))


def graph_from_assertions(schema: Schema, assertions: Iterable[Assertion]) -> Graph:
    g = Graph(schema)
    for a in assertions:
        g.add_assertion(a)
    return g
