"""Forward-chaining materialization and open-world consistency checking.

Rules are compiled from schema axioms into Horn clauses of fixed shapes
(subclass, inverse, symmetric, transitive, sub-relation, domain, range).
Materialization runs semi-naive to a least fixpoint: each round joins the
previous round's delta against the accumulated base, rules applied in id
order so that the first-writer provenance of every inferred triple is
reproducible. Existential requirements never invent individuals; they are
the validator's business.

Consistency is open-world: only disjointness clashes, irreflexive
self-loops, asymmetry violations, and exact-cardinality exceedances are
inconsistencies. Missing required fillers are validation findings, not
clashes.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import ResourceLimit, TripleNotFound
from .schema import Schema
from .store import (
    Assertion,
    Graph,
    TriplePattern,
    Var,
    _SHIFT,
    _vals,
)
from .terms import RDF_TYPE, Term

DEFAULT_MAX_DERIVED = 10_000_000

_X, _Y, _Z = Var("x"), Var("y"), Var("z")


@dataclass(frozen=True)
class Rule:
    id: str
    body: tuple[TriplePattern, ...]
    head: TriplePattern
    source_axiom: str
    # execution tag consumed by the semi-naive engine; the declarative
    # body/head stay authoritative for replay and for the naive oracle
    op: str = field(repr=False, default="")
    terms: tuple[Term, ...] = field(repr=False, default=())

    def __post_init__(self):
        head_vars = self.head.variables()
        body_vars = set()
        for p in self.body:
            body_vars |= p.variables()
        if not head_vars <= body_vars:
            raise ValueError(f"rule {self.id}: unbound head variables")


def compile_rules(schema: Schema) -> list[Rule]:
    """Horn rules for subclass typing, inverses, symmetry, transitivity,
    sub-relations, and domain/range typing, ordered by rule id."""
    rules: list[Rule] = []

    for c in schema.classes:
        if c.parent is None:
            continue
        rules.append(Rule(
            id=f"subclass:{c.term.qname}",
            body=(TriplePattern(_X, RDF_TYPE, c.term),),
            head=TriplePattern(_X, RDF_TYPE, c.parent),
            source_axiom=f"SubClassOf/{c.term.qname}/{c.parent.qname}",
            op="subclass",
            terms=(c.term, c.parent),
        ))

    for r in schema.relations:
        if r.inverse is not None:
            rules.append(Rule(
                id=f"inverse:{r.term.qname}",
                body=(TriplePattern(_X, r.term, _Y),),
                head=TriplePattern(_Y, r.inverse, _X),
                source_axiom=f"InverseOf/{r.term.qname}/{r.inverse.qname}",
                op="inverse",
                terms=(r.term, r.inverse),
            ))
        if "symmetric" in r.characteristics:
            rules.append(Rule(
                id=f"symmetric:{r.term.qname}",
                body=(TriplePattern(_X, r.term, _Y),),
                head=TriplePattern(_Y, r.term, _X),
                source_axiom=f"Symmetric/{r.term.qname}",
                op="symmetric",
                terms=(r.term,),
            ))
        if "transitive" in r.characteristics:
            rules.append(Rule(
                id=f"transitive:{r.term.qname}",
                body=(TriplePattern(_X, r.term, _Y), TriplePattern(_Y, r.term, _Z)),
                head=TriplePattern(_X, r.term, _Z),
                source_axiom=f"Transitive/{r.term.qname}",
                op="transitive",
                terms=(r.term,),
            ))
        if r.super_relation is not None:
            rules.append(Rule(
                id=f"subrelation:{r.term.qname}",
                body=(TriplePattern(_X, r.term, _Y),),
                head=TriplePattern(_X, r.super_relation, _Y),
                source_axiom=f"SubRelationOf/{r.term.qname}/{r.super_relation.qname}",
                op="subrelation",
                terms=(r.term, r.super_relation),
            ))
        # typing with the root class is vacuous; eliding it keeps, e.g., a
        # million-node parthood graph from sprouting a million top typings
        root = next((c.term for c in schema.classes if c.parent is None), None)
        if not r.literal_valued:
            if r.domain != root:
                rules.append(Rule(
                    id=f"domain:{r.term.qname}",
                    body=(TriplePattern(_X, r.term, _Y),),
                    head=TriplePattern(_X, RDF_TYPE, r.domain),
                    source_axiom=f"DomainConstraint/{r.term.qname}/{r.domain.qname}",
                    op="domain",
                    terms=(r.term, r.domain),
                ))
            if r.range != root:
                rules.append(Rule(
                    id=f"range:{r.term.qname}",
                    body=(TriplePattern(_X, r.term, _Y),),
                    head=TriplePattern(_Y, RDF_TYPE, r.range),
                    source_axiom=f"RangeConstraint/{r.term.qname}/{r.range.qname}",
                    op="range",
                    terms=(r.term, r.range),
                ))

    rules.sort(key=lambda r: r.id)
    return rules


# -- materialization ----------------------------------------------------------


def materialize(g: Graph, rules: list[Rule],
                max_derived: int = DEFAULT_MAX_DERIVED,
                track_derivations: bool = True) -> Graph:
    """Least fixpoint of the rules over g's asserted/imported triples.

    Returns a fresh graph; inferred triples carry inferred(rule-id)
    provenance plus their first derivation's premises. Raises
    ResourceLimit when more than max_derived triples would be derived.
    """
    out = Graph(g.schema)
    base: list[int] = []
    for a in g.assertions():
        if a.provenance.kind == "inferred":
            continue
        s = out.intern(a.subject)
        p = out.intern(a.predicate)
        o = out.intern(a.object)
        if out._add_ids(s, p, o, out._encode_prov(a.provenance)):
            base.append(Graph.pack(s, p, o))

    type_id = out.type_id
    # pre-intern every term a rule mentions so id lookups never miss
    prepared = []
    for rule in rules:
        ids = tuple(out.intern(t) for t in rule.terms)
        prepared.append((rule, ids, out._encode_prov(_rule_prov(rule))))

    shift, shift2 = _SHIFT, 2 * _SHIFT
    mask = (1 << _SHIFT) - 1
    so_index = out._so
    track = track_derivations

    derived = 0
    delta = sorted(base)
    while delta:
        by_pred: dict[int, list] = {}
        types_by_class: dict[int, list[int]] = {}
        for t in delta:
            o = t & mask
            p = (t >> shift) & mask
            s = t >> shift2
            if p == type_id:
                types_by_class.setdefault(o, []).append(s)
            by_pred.setdefault(p, []).append((s, o))

        # packed conclusion -> prov code, or (prov, premise...) when tracking
        new: dict[int, object] = {}

        def emit1(s: int, p: int, o: int, prov: int, premise: int):
            """Single-premise conclusion; skips known triples with one
            probe on the subject-object index."""
            preds = so_index.get((s << shift) | o)
            if preds is not None and (preds == p if isinstance(preds, int)
                                      else p in preds):
                return
            packed = (s << shift2) | (p << shift) | o
            if packed not in new:
                new[packed] = (prov, premise) if track else prov

        for rule, ids, prov in prepared:
            op = rule.op
            if op == "subclass":
                c_id, parent_id = ids
                for s in types_by_class.get(c_id, ()):
                    emit1(s, type_id, parent_id, prov,
                          (s << shift2) | (type_id << shift) | c_id)
            elif op == "inverse":
                r_id, inv_id = ids
                for s, o in by_pred.get(r_id, ()):
                    emit1(o, inv_id, s, prov, (s << shift2) | (r_id << shift) | o)
            elif op == "symmetric":
                (r_id,) = ids
                for s, o in by_pred.get(r_id, ()):
                    emit1(o, r_id, s, prov, (s << shift2) | (r_id << shift) | o)
            elif op == "subrelation":
                r_id, sup_id = ids
                for s, o in by_pred.get(r_id, ()):
                    emit1(s, sup_id, o, prov, (s << shift2) | (r_id << shift) | o)
            elif op == "domain":
                r_id, dom_id = ids
                for s, o in by_pred.get(r_id, ()):
                    emit1(s, type_id, dom_id, prov,
                          (s << shift2) | (r_id << shift) | o)
            elif op == "range":
                r_id, rng_id = ids
                for s, o in by_pred.get(r_id, ()):
                    emit1(o, type_id, rng_id, prov,
                          (s << shift2) | (r_id << shift) | o)
            elif op == "transitive":
                (r_id,) = ids
                fwd = out._fwd.get(r_id)
                if fwd is None:
                    continue
                bwd = out._bwd.get(r_id)
                fwd_get, bwd_get = fwd.get, bwd.get
                p_shifted = r_id << shift
                for s, o in by_pred.get(r_id, ()):
                    succ = fwd_get(o)
                    if succ is not None:
                        s_shifted = s << shift2
                        left = s_shifted | p_shifted | o
                        for z in ((succ,) if isinstance(succ, int) else succ):
                            if _new_pair(so_index, s, r_id, z, shift):
                                packed = s_shifted | p_shifted | z
                                if packed not in new:
                                    new[packed] = (
                                        (prov, left, (o << shift2) | p_shifted | z)
                                        if track else prov)
                    pred = bwd_get(s)
                    if pred is not None:
                        right = (s << shift2) | p_shifted | o
                        for w in ((pred,) if isinstance(pred, int) else pred):
                            if _new_pair(so_index, w, r_id, o, shift):
                                packed = (w << shift2) | p_shifted | o
                                if packed not in new:
                                    new[packed] = (
                                        (prov, (w << shift2) | p_shifted | s,
                                         right)
                                        if track else prov)

        derived += len(new)
        if derived > max_derived:
            raise ResourceLimit(
                f"materialization exceeded the derived-triple cap ({max_derived})"
            )
        if track:
            for packed, entry in new.items():
                out._add_ids(packed >> shift2, (packed >> shift) & mask,
                             packed & mask, entry[0], entry[1:])
        else:
            for packed, prov in new.items():
                out._add_ids(packed >> shift2, (packed >> shift) & mask,
                             packed & mask, prov)
        delta = sorted(new)

    out.materialized = True
    return out


def _new_pair(so_index: dict, s: int, p: int, o: int, shift: int) -> bool:
    """False when (s, p, o) is already in the graph."""
    preds = so_index.get((s << shift) | o)
    if preds is None:
        return True
    return not (preds == p if isinstance(preds, int) else p in preds)


def _rule_prov(rule: Rule):
    from .store import inferred

    return inferred(rule.id)


# -- consistency ----------------------------------------------------------------


@dataclass(frozen=True)
class Clash:
    kind: str  # disjointness | irreflexivity | asymmetry | exact-cardinality-exceeded
    participants: tuple[Term, ...]
    evidence: tuple[Assertion, ...]


@dataclass(frozen=True)
class ConsistencyReport:
    consistent: bool
    clashes: tuple[Clash, ...]

    def to_json_dict(self) -> dict:
        return {
            "consistent": self.consistent,
            "clashes": [
                {
                    "kind": c.kind,
                    "participants": [t.qname for t in c.participants],
                    "evidence": [
                        [a.subject.qname, a.predicate.qname, str(a.object)]
                        for a in c.evidence
                    ],
                }
                for c in self.clashes
            ],
        }


def _extension(g: Graph, cls: Term) -> set[int]:
    c = g.lookup(cls)
    if c is None:
        return set()
    bwd = g._bwd.get(g.type_id)
    if bwd is None:
        return set()
    subs = bwd.get(c)
    return set() if subs is None else set(_vals(subs))


def check_consistency(g: Graph, schema: Schema) -> ConsistencyReport:
    """Clash report over a materialization fixpoint.

    Open-world: min-cardinality shortfalls are not clashes; they belong to
    the validator.
    """
    clashes: list[Clash] = []
    type_id = g.type_id

    for axiom in schema.axioms:
        if axiom.kind != "DisjointClasses":
            continue
        ops = axiom.operands
        for i in range(len(ops)):
            for j in range(i + 1, len(ops)):
                both = _extension(g, ops[i]) & _extension(g, ops[j])
                for x in sorted(both, key=g.key):
                    clashes.append(Clash(
                        "disjointness",
                        (g.node(x), ops[i], ops[j]),
                        (g._assertion(x, type_id, g.lookup(ops[i])),
                         g._assertion(x, type_id, g.lookup(ops[j]))),
                    ))

    for rel in schema.relations:
        chars = rel.characteristics
        r_id = g.lookup(rel.term)
        if r_id is None:
            continue
        fwd = g._fwd.get(r_id)
        if fwd is None:
            continue
        if "irreflexive" in chars:
            for s, objs in fwd.items():
                if any(o == s for o in _vals(objs)):
                    clashes.append(Clash(
                        "irreflexivity", (g.node(s), rel.term),
                        (g._assertion(s, r_id, s),),
                    ))
        if "asymmetric" in chars:
            for s, objs in fwd.items():
                for o in _vals(objs):
                    if not any(x == s for x in _vals(fwd.get(o, ()))):
                        continue
                    if s != o and g.key(s) > g.key(o):
                        continue  # report each unordered pair once
                    clashes.append(Clash(
                        "asymmetry", (g.node(s), rel.term, g.node(o)),
                        (g._assertion(s, r_id, o), g._assertion(o, r_id, s)),
                    ))

    for axiom in schema.axioms:
        if axiom.kind != "ExactQualifiedCardinality":
            continue
        cls, rel, filler = axiom.operands
        limit = axiom.cardinality
        r_id = g.lookup(rel)
        if r_id is None:
            continue
        fwd = g._fwd.get(r_id, {})
        filler_ext = _extension(g, filler)
        for x in sorted(_extension(g, cls), key=g.key):
            fillers = sorted(
                (o for o in _vals(fwd.get(x, ())) if o in filler_ext), key=g.key
            )
            if len(fillers) > limit:
                clashes.append(Clash(
                    "exact-cardinality-exceeded",
                    (g.node(x), rel, filler),
                    tuple(g._assertion(x, r_id, o) for o in fillers),
                ))

    clashes.sort(key=lambda c: (c.kind, tuple(t.qname for t in c.participants)))
    return ConsistencyReport(not clashes, tuple(clashes))


# -- explanation -------------------------------------------------------------------


@dataclass(frozen=True)
class Derivation:
    conclusion: Assertion
    rule: str | None  # None at asserted/imported leaves
    premises: tuple["Derivation", ...]

    def depth(self) -> int:
        return 1 + max((p.depth() for p in self.premises), default=0)


def explain(g: Graph, subject: Term, predicate: Term, obj) -> Derivation:
    """Derivation tree for a triple: the stored first derivation, expanded
    recursively down to asserted/imported leaves."""
    s, p, o = g.lookup(subject), g.lookup(predicate), g.lookup(obj)
    if s is None or p is None or o is None or not g._contains_ids(s, p, o):
        raise TripleNotFound(f"({subject} {predicate} {obj}) not in graph")
    return _explain_ids(g, s, p, o)


def _explain_ids(g: Graph, s: int, p: int, o: int) -> Derivation:
    packed = Graph.pack(s, p, o)
    prov = g._decode_prov(g._prov[packed])
    conclusion = Assertion(g.node(s), g.node(p), g.node(o), prov)
    if prov.kind != "inferred":
        return Derivation(conclusion, None, ())
    premises = g._premises.get(packed, ())
    children = tuple(_explain_ids(g, *Graph.unpack(t)) for t in premises)
    return Derivation(conclusion, prov.detail, children)
