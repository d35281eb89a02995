"""Schema serialization to and from the Turtle subset.

Classes and relations use rdfs/owl vocabulary; n-ary requirement and
disjointness axioms are reified as named geofault-meta individuals, since
the Turtle subset has no blank nodes.
"""

from __future__ import annotations

from .schema import Axiom, ClassDef, RelationDef, Schema
from .terms import (
    Literal,
    RDF_TYPE,
    Term,
    boolean_literal,
    string_literal,
)
from .turtle import Document, Triple

_RDFS = lambda local: Term("rdfs", local)  # noqa: E731
_OWL = lambda local: Term("owl", local)  # noqa: E731
_META = lambda local: Term("geofault-meta", local)  # noqa: E731

_CHAR_CLASS = {
    "transitive": _OWL("TransitiveProperty"),
    "symmetric": _OWL("SymmetricProperty"),
    "asymmetric": _OWL("AsymmetricProperty"),
    "irreflexive": _OWL("IrreflexiveProperty"),
    "functional": _OWL("FunctionalProperty"),
}
_CLASS_BY_CHAR = {v: k for k, v in _CHAR_CLASS.items()}


def schema_to_document(schema: Schema) -> Document:
    triples: list[Triple] = []
    meta = _META("SchemaVersion")
    triples.append((meta, _META("version"), string_literal(schema.version)))
    for c in schema.classes:
        t = c.term
        triples.append((t, RDF_TYPE, _OWL("Class")))
        if c.parent is not None:
            triples.append((t, _RDFS("subClassOf"), c.parent))
        triples.append((t, _RDFS("label"), string_literal(c.label)))
        if c.definition_text:
            triples.append((t, _RDFS("comment"), string_literal(c.definition_text)))
        triples.append((t, _META("userFacing"), boolean_literal(c.user_facing)))
    for r in schema.relations:
        t = r.term
        kind = "DatatypeProperty" if r.literal_valued else "ObjectProperty"
        triples.append((t, RDF_TYPE, _OWL(kind)))
        for char in sorted(r.characteristics):
            triples.append((t, RDF_TYPE, _CHAR_CLASS[char]))
        triples.append((t, _RDFS("domain"), r.domain))
        triples.append((t, _RDFS("range"), r.range))
        triples.append((t, _RDFS("label"), string_literal(r.label)))
        if r.inverse is not None:
            triples.append((t, _OWL("inverseOf"), r.inverse))
        if r.super_relation is not None:
            triples.append((t, _RDFS("subPropertyOf"), r.super_relation))
    for a in schema.axioms:
        name = "ax_" + a.id.replace("/", "_").replace(":", "_")
        node = _META(name)
        if a.kind == "DisjointClasses":
            triples.append((node, RDF_TYPE, _META("DisjointnessAxiom")))
            for i, op in enumerate(a.operands):
                triples.append((node, _META(f"operand{i + 1}"), op))
        else:
            triples.append((node, RDF_TYPE, _META("CardinalityRequirement")))
            cls, rel, filler = a.operands
            triples.append((node, _META("onClass"), cls))
            triples.append((node, _META("onRelation"), rel))
            triples.append((node, _META("onFiller"), filler))
            lo = 1 if a.kind == "SomeValuesRequirement" else a.cardinality
            triples.append((node, _META("minQualifiedCardinality"),
                            Literal("decimal", lo)))
            if a.kind == "ExactQualifiedCardinality":
                triples.append((node, _META("exactQualifiedCardinality"),
                                Literal("decimal", a.cardinality)))
    return Document(prefixes={}, triples=triples, source_name="schema")


def schema_from_document(doc: Document) -> Schema:
    spo: dict[Term, dict[Term, list]] = {}
    for s, p, o in doc.triples:
        spo.setdefault(s, {}).setdefault(p, []).append(o)

    def one(s: Term, p: Term, default=None):
        vals = spo.get(s, {}).get(p)
        return vals[0] if vals else default

    version = "0"
    classes: list[ClassDef] = []
    relations: list[RelationDef] = []
    axioms: list[Axiom] = []
    for s, preds in spo.items():
        kinds = preds.get(RDF_TYPE, [])
        if _META("SchemaVersion") == s:
            v = one(s, _META("version"))
            if isinstance(v, Literal):
                version = v.value
            continue
        if _OWL("Class") in kinds:
            label = one(s, _RDFS("label"))
            comment = one(s, _RDFS("comment"))
            facing = one(s, _META("userFacing"))
            classes.append(ClassDef(
                term=s,
                parent=one(s, _RDFS("subClassOf")),
                label=label.value if isinstance(label, Literal) else s.local,
                definition_text=comment.value if isinstance(comment, Literal) else "",
                user_facing=bool(facing.value) if isinstance(facing, Literal)
                else s.ns == "geofault",
            ))
        elif _OWL("ObjectProperty") in kinds or _OWL("DatatypeProperty") in kinds:
            chars = frozenset(
                _CLASS_BY_CHAR[k] for k in kinds if k in _CLASS_BY_CHAR
            )
            label = one(s, _RDFS("label"))
            relations.append(RelationDef(
                term=s,
                domain=one(s, _RDFS("domain")),
                range=one(s, _RDFS("range")),
                characteristics=chars,
                inverse=one(s, _OWL("inverseOf")),
                super_relation=one(s, _RDFS("subPropertyOf")),
                label=label.value if isinstance(label, Literal) else "",
            ))
        elif _META("DisjointnessAxiom") in kinds:
            operands = []
            i = 1
            while True:
                op = one(s, _META(f"operand{i}"))
                if op is None:
                    break
                operands.append(op)
                i += 1
            axioms.append(Axiom("DisjointClasses", tuple(operands)))
        elif _META("CardinalityRequirement") in kinds:
            ops = (one(s, _META("onClass")), one(s, _META("onRelation")),
                   one(s, _META("onFiller")))
            exact = one(s, _META("exactQualifiedCardinality"))
            lo = one(s, _META("minQualifiedCardinality"))
            if exact is not None:
                axioms.append(Axiom("ExactQualifiedCardinality", ops, int(exact.value)))
            elif lo is not None and int(lo.value) > 1:
                axioms.append(Axiom("MinQualifiedCardinality", ops, int(lo.value)))
            else:
                axioms.append(Axiom("SomeValuesRequirement", ops))

    classes.sort(key=lambda c: c.term.qname)
    relations.sort(key=lambda r: r.term.qname)
    axioms.sort(key=lambda a: a.id)
    return Schema(tuple(classes), tuple(relations), tuple(axioms), version)
