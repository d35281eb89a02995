"""Ontology schema: class taxonomy, relation profiles, and axioms.

The schema is immutable after construction and safe to share across
threads. Lookup tables and subclass closures are built once in
__post_init__.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from decimal import Decimal

from .errors import AmbiguousTerm, UnknownTerm
from .terms import Term, geofault

CHARACTERISTICS = ("transitive", "symmetric", "asymmetric", "irreflexive", "functional")

AXIOM_KINDS = (
    "SubClassOf",
    "DisjointClasses",
    "SomeValuesRequirement",
    "MinQualifiedCardinality",
    "ExactQualifiedCardinality",
    "DomainConstraint",
    "RangeConstraint",
)

ROOT = Term("bfo", "Entity")


@dataclass(frozen=True)
class ClassDef:
    term: Term
    parent: Term | None  # None only for the root
    label: str
    definition_text: str = ""
    user_facing: bool = False


@dataclass(frozen=True)
class RelationDef:
    term: Term
    domain: Term
    range: Term
    characteristics: frozenset[str] = frozenset()
    inverse: Term | None = None
    super_relation: Term | None = None
    label: str = ""

    def __post_init__(self):
        bad = set(self.characteristics) - set(CHARACTERISTICS)
        if bad:
            raise ValueError(f"unknown characteristics: {sorted(bad)}")
        if {"symmetric", "asymmetric"} <= set(self.characteristics):
            raise ValueError(f"{self.term}: symmetric and asymmetric are exclusive")
        if not self.label:
            object.__setattr__(self, "label", self.term.local.replace("_", " "))

    @property
    def literal_valued(self) -> bool:
        return self.range.ns == "xsd"


@dataclass(frozen=True)
class Axiom:
    kind: str
    operands: tuple[Term, ...]
    cardinality: int | None = None

    def __post_init__(self):
        if self.kind not in AXIOM_KINDS:
            raise ValueError(f"unknown axiom kind: {self.kind!r}")
        if self.kind in ("MinQualifiedCardinality", "ExactQualifiedCardinality"):
            if self.cardinality is None or self.cardinality < 1:
                raise ValueError(f"{self.kind} needs cardinality >= 1")
            if len(self.operands) != 3:
                raise ValueError(f"{self.kind} needs (class, relation, filler)")
        if self.kind == "SomeValuesRequirement" and len(self.operands) != 3:
            raise ValueError("SomeValuesRequirement needs (class, relation, filler)")
        if self.kind == "DisjointClasses":
            if len(self.operands) < 2 or len(set(self.operands)) != len(self.operands):
                raise ValueError("DisjointClasses needs >= 2 distinct operands")

    @property
    def id(self) -> str:
        parts = [self.kind] + [t.qname for t in self.operands]
        if self.cardinality is not None:
            parts.append(str(self.cardinality))
        return "/".join(parts)


@dataclass(eq=False)
class Schema:
    classes: tuple[ClassDef, ...]
    relations: tuple[RelationDef, ...]
    axioms: tuple[Axiom, ...]
    version: str = "0"

    _class_by_term: dict = field(default_factory=dict, repr=False)
    _rel_by_term: dict = field(default_factory=dict, repr=False)
    _by_local: dict = field(default_factory=dict, repr=False)
    _closures: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        self.classes = tuple(self.classes)
        self.relations = tuple(self.relations)
        self.axioms = tuple(self.axioms)
        for c in self.classes:
            if c.term in self._class_by_term:
                raise ValueError(f"duplicate class {c.term}")
            self._class_by_term[c.term] = c
        for r in self.relations:
            if r.term in self._rel_by_term or r.term in self._class_by_term:
                raise ValueError(f"duplicate term {r.term}")
            self._rel_by_term[r.term] = r
        for t in list(self._class_by_term) + list(self._rel_by_term):
            self._by_local.setdefault(t.local, []).append(t)
        self._check()

    def __eq__(self, other):
        if not isinstance(other, Schema):
            return NotImplemented
        return (
            set(self.classes) == set(other.classes)
            and set(self.relations) == set(other.relations)
            and set(self.axioms) == set(other.axioms)
            and self.version == other.version
        )

    def _check(self):
        for c in self.classes:
            if c.parent is None:
                if c.term != ROOT:
                    raise ValueError(f"{c.term}: only {ROOT} may lack a parent")
            elif c.parent not in self._class_by_term:
                raise ValueError(f"{c.term}: unresolved parent {c.parent}")
            # namespace fixes the user-facing flag for the bundled vocabularies
            if c.term.ns in ("bfo", "geocore") and c.user_facing:
                raise ValueError(f"{c.term}: upper-level terms are never user-facing")
            if c.term.ns == "geofault" and not c.user_facing:
                raise ValueError(f"{c.term}: domain terms are always user-facing")
        if self.classes and ROOT not in self._class_by_term:
            raise ValueError(f"missing root class {ROOT}")
        for c in self.classes:
            self.ancestors(c.term)  # raises on cycles / dangling parents
        for r in self.relations:
            for t in (r.domain, r.range):
                if t.ns != "xsd" and t not in self._class_by_term:
                    raise ValueError(f"{r.term}: unresolved {t}")
            if r.inverse is not None:
                inv = self._rel_by_term.get(r.inverse)
                if inv is None:
                    raise ValueError(f"{r.term}: unresolved inverse {r.inverse}")
                if inv.inverse != r.term:
                    raise ValueError(f"{r.term}: inverse is not an involution")
            seen = {r.term}
            cur = r
            while cur.super_relation is not None:
                if cur.super_relation in seen:
                    raise ValueError(f"{r.term}: super-relation cycle")
                seen.add(cur.super_relation)
                nxt = self._rel_by_term.get(cur.super_relation)
                if nxt is None:
                    raise ValueError(f"{cur.term}: unresolved super {cur.super_relation}")
                cur = nxt
        for a in self.axioms:
            for t in a.operands:
                if t not in self._class_by_term and t not in self._rel_by_term:
                    raise ValueError(f"axiom {a.id}: unresolved {t}")

    # -- lookups ---------------------------------------------------------

    def class_def(self, term: Term) -> ClassDef:
        try:
            return self._class_by_term[term]
        except KeyError:
            raise UnknownTerm(f"unknown class: {term}") from None

    def relation_def(self, term: Term) -> RelationDef:
        try:
            return self._rel_by_term[term]
        except KeyError:
            raise UnknownTerm(f"unknown relation: {term}") from None

    def is_class(self, term: Term) -> bool:
        return term in self._class_by_term

    def is_relation(self, term: Term) -> bool:
        return term in self._rel_by_term

    def resolve_local(self, name: str) -> Term:
        """Resolve a bare local name; unknown names default to geofault:."""
        hits = self._by_local.get(name)
        if not hits:
            return geofault(name)
        if len(hits) > 1:
            raise AmbiguousTerm(f"{name} is ambiguous: {[t.qname for t in hits]}")
        return hits[0]

    def ancestors(self, c: Term) -> tuple[Term, ...]:
        """All ancestors of c including c, ordered child-to-root."""
        cached = self._closures.get(c)
        if cached is not None:
            return cached
        if c not in self._class_by_term:
            raise UnknownTerm(f"unknown class: {c}")
        chain = []
        seen = set()
        cur: Term | None = c
        while cur is not None:
            if cur in seen:
                raise ValueError(f"class cycle through {cur}")
            seen.add(cur)
            chain.append(cur)
            cur = self._class_by_term[cur].parent
        if chain[-1] != ROOT:
            raise ValueError(f"{c}: parent chain does not reach {ROOT}")
        out = tuple(chain)
        self._closures[c] = out
        return out


# -- operations ------------------------------------------------------------


def subclass_closure(schema: Schema, c: Term) -> list[Term]:
    return list(schema.ancestors(c))


def relation_profile(schema: Schema, r: Term) -> RelationDef:
    return schema.relation_def(r)


def annotation_vocabulary(schema: Schema) -> list[tuple[ClassDef, list[RelationDef]]]:
    """User-facing classes, each with the relations it can participate in.

    A relation applies to a class when the class falls under the relation's
    domain or under its range (so qualities list quality_of-style relations
    from both ends). Output is stable: classes alphabetical by label, then
    relations alphabetical by label.
    """
    out = []
    for c in sorted(schema.classes, key=lambda c: (c.label.lower(), c.term.qname)):
        if not c.user_facing:
            continue
        closure = set(schema.ancestors(c.term))
        rels = [
            r
            for r in schema.relations
            if r.domain in closure or (not r.literal_valued and r.range in closure)
        ]
        rels.sort(key=lambda r: (r.label.lower(), r.term.qname))
        out.append((c, rels))
    return out


# Named dip bands derived from a numeric dip. The thresholds are this
# project's convention; the band vocabulary itself is part of the schema.
def dip_band(degrees: Decimal) -> Term:
    if not Decimal("0") <= degrees <= Decimal("90"):
        raise ValueError("dip must be within [0, 90] degrees")
    if degrees >= 80:
        return geofault("Vertical")
    if degrees >= 45:
        return geofault("Steep")
    return geofault("LowAngle")


def load_builtin_schema() -> Schema:
    from .builtin import load_builtin_schema as _load

    return _load()
