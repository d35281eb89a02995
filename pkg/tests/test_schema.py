"""Bundled schema: taxonomy, relation profiles, vocabulary, invariants."""

import pytest

from geofault import (
    UnknownTerm,
    annotation_vocabulary,
    bfo,
    dip_band,
    geocore,
    geofault,
    load_builtin_schema,
    parse_turtle,
    relation_profile,
    serialize_document,
    subclass_closure,
)
from geofault.builtin import _build
from geofault.schema_io import schema_from_document, schema_to_document


def test_load_is_deterministic():
    assert _build() == _build()
    assert load_builtin_schema() == _build()


def test_fault_core_parent(schema):
    assert schema.class_def(geofault("FaultCore")).parent == geocore("GeologicalObject")


def test_part_of_profile(schema):
    rel = relation_profile(schema, geofault("part_of"))
    assert rel.inverse == geofault("has_part")
    assert "transitive" in rel.characteristics


def test_age_relation_profiles(schema):
    older = relation_profile(schema, geofault("older"))
    assert older.inverse == geofault("younger")
    assert older.characteristics == frozenset({"transitive", "irreflexive"})
    coeval = relation_profile(schema, geofault("coeval"))
    assert coeval.characteristics == frozenset({"symmetric", "transitive"})


def test_externally_connected_is_symmetric(schema):
    rel = relation_profile(schema, geofault("externally_connected_with"))
    assert rel.characteristics == frozenset({"symmetric"})


def test_unknown_relation(schema):
    with pytest.raises(UnknownTerm):
        relation_profile(schema, geofault("part_of_maybe"))


def test_closure_fault_breccia(schema):
    chain = subclass_closure(schema, geofault("FaultBreccia"))
    assert chain[0] == geofault("FaultBreccia")
    assert chain[1] == geofault("BrittleFaultRock")
    assert geocore("Rock") in chain
    assert geocore("EarthMaterial") in chain
    assert chain[-1] == bfo("Entity")
    assert len(chain) == len(set(chain))


def test_closure_root_is_singleton(schema):
    assert subclass_closure(schema, bfo("Entity")) == [bfo("Entity")]


def test_closure_slickenside(schema):
    chain = subclass_closure(schema, geofault("Slickenside"))
    assert chain[:3] == [geofault("Slickenside"), geofault("SlipSurfaceStructure"),
                         geocore("GeologicalStructure")]


def test_closure_unknown_term(schema):
    with pytest.raises(UnknownTerm):
        subclass_closure(schema, geofault("NotAClass"))


def test_closure_bounded_by_class_count(schema):
    for c in schema.classes:
        chain = subclass_closure(schema, c.term)
        assert len(chain) <= len(schema.classes)
        assert chain[-1] == bfo("Entity")


def test_inverse_involution(schema):
    for r in schema.relations:
        if r.inverse is not None:
            assert schema.relation_def(r.inverse).inverse == r.term


def test_super_relation_of_structure_of(schema):
    rel = relation_profile(schema, geofault("structure_of"))
    assert rel.super_relation == bfo("generically_depends_on")


def test_domain_class_count(schema):
    domain = [c for c in schema.classes if c.term.ns == "geofault"]
    assert len(domain) >= 70


ENUMERATIONS = {
    "FaultArrayStructure": ["Parallel", "Anastomosing", "EnEchelon", "Relay",
                            "Conjugate", "Flower", "Random"],
    "FaultSystemStructure": ["HorstAndGraben", "Duplex", "PositiveFlower",
                             "NegativeFlower"],
    "SlipSurfaceStructure": ["Slickenside", "Slickenline", "ChatterMark"],
    "MinorFault": ["SyntheticFault", "AntitheticFault"],
    "StrikeSlipFault": ["DextralStrikeSlipFault", "SinistralStrikeSlipFault"],
}


@pytest.mark.parametrize("parent,children", ENUMERATIONS.items())
def test_enumerated_subclasses(schema, parent, children):
    for child in children:
        assert schema.class_def(geofault(child)).parent == geofault(parent)


def test_catalog_completeness(schema):
    required = [
        "RockVolume", "FaultVolume", "FaultZone", "FaultCore", "DamageZone",
        "FaultWall", "FaultCoreMembrane", "FaultCoreLens", "BrittleFaultRock",
        "FaultBreccia", "FaultGouge", "Cataclasite", "BrittleShearDeformation",
        "FaultSurface", "FaultSurfaceLocation", "FaultOrientation", "FaultTipLine",
        "FaultSurfaceShape", "FaultSystem", "FaultStructure", "FaultArrayStructure",
        "FaultSystemStructure", "PhysicalSlipSurface", "SlipSurfaceStructure",
        "Smeared", "Continuity", "Cohesion", "LargeClastProportion",
        "Permeability", "Barrier", "Conduit", "FaultMaximumSeparation",
        "Protolith", "Graben", "Horst", "HangingWall", "FootWall",
        "MajorFault", "MinorFault", "SyntheticFault", "AntitheticFault",
        "NormalFault", "ReverseFault",
    ]
    for name in required:
        assert schema.is_class(geofault(name)), name


def test_disjointness_axioms_present(schema):
    pairs = {
        tuple(sorted(t.qname for t in a.operands))
        for a in schema.axioms if a.kind == "DisjointClasses"
    }
    assert ("bfo:ImmaterialEntity", "bfo:MaterialEntity") in pairs
    assert ("bfo:Continuant", "bfo:Occurrent") in pairs


def test_user_facing_partition(schema):
    for c in schema.classes:
        assert c.user_facing == (c.term.ns == "geofault")


def test_vocabulary_excludes_upper_levels(schema):
    vocab = annotation_vocabulary(schema)
    terms = [c.term for c, _ in vocab]
    assert bfo("Continuant") not in terms
    assert all(t.ns == "geofault" for t in terms)
    assert all(schema.is_class(t) for t in terms)


def test_vocabulary_alphabetical_and_stable(schema):
    vocab = annotation_vocabulary(schema)
    labels = [c.label.lower() for c, _ in vocab]
    assert labels == sorted(labels)
    assert vocab == annotation_vocabulary(schema)


def test_membrane_vocabulary_pairs_include_quality_of(schema):
    vocab = dict((c.term, rels) for c, rels in annotation_vocabulary(schema))
    membrane_rels = {r.term for r in vocab[geofault("FaultCoreMembrane")]}
    assert geofault("quality_of") in membrane_rels
    assert geofault("part_of") in membrane_rels
    smeared_rels = {r.term for r in vocab[geofault("Smeared")]}
    assert geofault("quality_of") in smeared_rels
    continuity_rels = {r.term for r in vocab[geofault("Continuity")]}
    assert geofault("quality_of") in continuity_rels


def test_dip_bands():
    from decimal import Decimal

    assert dip_band(Decimal("85")) == geofault("Vertical")
    assert dip_band(Decimal("80")) == geofault("Vertical")
    assert dip_band(Decimal("63.5")) == geofault("Steep")
    assert dip_band(Decimal("45")) == geofault("Steep")
    assert dip_band(Decimal("10")) == geofault("LowAngle")
    with pytest.raises(ValueError):
        dip_band(Decimal("95"))


def test_schema_turtle_roundtrip(schema):
    text = serialize_document(schema_to_document(schema))
    back = schema_from_document(parse_turtle(text, "geofault.ttl"))
    assert back == schema


def test_bundled_schema_file_matches(schema):
    from geofault.fixtures import fixtures_root

    text = (fixtures_root() / "geofault.ttl").read_text(encoding="utf-8")
    assert schema_from_document(parse_turtle(text, "geofault.ttl")) == schema
