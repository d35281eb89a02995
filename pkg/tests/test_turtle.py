"""Turtle subset parsing, deterministic serialization, structured export."""

import json
import random

import pytest
from hypothesis import given, settings, strategies as st

from geofault import (
    Literal,
    ParseError,
    RDF_TYPE,
    compile_rules,
    export_structured,
    geofault,
    graph_from_document,
    materialize,
    parse_turtle,
    serialize_document,
    serialize_turtle,
)
from geofault.fixtures import fixtures_root, load_fixture


def test_single_typing_triple():
    doc = parse_turtle("@prefix geofault: <https://w3id.org/geofault#> .\n"
                       "geofault:FV7 a geofault:FaultVolume .")
    assert doc.triples == [(geofault("FV7"), RDF_TYPE, geofault("FaultVolume"))]


def test_empty_input():
    assert parse_turtle("").triples == []


def test_missing_object_position():
    text = "geofault:x geofault:part_of ."
    with pytest.raises(ParseError) as err:
        parse_turtle(text)
    assert err.value.line == 1
    assert err.value.column == text.index(".") + 1


def test_predicate_and_object_lists():
    doc = parse_turtle(
        "geofault:FaultCore1 a geofault:FaultCore ;\n"
        "    geofault:constituted_by geofault:FaultBreccia1, geofault:FaultGouge1 ."
    )
    assert len(doc.triples) == 3


def test_full_iri_maps_to_known_prefix():
    doc = parse_turtle("<https://w3id.org/geofault#FV7> a "
                       "<https://w3id.org/geofault#FaultVolume> .")
    assert doc.triples[0][0] == geofault("FV7")


def test_conflicting_prefix_redeclaration_rejected():
    with pytest.raises(ParseError):
        parse_turtle("@prefix geofault: <https://example.org/other#> .")


def test_typed_literals_with_units():
    doc = parse_turtle('geofault:d geofault:has_magnitude "63.5"^^unit:degree .')
    lit = doc.triples[0][2]
    assert lit == Literal("decimal", "63.5", "degree")


def test_decimal_trailing_zeros_trimmed():
    doc = parse_turtle("geofault:d geofault:has_magnitude 12.500000 .")
    assert doc.triples[0][2].lexical == "12.5"


def test_booleans_and_strings():
    doc = parse_turtle('geofault-meta:x geofault-meta:userFacing true .\n'
                       'geofault-meta:x geofault-meta:note "a \\"quoted\\" word" .')
    assert doc.triples[0][2] == Literal("boolean", True)
    assert doc.triples[1][2].value == 'a "quoted" word'


def test_comments_ignored():
    doc = parse_turtle("# comment line\n"
                       "geofault:FV7 a geofault:FaultVolume .   # trailing\n")
    assert len(doc.triples) == 1


def test_canonical_fixture_byte_identity(schema):
    root = fixtures_root()
    canonical = (root / "canonical" / "roundtrip.ttl").read_text(encoding="utf-8")
    doc = parse_turtle(canonical, "roundtrip.ttl")
    g = graph_from_document(doc, schema)
    assert serialize_turtle(g) == canonical


def test_empty_graph_serializes_to_prefix_block_only(schema):
    from geofault import Graph

    out = serialize_turtle(Graph(schema))
    lines = [line for line in out.strip().split("\n") if line]
    assert all(line.startswith("@prefix") for line in lines)


def test_serializer_set_determinism(schema):
    text = (fixtures_root() / "usecase1.ttl").read_text(encoding="utf-8")
    doc = parse_turtle(text, "usecase1.ttl")
    triples = list(doc.triples)
    rng = random.Random(7)
    for _ in range(3):
        rng.shuffle(triples)
        shuffled = type(doc)(prefixes=dict(doc.prefixes), triples=triples,
                             source_name="shuffled")
        assert serialize_document(shuffled) == serialize_document(doc)


@pytest.mark.parametrize("name", ["usecase1", "usecase2", "schema", "canonical"])
def test_roundtrip_fixture_corpus(name):
    doc = load_fixture(name)
    once = serialize_document(doc)
    doc2 = parse_turtle(once, name)
    assert set(doc2.triples) == set(doc.triples)
    assert serialize_document(doc2) == once


@given(st.text(max_size=200))
@settings(max_examples=200, deadline=None)
def test_parse_error_positions_inside_input(text):
    try:
        parse_turtle(text)
    except ParseError as err:
        lines = text.split("\n")
        assert 1 <= err.line <= len(lines)
        assert err.column >= 1
        # column may point one past the end of a line (end-of-input errors)
        assert err.column <= len(lines[err.line - 1]) + 2


def test_export_structured_content(usecase1_mat):
    doc = export_structured(usecase1_mat)
    nodes = {n["id"]: n for n in doc["nodes"]}
    assert "geofault:FV7" in nodes
    assert "geofault:FaultVolume" in nodes["geofault:FV7"]["types"]
    subjects_and_objects = {n["id"] for n in doc["nodes"]}
    assert all(e["from"] in subjects_and_objects for e in doc["edges"])


def test_export_structured_key_order(usecase1_mat):
    text = json.dumps(export_structured(usecase1_mat))
    assert text.index('"nodes"') < text.index('"edges"') < text.index('"prefixes"')
    first_node = text.index('"id"')
    assert first_node < text.index('"label"') < text.index('"types"')


def test_export_structured_inferred_edge_carries_rule(usecase1, rules, schema):
    m = materialize(usecase1, rules)
    doc = export_structured(m)
    inverse_edges = [
        e for e in doc["edges"]
        if e["from"] == "geofault:FV7" and e["rel"] == "geofault:has_part"
        and e["to"] == "geofault:FaultZone7"
    ]
    assert inverse_edges and inverse_edges[0]["provenance"] == "inferred"
    assert inverse_edges[0]["rule"] == "inverse:geofault:part_of"


def test_node_count_equals_term_subjects_and_objects(usecase1):
    doc = export_structured(usecase1)
    from geofault import Term

    expected = set()
    for a in usecase1.assertions():
        expected.add(a.subject.qname)
        if isinstance(a.object, Term):
            expected.add(a.object.qname)
    assert {n["id"] for n in doc["nodes"]} == expected
