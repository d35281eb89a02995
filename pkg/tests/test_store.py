"""Graph store: idempotence, retraction, snapshots, index agreement."""

import pytest
from hypothesis import given, settings, strategies as st

from geofault import (
    ASSERTED,
    CannotRetractInferred,
    Graph,
    Literal,
    RDF_TYPE,
    TriplePattern,
    TypeMismatch,
    UnknownPredicate,
    Var,
    decimal_literal,
    geofault,
    inferred,
)

FV7 = geofault("FV7")
CORE = geofault("FaultCore7")
PART_OF = geofault("part_of")
HAS_PART = geofault("has_part")


def test_assert_idempotent(schema):
    g = Graph(schema)
    assert g.add(FV7, HAS_PART, CORE) is True
    assert len(g) == 1
    assert g.add(FV7, HAS_PART, CORE) is False
    assert len(g) == 1


def test_first_writer_provenance_sticks(schema):
    g = Graph(schema)
    g.add(FV7, HAS_PART, CORE, inferred("some-rule"))
    g.add(FV7, HAS_PART, CORE, ASSERTED)
    assert g.provenance_of(FV7, HAS_PART, CORE).kind == "inferred"


def test_constitution_edge_accepted(schema):
    g = Graph(schema)
    assert g.add(CORE, geofault("constituted_by"), geofault("FaultBreccia7_instance"))


def test_literal_object_on_object_relation_rejected(schema):
    g = Graph(schema)
    with pytest.raises(TypeMismatch):
        g.add(FV7, PART_OF, Literal("string", "x"))


def test_term_object_on_literal_relation_rejected(schema):
    g = Graph(schema)
    with pytest.raises(TypeMismatch):
        g.add(geofault("Dip1"), geofault("has_magnitude"), FV7)
    assert g.add(geofault("Dip1"), geofault("has_magnitude"),
                 decimal_literal("63.5", "degree"))


def test_unknown_predicate(schema):
    g = Graph(schema)
    with pytest.raises(UnknownPredicate):
        g.add(FV7, geofault("no_such_relation"), CORE)


def test_retract_asserted_then_match_empty(schema):
    g = Graph(schema)
    g.add(FV7, HAS_PART, CORE)
    assert g.retract(FV7, HAS_PART, CORE) is True
    assert g.match(TriplePattern(FV7, HAS_PART, CORE)) == []
    assert len(g) == 0


def test_retract_inferred_refused(schema):
    g = Graph(schema)
    g.add(FV7, HAS_PART, CORE, inferred("inverse:geofault:part_of"))
    with pytest.raises(CannotRetractInferred):
        g.retract(FV7, HAS_PART, CORE)


def test_retract_absent_is_noop(schema):
    g = Graph(schema)
    g.add(FV7, HAS_PART, CORE)
    assert g.retract(CORE, HAS_PART, FV7) is False
    assert len(g) == 1


def test_snapshot_isolated(schema):
    g = Graph(schema)
    g.add(FV7, HAS_PART, CORE)
    snap = g.snapshot()
    g.add(CORE, PART_OF, FV7)
    assert len(snap) == 1
    assert len(g) == 2
    assert not snap.contains(CORE, PART_OF, FV7)


def test_snapshot_of_empty(schema):
    g = Graph(schema)
    assert len(g.snapshot()) == 0


def test_snapshot_match_equals_original(schema):
    g = Graph(schema)
    g.add(FV7, HAS_PART, CORE)
    g.add(FV7, RDF_TYPE, geofault("FaultVolume"))
    snap = g.snapshot()
    everything = TriplePattern(Var("s"), Var("p"), Var("o"))
    assert g.match(everything) == snap.match(everything)


def test_fully_bound_match(schema):
    g = Graph(schema)
    g.add(FV7, HAS_PART, CORE)
    assert len(g.match(TriplePattern(FV7, HAS_PART, CORE))) == 1


def test_full_scan_counts_everything(schema):
    g = Graph(schema)
    g.add(FV7, HAS_PART, CORE)
    g.add(FV7, RDF_TYPE, geofault("FaultVolume"))
    g.add(CORE, RDF_TYPE, geofault("FaultCore"))
    assert len(g.match(TriplePattern(Var("s"), Var("p"), Var("o")))) == len(g)


def test_repeated_variable_must_agree(schema):
    g = Graph(schema)
    g.add(FV7, geofault("coeval"), FV7)
    g.add(FV7, geofault("coeval"), CORE)
    hits = g.match(TriplePattern(Var("x"), geofault("coeval"), Var("x")))
    assert [a.subject for a in hits] == [FV7]


_SUBJECTS = [geofault(n) for n in ("A", "B", "C", "D")]
_PREDICATES = [PART_OF, HAS_PART, geofault("coeval"), RDF_TYPE]
_OBJECTS = _SUBJECTS + [geofault("FaultVolume")]

_triples = st.tuples(
    st.sampled_from(_SUBJECTS),
    st.sampled_from(_PREDICATES),
    st.sampled_from(_OBJECTS),
)


@given(st.lists(_triples, max_size=40))
@settings(max_examples=60, deadline=None)
def test_match_order_independent_of_insertion(triples):
    schema = __import__("geofault").load_builtin_schema()
    g1, g2 = Graph(schema), Graph(schema)
    for s, p, o in triples:
        g1.add(s, p, o)
    for s, p, o in reversed(triples):
        g2.add(s, p, o)
    everything = TriplePattern(Var("s"), Var("p"), Var("o"))
    assert [a.triple for a in g1.match(everything)] == \
        [a.triple for a in g2.match(everything)]


@given(st.lists(st.tuples(st.booleans(), _triples), max_size=60))
@settings(max_examples=60, deadline=None)
def test_index_audit_after_random_ops(ops):
    schema = __import__("geofault").load_builtin_schema()
    g = Graph(schema)
    for is_add, (s, p, o) in ops:
        if is_add:
            g.add(s, p, o)
        else:
            g.retract(s, p, o)
        assert g.audit_indexes()
