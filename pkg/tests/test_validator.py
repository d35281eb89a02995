"""Closed-world shape validation."""

import json

from geofault import (
    Graph,
    RDF_TYPE,
    Schema,
    compile_shapes,
    geofault,
    materialize,
    validate,
)


def shape_for(shapes, local):
    for s in shapes:
        if s.target_class == geofault(local):
            return s
    raise AssertionError(f"no shape for {local}")


def test_fault_system_needs_two_volumes(shapes):
    shape = shape_for(shapes, "FaultSystem")
    [c] = shape.constraints
    assert (c.relation, c.filler, c.min, c.max) == (
        geofault("has_part"), geofault("FaultVolume"), 2, None)


def test_separation_exactly_two_walls(shapes):
    shape = shape_for(shapes, "FaultMaximumSeparation")
    [c] = shape.constraints
    assert (c.relation, c.filler, c.min, c.max) == (
        geofault("quality_of"), geofault("FaultWall"), 2, 2)


def test_empty_schema_yields_no_shapes():
    assert compile_shapes(Schema((), (), ())) == []


def test_every_constraint_traces_to_a_schema_axiom(schema, shapes):
    axiom_ids = {a.id for a in schema.axioms}
    for shape in shapes:
        for c in shape.constraints:
            assert c.source_axiom in axiom_ids


def test_usecase1_conforms(usecase1_mat, shapes):
    report = validate(usecase1_mat, shapes)
    assert report.conforms
    assert report.violations == ()


def test_usecase1_conformance_by_independent_recount(usecase1_mat):
    """Hand-rolled recount of the bundled fixture against the definitional
    requirements, not using the validator."""
    from geofault import TriplePattern, Var

    g = usecase1_mat

    def instances(local):
        return [a.subject for a in
                g.match(TriplePattern(Var("x"), RDF_TYPE, geofault(local)))]

    def count(subject, rel, filler_local):
        hits = 0
        for a in g.match(TriplePattern(subject, geofault(rel), Var("y"))):
            if g.contains(a.object, RDF_TYPE, geofault(filler_local)):
                hits += 1
        return hits

    for volume in instances("FaultVolume"):
        assert count(volume, "has_part", "FaultWall") >= 1
        assert count(volume, "has_part", "FaultZone") >= 1
    for zone in instances("FaultZone"):
        assert count(zone, "part_of", "FaultVolume") >= 1
        assert count(zone, "participates_in", "BrittleShearDeformation") >= 1
    for core in instances("FaultCore"):
        assert count(core, "part_of", "FaultZone") >= 1
        assert count(core, "generated_by", "BrittleShearDeformation") >= 1
        assert count(core, "constituted_by", "BrittleFaultRock") >= 1
    for wall in instances("FaultWall"):
        assert count(wall, "part_of", "FaultVolume") >= 1
        assert count(wall, "externally_connected_with", "FaultCore") >= 1
    for system in instances("FaultSystem"):
        assert count(system, "has_part", "FaultVolume") >= 2
    for surf in instances("PhysicalSlipSurface"):
        assert count(surf, "part_of", "FaultWall") >= 1
        assert count(surf, "externally_connected_with", "FaultCore") >= 1


def test_usecase2_conforms(usecase2_mat, shapes):
    assert validate(usecase2_mat, shapes).conforms


def test_group_of_two_conforms_group_of_one_does_not(usecase1, rules, shapes):
    g = usecase1.snapshot()
    g.retract(geofault("FV7"), geofault("part_of"), geofault("StrikeSlipFaultGroup"))
    report = validate(materialize(g, rules), shapes)
    assert report.conforms  # FV6 and FV9 remain

    g.retract(geofault("FV6"), geofault("part_of"), geofault("StrikeSlipFaultGroup"))
    report = validate(materialize(g, rules), shapes)
    assert not report.conforms
    errors = [v for v in report.violations if v.constraint.severity == "error"]
    assert len(errors) == 1
    assert errors[0].focus == geofault("StrikeSlipFaultGroup")
    assert errors[0].found == 1
    assert errors[0].constraint.min == 2


def test_membrane_without_continuity_violates(schema, rules, shapes):
    g = Graph(schema)
    g.add(geofault("M1"), RDF_TYPE, geofault("FaultCoreMembrane"))
    g.add(geofault("C1"), RDF_TYPE, geofault("FaultCore"))
    g.add(geofault("M1"), geofault("part_of"), geofault("C1"))
    g.add(geofault("S1"), RDF_TYPE, geofault("IsSmeared"))
    g.add(geofault("M1"), geofault("has_quality"), geofault("S1"))
    report = validate(materialize(g, rules), shapes)
    membrane_violations = [
        v for v in report.violations
        if v.focus == geofault("M1") and v.constraint.filler == geofault("Continuity")
    ]
    assert len(membrane_violations) == 1
    assert "Continuity" in membrane_violations[0].message


def test_inferred_filler_types_count(schema, rules, shapes):
    # the core's filler is asserted as FaultBreccia only; it counts as
    # BrittleFaultRock because validation runs on the materialized graph
    g = Graph(schema)
    g.add(geofault("C1"), RDF_TYPE, geofault("FaultCore"))
    g.add(geofault("Z1"), RDF_TYPE, geofault("FaultZone"))
    g.add(geofault("V1"), RDF_TYPE, geofault("FaultVolume"))
    g.add(geofault("W1"), RDF_TYPE, geofault("FaultWall"))
    g.add(geofault("B1"), RDF_TYPE, geofault("FaultBreccia"))
    g.add(geofault("P1"), RDF_TYPE, geofault("BrittleShearDeformation"))
    g.add(geofault("C1"), geofault("part_of"), geofault("Z1"))
    g.add(geofault("Z1"), geofault("part_of"), geofault("V1"))
    g.add(geofault("W1"), geofault("part_of"), geofault("V1"))
    g.add(geofault("W1"), geofault("externally_connected_with"), geofault("C1"))
    g.add(geofault("C1"), geofault("generated_by"), geofault("P1"))
    g.add(geofault("B1"), geofault("generated_by"), geofault("P1"))
    g.add(geofault("C1"), geofault("constituted_by"), geofault("B1"))
    g.add(geofault("Z1"), geofault("participates_in"), geofault("P1"))
    report = validate(materialize(g, rules), shapes)
    assert report.conforms, [v.message for v in report.violations]


def test_deletion_monotonicity(usecase1, rules, shapes):
    """Removing a counted filler edge never turns a violation into
    conformance."""
    base = validate(materialize(usecase1, rules), shapes)
    assert base.conforms
    g = usecase1.snapshot()
    g.retract(geofault("FV7"), geofault("part_of"), geofault("StrikeSlipFaultGroup"))
    g.retract(geofault("FV6"), geofault("part_of"), geofault("StrikeSlipFaultGroup"))
    broken = validate(materialize(g, rules), shapes)
    assert not broken.conforms
    g.retract(geofault("FV9"), geofault("part_of"), geofault("StrikeSlipFaultGroup"))
    worse = validate(materialize(g, rules), shapes)
    assert not worse.conforms
    assert len(worse.violations) >= len(broken.violations)


def test_empty_graph_conforms_vacuously(schema, rules, shapes):
    report = validate(materialize(Graph(schema), rules), shapes)
    assert report.conforms
    assert report.violations == ()


def test_report_json_key_order(usecase1, rules, shapes):
    g = usecase1.snapshot()
    g.retract(geofault("FV7"), geofault("part_of"), geofault("StrikeSlipFaultGroup"))
    g.retract(geofault("FV6"), geofault("part_of"), geofault("StrikeSlipFaultGroup"))
    report = validate(materialize(g, rules), shapes)
    text = report.to_json()
    data = json.loads(text)
    assert list(data.keys()) == ["conforms", "violations"]
    assert list(data["violations"][0].keys()) == [
        "focus", "shape", "constraint", "found", "min", "max", "severity", "message"]


def test_violation_ordering_deterministic(schema, rules, shapes):
    g = Graph(schema)
    for name in ("B", "A"):
        g.add(geofault(name), RDF_TYPE, geofault("FaultCoreMembrane"))
    report = validate(materialize(g, rules), shapes)
    focuses = [v.focus.qname for v in report.violations]
    assert focuses == sorted(focuses)
