"""Acceptance suite: one test per criterion, one printed line each.

Run with `pytest tests/test_acceptance.py -s` to see the lines live.
"""

import json
import random
import subprocess
import sys
import time
from pathlib import Path

import pytest

from geofault import (
    Graph,
    Query,
    RDF_TYPE,
    TriplePattern,
    Var,
    check_consistency,
    compile_shapes,
    evaluate,
    explain_answer,
    geofault,
    graph_from_document,
    materialize,
    parse_turtle,
    serialize_document,
    validate,
)
from geofault.cli import run
from geofault.fixtures import fixtures_root, load_fixture
from oracles import brute_force_evaluate, graph_triples, naive_materialize

REPO = Path(__file__).resolve().parents[1]
FIXTURES = fixtures_root()


def check(name: str, ok: bool, detail: str = ""):
    line = f"[acceptance] {name}: {'PASS' if ok else 'FAIL'}"
    if detail and not ok:
        line += f" ({detail})"
    print(line)
    assert ok, f"{name} {detail}"


def test_cq1_reproduction(capsys):
    t0 = time.perf_counter()
    code = run(["query", str(FIXTURES / "usecase1.ttl"),
                str(FIXTURES / "queries" / "cq1.gfq")])
    elapsed = time.perf_counter() - t0
    out = capsys.readouterr().out
    with capsys.disabled():
        check("CQ1 exact binding FV7 under 1s",
              code == 0 and out == "FV7\n" and elapsed < 1.0,
              f"exit={code} out={out!r} t={elapsed:.2f}s")


def test_cq2_reproduction(usecase1_mat, schema, capsys):
    t0 = time.perf_counter()
    edges = set()
    for name in ("cq2a", "cq2b"):
        fx = load_fixture(name)
        for b in evaluate(usecase1_mat, fx.query):
            for e in explain_answer(usecase1_mat, fx.query, b).edges:
                edges.add(e.triple)
    elapsed = time.perf_counter() - t0
    want_east = (geofault("FV7"), geofault("east_of"), geofault("FV9"))
    want_west = (geofault("FV7"), geofault("west_of"), geofault("FV6"))
    with capsys.disabled():
        check("CQ2 explanation edges (FV7 east_of FV9) and (FV7 west_of FV6)",
              want_east in edges and want_west in edges and elapsed < 1.0)


def test_cq3_reproduction(usecase1_mat, capsys):
    fx = load_fixture("cq3")
    answers = [b["g"] for b in evaluate(usecase1_mat, fx.query)]
    with capsys.disabled():
        check("CQ3 binding StrikeSlipFaultGroup",
              answers == [geofault("StrikeSlipFaultGroup")], repr(answers))


def test_cq4_reproduction(usecase2_mat, capsys):
    fx = load_fixture("cq4")
    answers = {b["t"] for b in evaluate(usecase2_mat, fx.query)}
    with capsys.disabled():
        check("CQ4 structure types of the OFC volume include NormalFault",
              geofault("NormalFault") in answers)


def test_cq5_to_cq8_frozen_sets(usecase1_mat, usecase2_mat, capsys):
    graphs = {"usecase1": usecase1_mat, "usecase2": usecase2_mat}
    ok = True
    detail = ""
    for name in ("cq5", "cq6", "cq7", "cq8"):
        fx = load_fixture(name)
        answers = evaluate(graphs[fx.dataset], fx.query)
        got = sorted(
            [{v: b[v].qname for v in fx.query.projection} for b in answers],
            key=lambda r: sorted(r.items()),
        )
        if got != fx.expected_bindings:
            ok = False
            detail = f"{name}: {got} != {fx.expected_bindings}"
            break
    with capsys.disabled():
        check("CQ5-CQ8 match the oracle-frozen expectations", ok, detail)


def test_consistency_of_both_use_cases(usecase1_mat, usecase2_mat, schema, capsys):
    r1 = check_consistency(usecase1_mat, schema)
    r2 = check_consistency(usecase2_mat, schema)
    with capsys.disabled():
        check("both use-case graphs are consistent with zero clashes",
              r1.consistent and r2.consistent
              and not r1.clashes and not r2.clashes)


def test_negative_mutations(schema, rules, shapes, capsys):
    small = materialize(graph_from_document(
        load_fixture("usecase1_small_group"), schema), rules)
    report = validate(small, shapes)
    errors = [v for v in report.violations if v.constraint.severity == "error"]
    a_ok = (len(errors) == 1
            and errors[0].focus == geofault("StrikeSlipFaultGroup")
            and errors[0].constraint.min == 2 and errors[0].found == 1)

    extra = materialize(graph_from_document(
        load_fixture("usecase2_extra_separation"), schema), rules)
    cons = check_consistency(extra, schema)
    b_ok = (not cons.consistent
            and [c.kind for c in cons.clashes] == ["exact-cardinality-exceeded"]
            and cons.clashes[0].participants[0] == geofault("OFC_MaxSeparation"))

    disjoint = materialize(graph_from_document(
        load_fixture("usecase2_disjoint_typing"), schema), rules)
    cons2 = check_consistency(disjoint, schema)
    c_ok = (not cons2.consistent
            and any(c.kind == "disjointness"
                    and c.participants[0] == geofault("OFC_Surface")
                    for c in cons2.clashes))

    with capsys.disabled():
        check("mutation (a): one min-cardinality error on the shrunken group", a_ok)
        check("mutation (b): exact-cardinality clash on the third wall filler", b_ok)
        check("mutation (c): disjointness clash on FaultZone+FaultSurface typing", c_ok)


_CLASSES = ("FaultVolume", "FaultZone", "FaultCore", "FaultWall", "FaultSystem",
            "DextralStrikeSlipFault", "FaultBreccia", "FaultSurface", "MajorFault")
_RELATIONS = ("part_of", "has_part", "externally_connected_with", "constituted_by",
              "east_of", "older", "coeval", "quality_of", "role_of", "structure_of")


def _random_graph(schema, rng: random.Random, max_triples: int) -> Graph:
    classes = [geofault(n) for n in _CLASSES]
    relations = [geofault(n) for n in _RELATIONS]
    individuals = [geofault(f"i{k}") for k in range(rng.randint(3, 8))]
    g = Graph(schema)
    for _ in range(rng.randint(0, max_triples)):
        if rng.random() < 0.3:
            g.add(rng.choice(individuals), RDF_TYPE, rng.choice(classes))
        else:
            g.add(rng.choice(individuals), rng.choice(relations),
                  rng.choice(individuals))
    return g


def test_reasoner_oracle_equivalence_100(schema, rules, capsys):
    rng = random.Random(7541)
    t0 = time.perf_counter()
    ok = True
    for i in range(100):
        g = _random_graph(schema, rng, 200)
        fast = {a.triple for a in materialize(g, rules).assertions()}
        slow = naive_materialize(graph_triples(g), rules)
        if fast != slow:
            ok = False
            break
    elapsed = time.perf_counter() - t0
    with capsys.disabled():
        check("semi-naive materialization equals the naive fixpoint "
              "on 100 random graphs under 60s",
              ok and elapsed < 60.0, f"t={elapsed:.1f}s graph={i}")


def _random_query(rng: random.Random) -> Query:
    terms = [geofault(f"i{k}") for k in range(8)] + [
        geofault("FaultVolume"), geofault("FaultCore"), geofault("FaultWall")]
    relations = [geofault(n) for n in _RELATIONS]
    names = ["a", "b", "c", "d"]
    used = set()

    def part():
        if rng.random() < 0.55:
            name = rng.choice(names)
            used.add(name)
            return Var(name)
        return rng.choice(terms)

    patterns = []
    for _ in range(rng.randint(1, 8)):
        if rng.random() < 0.3:
            patterns.append(TriplePattern(part(), RDF_TYPE, part()))
        else:
            patterns.append(TriplePattern(part(), rng.choice(relations), part()))
    if not used:
        name = rng.choice(names)
        used.add(name)
        patterns[0] = TriplePattern(Var(name), patterns[0].predicate,
                                    patterns[0].object)
    projection = tuple(sorted(rng.sample(sorted(used), rng.randint(1, len(used)))))
    return Query(tuple(patterns), projection, rng.random() < 0.5)


def test_query_oracle_equivalence_100(schema, rules, capsys):
    rng = random.Random(90125)
    t0 = time.perf_counter()
    ok = True
    for i in range(100):
        g = _random_graph(schema, rng, 200)
        m = materialize(g, rules)
        q = _random_query(rng)
        if set(evaluate(m, q)) != brute_force_evaluate(graph_triples(m), q):
            ok = False
            break
    elapsed = time.perf_counter() - t0
    with capsys.disabled():
        check("conjunctive evaluation equals the brute-force enumerator "
              "on 100 random pairs under 60s",
              ok and elapsed < 60.0, f"t={elapsed:.1f}s pair={i}")


def test_roundtrip_and_serializer_determinism(capsys):
    corpus = sorted(FIXTURES.rglob("*.ttl"))
    ok = len(corpus) >= 6
    detail = ""
    for path in corpus:
        text = path.read_text(encoding="utf-8")
        doc = parse_turtle(text, path.name)
        once = serialize_document(doc)
        again = serialize_document(parse_turtle(once, path.name))
        reparsed = parse_turtle(once, path.name)
        if set(reparsed.triples) != set(doc.triples) or once != again:
            ok = False
            detail = path.name
            break
    with capsys.disabled():
        check("parse-serialize-parse is triple-identical and byte-deterministic "
              f"across the {len(corpus)}-file corpus", ok, detail)


def test_performance_floor(capsys):
    proc = subprocess.run(
        [sys.executable, str(REPO / "scripts" / "bench_materialize.py")],
        capture_output=True, text=True, timeout=240,
    )
    ok = proc.returncode == 0
    detail = proc.stderr.strip()[:200]
    stats = {}
    if ok:
        stats = json.loads(proc.stdout)
        ok = (stats["asserted"] == 1_000_000
              and stats["materialize_seconds"] < 30.0
              and stats["peak_rss_mb"] < 2048.0)
        detail = json.dumps(stats)
    with capsys.disabled():
        check("1M-triple parthood chain materializes under 30s in under 2GB",
              ok, detail)
        if stats:
            print(f"[acceptance]   ... {stats['materialize_seconds']}s, "
                  f"{stats['peak_rss_mb']}MB, {stats['materialized']} triples")
