#!/usr/bin/env python3
"""Materialization benchmark: one million asserted parthood-chain triples.

Builds disjoint part_of chains (default 500k chains of length 2, i.e. one
million edges), materializes them under a minimal parthood schema
(part_of/has_part, transitive, mutual inverses), and reports wall time and
peak RSS as JSON on stdout. Run in a fresh process so the RSS number means
something.
"""

from __future__ import annotations

import argparse
import json
import resource
import sys
import time

from geofault import Graph, compile_rules, materialize
from geofault.schema import ClassDef, RelationDef, Schema
from geofault.store import ASSERTED
from geofault.terms import Term, bfo, geofault


def bench_schema() -> Schema:
    entity = ClassDef(bfo("Entity"), None, "Entity")
    part_of = RelationDef(geofault("part_of"), bfo("Entity"), bfo("Entity"),
                          frozenset({"transitive"}), geofault("has_part"))
    has_part = RelationDef(geofault("has_part"), bfo("Entity"), bfo("Entity"),
                           frozenset({"transitive"}), geofault("part_of"))
    return Schema((entity,), (part_of, has_part), (), "bench")


def build_graph(schema: Schema, chains: int, length: int) -> Graph:
    g = Graph(schema)
    part_of = g.intern(geofault("part_of"))
    prov = g._encode_prov(ASSERTED)
    node = 0
    for _ in range(chains):
        first = g.intern(Term("geofault", f"n{node}"))
        prev = first
        for _ in range(length):
            node += 1
            cur = g.intern(Term("geofault", f"n{node}"))
            g._add_ids(prev, part_of, cur, prov)
            prev = cur
        node += 1
    return g


def main() -> int:
    parser = argparse.ArgumentParser()
    parser.add_argument("--chains", type=int, default=500_000)
    parser.add_argument("--length", type=int, default=2)
    parser.add_argument("--max-derived", type=int, default=20_000_000)
    args = parser.parse_args()

    schema = bench_schema()
    rules = compile_rules(schema)

    t0 = time.perf_counter()
    g = build_graph(schema, args.chains, args.length)
    build_seconds = time.perf_counter() - t0
    asserted = len(g)

    t1 = time.perf_counter()
    m = materialize(g, rules, max_derived=args.max_derived,
                    track_derivations=False)
    materialize_seconds = time.perf_counter() - t1

    peak_kb = resource.getrusage(resource.RUSAGE_SELF).ru_maxrss
    print(json.dumps({
        "asserted": asserted,
        "materialized": len(m),
        "build_seconds": round(build_seconds, 3),
        "materialize_seconds": round(materialize_seconds, 3),
        "peak_rss_mb": round(peak_kb / 1024, 1),
    }))
    return 0


if __name__ == "__main__":
    sys.exit(main())
