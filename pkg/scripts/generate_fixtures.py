#!/usr/bin/env python3
"""Regenerate the frozen fixture bundle under fixtures/.

The instance graphs are written as commented Turtle so every edge that is
a scene-completion choice (rather than a documented observation) carries a
"reconstructed" marker. Expected query results for the answer files are
computed with the brute-force oracle from tests/oracles.py, never with the
engine's own evaluator.

Run from the repository root:  python scripts/generate_fixtures.py
"""

from __future__ import annotations

import hashlib
import json
import sys
from pathlib import Path

REPO = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(REPO / "tests"))

from oracles import brute_force_evaluate, naive_materialize  # noqa: E402

from geofault import (  # noqa: E402
    compile_rules,
    graph_from_document,
    load_builtin_schema,
    parse_query,
    parse_turtle,
    serialize_document,
    serialize_turtle,
)
from geofault.schema_io import schema_to_document  # noqa: E402

FIXTURES = REPO / "fixtures"

PREFIX_BLOCK = """\
@prefix geofault: <https://w3id.org/geofault#> .
@prefix geocore: <https://w3id.org/geocore#> .
@prefix unit: <https://w3id.org/geofault/unit#> .
"""


def fault_block(tag: str, volume: str, structure: str, rocks: list[str],
                process: str, walls: list[str] | None = None) -> list[str]:
    """Turtle lines for one fault: volume, zone, wall(s), core, rocks."""
    zone = f"{tag}Zone" if tag[0] == "F" and tag[1:].isdigit() else f"{tag}"
    walls = walls or [f"FaultWall{tag[1:]}" if tag[1:].isdigit() else f"{tag}_Wall"]
    lines = []
    return lines


def _block(names: dict, process: str, structure_class: str,
           rock_specs: list[tuple[str, str, bool]]) -> list[str]:
    """Lines for one fault's anatomy.

    names: volume, zone, walls (list), core, structure
    rock_specs: (instance, class, observed) for the core constitution.
    """
    v, z, c, s = names["volume"], names["zone"], names["core"], names["structure"]
    lines = [f"geofault:{v} a geofault:FaultVolume ."]
    lines.append(
        f"geofault:{z} a geofault:FaultZone ;\n"
        f"    geofault:part_of geofault:{v} ;\n"
        f"    geofault:participates_in geofault:{process} .   # reconstructed"
    )
    for w in names["walls"]:
        lines.append(
            f"geofault:{w} a geofault:FaultWall ;   # reconstructed\n"
            f"    geofault:part_of geofault:{v} ;\n"
            f"    geofault:externally_connected_with geofault:{c} ."
        )
    made_of = ", ".join(f"geofault:{r}" for r, _, _ in rock_specs)
    lines.append(
        f"geofault:{c} a geofault:FaultCore ;   # reconstructed\n"
        f"    geofault:part_of geofault:{z} ;\n"
        f"    geofault:generated_by geofault:{process} ;\n"
        f"    geofault:constituted_by {made_of} ."
    )
    for rock, cls, observed in rock_specs:
        marker = "" if observed else "   # reconstructed"
        lines.append(
            f"geofault:{rock} a geofault:{cls} ;{marker}\n"
            f"    geofault:generated_by geofault:{process} ."
        )
    lines.append(
        f"geofault:{s} a geofault:{structure_class} ;\n"
        f"    geofault:structure_of geofault:{v} ."
    )
    return lines


def build_usecase1() -> str:
    process = "Faulting1"
    out = [
        "# Use case 1: Maiella Mountain outcrop (interpreted photograph).",
        "# Nine faults: a group of normal faults (F1-F5, F8) dipping east and a",
        "# group of dextral strike-slip faults (F6, F7, F9). Fault breccia, fault",
        "# gouge and a physical slip surface are documented on F1; fault breccia",
        "# on F7. Lines marked 'reconstructed' complete each fault's anatomy per",
        "# the class definitions and are not documented observations.",
        "",
        PREFIX_BLOCK,
        f"geofault:{process} a geofault:BrittleShearDeformation .   # reconstructed",
        "",
    ]
    normal = [1, 2, 3, 4, 5, 8]
    for i in range(1, 10):
        structure_class = "NormalFault" if i in normal else "DextralStrikeSlipFault"
        if i == 1:
            rocks = [("FaultBreccia1", "FaultBreccia", True),
                     ("FaultGouge1", "FaultGouge", True)]
        elif i == 7:
            rocks = [("FaultBreccia7", "FaultBreccia", True)]
        else:
            rocks = [(f"FaultRock{i}", "BrittleFaultRock", False)]
        names = {
            "volume": f"FV{i}",
            "zone": f"FaultZone{i}",
            "walls": [f"FaultWall{i}"],
            "core": f"FaultCore{i}",
            "structure": f"FaultStructure{i}",
        }
        out.append(f"# fault F{i}")
        out.extend(_block(names, process, structure_class, rocks))
        out.append("")

    out.extend([
        "# slip surface documented on F1's wall",
        "geofault:SlipSurface1 a geofault:PhysicalSlipSurface ;",
        "    geofault:part_of geofault:FaultWall1 ;",
        "    geofault:externally_connected_with geofault:FaultCore1 .",
        "",
        "# damage zone interpreted alongside F1's core   # reconstructed",
        "geofault:DamageZone1 a geofault:DamageZone ;",
        "    geofault:part_of geofault:FaultZone1, geofault:FaultWall1 ;",
        "    geofault:externally_connected_with geofault:FaultCore1 .",
        "",
        "# fault system groups and memberships",
        "geofault:NormalFaultGroup a geofault:FaultSystem .",
        "geofault:StrikeSlipFaultGroup a geofault:FaultSystem .",
    ])
    for i in normal:
        out.append(f"geofault:FV{i} geofault:part_of geofault:NormalFaultGroup .")
    for i in (6, 7, 9):
        out.append(f"geofault:FV{i} geofault:part_of geofault:StrikeSlipFaultGroup .")
    out.extend([
        "",
        "# the normal faults form a parallel array   # reconstructed",
        "geofault:NormalArray1 a geofault:Parallel ;",
        "    geofault:structure_of geofault:NormalFaultGroup .",
        "",
        "# relative positions in the outcrop",
        "geofault:FV7 geofault:east_of geofault:FV9 .",
        "geofault:FV7 geofault:west_of geofault:FV6 .",
        "geofault:FV9 geofault:west_of geofault:FV6 .",
        "",
    ])
    return "\n".join(out)


def build_usecase2() -> str:
    process = "HordaFaulting"
    out = [
        "# Use case 2: northern Horda Platform seismic cross-section NNST 84-05.",
        "# Three first-order fault zones, west to east: Tusse (TFZ), Vette (VFZ)",
        "# and Oygarden Fault Complex (OFC), each in a major-fault role, plus two",
        "# second-order systems: Triassic-Cretaceous (TK) and Eocene-Miocene (EM).",
        "# The TK-older-than-EM ordering follows the geological timescale and the",
        "# OFC age/coeval edges are dataset construction, as are all lines marked",
        "# 'reconstructed'.",
        "",
        PREFIX_BLOCK,
        f"geofault:{process} a geofault:BrittleShearDeformation .   # reconstructed",
        "",
    ]
    majors = [("TFZ", ["TFZ_Wall"]), ("VFZ", ["VFZ_Wall"]),
              ("OFC", ["OFC_HangingWall", "OFC_FootWall"])]
    for tag, walls in majors:
        names = {
            "volume": f"{tag}_Volume",
            "zone": tag,
            "walls": walls,
            "core": f"{tag}_Core",
            "structure": f"{tag}_Structure",
        }
        rocks = [(f"{tag}_FaultRock", "BrittleFaultRock", False)]
        out.append(f"# major fault {tag}")
        out.extend(_block(names, process, "NormalFault", rocks))
        out.append(
            f"geofault:{tag}_MajorRole a geofault:MajorFault ;\n"
            f"    geofault:role_of geofault:{tag} ."
        )
        out.append("")

    out.extend([
        "# wall roles and the block the OFC hanging wall belongs to",
        "geofault:OFC_HangingWallRole a geofault:HangingWall ;",
        "    geofault:role_of geofault:OFC_HangingWall .",
        "geofault:OFC_FootWallRole a geofault:FootWall ;",
        "    geofault:role_of geofault:OFC_FootWall .",
        "geofault:SmeaheiaBlock a geocore:GeologicalObject .",
        "geofault:OFC_HangingWall geofault:part_of geofault:SmeaheiaBlock .",
        "",
        "# OFC fault surface, shape, and orientation   # reconstructed values",
        "geofault:OFC_Surface a geofault:FaultSurface ;",
        "    geofault:boundary_of geofault:OFC ;",
        "    geofault:occupies geofault:OFC_SurfaceLocation .",
        "geofault:OFC_SurfaceLocation a geofault:FaultSurfaceLocation .",
        "geofault:OFC_SurfaceShape a geofault:Planar ;",
        "    geofault:quality_of geofault:OFC_Surface .",
        "geofault:OFC_Dip a geofault:Steep ;",
        "    geofault:quality_of geofault:OFC_SurfaceLocation ;",
        '    geofault:has_magnitude "63.5"^^unit:degree .',
        "",
        "# maximum separation between the two OFC walls   # reconstructed value",
        "geofault:OFC_MaxSeparation a geofault:FaultMaximumSeparation ;",
        "    geofault:quality_of geofault:OFC_HangingWall, geofault:OFC_FootWall ;",
        '    geofault:has_magnitude "250"^^unit:meter .',
        "",
        "# fault systems",
        "geofault:FirstOrderFaultSystem a geofault:FaultSystem .",
        "geofault:TFZ_Volume geofault:part_of geofault:FirstOrderFaultSystem .",
        "geofault:VFZ_Volume geofault:part_of geofault:FirstOrderFaultSystem .",
        "geofault:OFC_Volume geofault:part_of geofault:FirstOrderFaultSystem .",
        "geofault:TK a geofault:FaultSystem .",
        "geofault:EM a geofault:FaultSystem .",
        "",
    ])
    minors = [("TK", 1, "SyntheticFault"), ("TK", 2, "AntitheticFault"),
              ("EM", 1, "SyntheticFault"), ("EM", 2, "AntitheticFault")]
    for sys_tag, n, role_class in minors:
        tag = f"{sys_tag}F{n}"
        names = {
            "volume": f"{tag}_Volume",
            "zone": f"{tag}_Zone",
            "walls": [f"{tag}_Wall"],
            "core": f"{tag}_Core",
            "structure": f"{tag}_Structure",
        }
        rocks = [(f"{tag}_Rock", "BrittleFaultRock", False)]
        out.append(f"# minor fault {tag} of the {sys_tag} system   # reconstructed")
        out.extend(_block(names, process, "NormalFault", rocks))
        out.append(
            f"geofault:{tag}_MinorRole a geofault:{role_class} ;\n"
            f"    geofault:role_of geofault:{tag}_Zone ."
        )
        out.append(f"geofault:{tag}_Volume geofault:part_of geofault:{sys_tag} .")
        out.append("")

    out.extend([
        "# relative ages (geological timescale; dataset construction)",
        "geofault:TK geofault:older geofault:EM .",
        "geofault:OFC_Volume geofault:coeval geofault:TK .",
        "geofault:EM geofault:younger geofault:OFC_Volume .",
        "",
    ])
    return "\n".join(out)


QUERIES = {
    "cq1": (
        "usecase1",
        "# CQ1: find a strike-slip fault whose core is partly constituted by\n"
        "# fault breccia.\n"
        "SELECT ?f WHERE\n"
        "  ?f TYPE FaultVolume ;\n"
        "  ?f has_part ?c ;\n"
        "  ?c TYPE FaultCore ;\n"
        "  ?c constituted_by ?r ;\n"
        "  ?r TYPE FaultBreccia ;\n"
        "  ?s structure_of ?f ;\n"
        "  ?s TYPE StrikeSlipFault\n",
    ),
    "cq2a": (
        "usecase1",
        "# CQ2 (east side): what lies west of FV7 in the outcrop?\n"
        "SELECT ?a WHERE geofault:FV7 east_of ?a\n",
    ),
    "cq2b": (
        "usecase1",
        "# CQ2 (west side): what lies east of FV7 in the outcrop?\n"
        "SELECT ?b WHERE geofault:FV7 west_of ?b\n",
    ),
    "cq3": (
        "usecase1",
        "# CQ3: which fault system group does FV7 belong to?\n"
        "SELECT ?g WHERE geofault:FV7 part_of ?g ; ?g TYPE FaultSystem\n",
    ),
    "cq4": (
        "usecase2",
        "# CQ4: which fault structure types does the OFC volume bear?\n"
        "SELECT ?t WHERE ?s structure_of geofault:OFC_Volume ; ?s TYPE ?t\n",
    ),
    "cq5": (
        "usecase2",
        "# CQ5: what kind of surface shape does the OFC fault surface have?\n"
        "SELECT ?t WHERE\n"
        "  ?q TYPE FaultSurfaceShape ;\n"
        "  ?q quality_of ?srf ;\n"
        "  ?srf boundary_of geofault:OFC ;\n"
        "  ?q TYPE ?t\n",
    ),
    "cq6": (
        "usecase2",
        "# CQ6: is OFC a major fault? (non-empty answer = yes)\n"
        "SELECT ?role WHERE ?role TYPE MajorFault ; ?role role_of geofault:OFC\n",
    ),
    "cq7": (
        "usecase2",
        "# CQ7: to which geological block does the OFC hanging wall belong?\n"
        "SELECT ?block WHERE\n"
        "  ?r TYPE HangingWall ;\n"
        "  ?r role_of ?w ;\n"
        "  ?w part_of geofault:OFC_Volume ;\n"
        "  ?w part_of ?block ;\n"
        "  ?block TYPE geocore:GeologicalObject\n",
    ),
    "cq8": (
        "usecase2",
        "# CQ8: which fault systems is the OFC volume older than?\n"
        "SELECT ?s WHERE geofault:OFC_Volume older ?s ; ?s TYPE FaultSystem\n",
    ),
}


def node_repr(node) -> str:
    from geofault import Term

    return node.qname if isinstance(node, Term) else str(node)


def main() -> int:
    schema = load_builtin_schema()
    rules = compile_rules(schema)

    FIXTURES.mkdir(exist_ok=True)
    (FIXTURES / "queries").mkdir(exist_ok=True)
    (FIXTURES / "expected").mkdir(exist_ok=True)
    (FIXTURES / "mutations").mkdir(exist_ok=True)
    (FIXTURES / "canonical").mkdir(exist_ok=True)

    entries = []

    def write(relpath: str, text: str, **meta):
        path = FIXTURES / relpath
        path.write_text(text, encoding="utf-8")
        entries.append({
            "name": meta.pop("name"),
            "path": relpath,
            "sha256": hashlib.sha256(text.encode("utf-8")).hexdigest(),
            **meta,
        })

    # schema export
    schema_ttl = serialize_document(schema_to_document(schema))
    write("geofault.ttl", schema_ttl, name="schema", kind="schema",
          description="Bundled schema exported in the Turtle subset")

    # instance graphs
    uc1 = build_usecase1()
    uc2 = build_usecase2()
    write("usecase1.ttl", uc1, name="usecase1", kind="instances",
          description="Maiella Mountain outcrop instance graph")
    write("usecase2.ttl", uc2, name="usecase2", kind="instances",
          description="Northern Horda Platform instance graph")

    # canonical serializer output: frozen byte-for-byte
    doc = parse_turtle(uc1, "usecase1.ttl")
    g = graph_from_document(doc, schema)
    write("canonical/roundtrip.ttl", serialize_turtle(g),
          name="canonical", kind="instances",
          description="Canonical serializer output for the usecase1 triples")

    # mutations
    small_group = "\n".join(
        line for line in uc1.split("\n")
        if line not in (
            "geofault:FV6 geofault:part_of geofault:StrikeSlipFaultGroup .",
            "geofault:FV7 geofault:part_of geofault:StrikeSlipFaultGroup .",
        )
    )
    write("mutations/usecase1_small_group.ttl", small_group,
          name="usecase1_small_group", kind="mutation", dataset="usecase1",
          description="Strike-slip group reduced to one member volume")
    write("mutations/usecase2_extra_separation.ttl",
          uc2 + "\n# mutation: a third wall filler on the separation quality\n"
          "geofault:OFC_MaxSeparation geofault:quality_of geofault:TFZ_Wall .\n",
          name="usecase2_extra_separation", kind="mutation", dataset="usecase2",
          description="Three quality_of fillers on a FaultMaximumSeparation")
    write("mutations/usecase2_disjoint_typing.ttl",
          uc2 + "\n# mutation: the immaterial surface typed as a material zone\n"
          "geofault:OFC_Surface a geofault:FaultZone .\n",
          name="usecase2_disjoint_typing", kind="mutation", dataset="usecase2",
          description="An individual typed as both FaultZone and FaultSurface")

    # queries + oracle-computed expected bindings
    datasets = {}
    for ds, text in (("usecase1", uc1), ("usecase2", uc2)):
        graph = graph_from_document(parse_turtle(text, ds), schema)
        base = {a.triple for a in graph.assertions()}
        datasets[ds] = naive_materialize(base, rules)

    for name, (ds, text) in QUERIES.items():
        query = parse_query(text, schema)
        answers = brute_force_evaluate(datasets[ds], query)
        rows = sorted(
            [{var: node_repr(v) for var, v in b.items} for b in answers],
            key=lambda r: sorted(r.items()),
        )
        write(f"queries/{name}.gfq", text, name=name, kind="query", dataset=ds,
              expected=f"expected/{name}.json",
              description=f"Competency question {name.upper()}")
        expected_text = json.dumps(
            {"query": name, "projection": list(query.projection), "bindings": rows},
            indent=2,
        ) + "\n"
        (FIXTURES / "expected" / f"{name}.json").write_text(expected_text, "utf-8")

    manifest = json.dumps({"entries": entries}, indent=2) + "\n"
    (FIXTURES / "manifest.json").write_text(manifest, "utf-8")
    print(f"wrote {len(entries)} fixtures + expected answers under {FIXTURES}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
