"""Closed-world constraint checking against shapes compiled from the
schema's definitional requirement axioms.

Validation runs over a materialization fixpoint so that subclass typing is
complete: a filler typed into the filler class by inference counts.
Upper bounds are deliberately reported here as well as by the consistency
checker; user-facing reports want both views.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .reasoner import _extension
from .schema import Schema
from .store import Graph, _vals
from .terms import Term


@dataclass(frozen=True)
class Constraint:
    relation: Term
    filler: Term
    min: int
    max: int | None
    severity: str  # error | warning
    source_axiom: str

    def __post_init__(self):
        if self.min < 0:
            raise ValueError("min must be >= 0")
        if self.max is not None and self.max < self.min:
            raise ValueError("max must be >= min")
        if self.severity not in ("error", "warning"):
            raise ValueError(f"unknown severity: {self.severity!r}")


@dataclass(frozen=True)
class Shape:
    target_class: Term
    constraints: tuple[Constraint, ...]


@dataclass(frozen=True)
class Violation:
    focus: Term
    shape: Term
    constraint: Constraint
    found: int
    message: str


@dataclass(frozen=True)
class ValidationReport:
    conforms: bool
    violations: tuple[Violation, ...]

    def to_json_dict(self) -> dict:
        return {
            "conforms": self.conforms,
            "violations": [
                {
                    "focus": v.focus.qname,
                    "shape": v.shape.qname,
                    "constraint": v.constraint.source_axiom,
                    "found": v.found,
                    "min": v.constraint.min,
                    "max": v.constraint.max,
                    "severity": v.constraint.severity,
                    "message": v.message,
                }
                for v in self.violations
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2)


def compile_shapes(schema: Schema) -> list[Shape]:
    """One shape per class carrying requirement axioms. Definitional
    some/minimum/exactly clauses compile to error severity."""
    by_class: dict[Term, list[Constraint]] = {}
    for axiom in schema.axioms:
        if axiom.kind == "SomeValuesRequirement":
            cls, rel, filler = axiom.operands
            lo, hi = 1, None
        elif axiom.kind == "MinQualifiedCardinality":
            cls, rel, filler = axiom.operands
            lo, hi = axiom.cardinality, None
        elif axiom.kind == "ExactQualifiedCardinality":
            cls, rel, filler = axiom.operands
            lo = hi = axiom.cardinality
        else:
            continue
        by_class.setdefault(cls, []).append(
            Constraint(rel, filler, lo, hi, "error", axiom.id)
        )
    shapes = []
    for cls in sorted(by_class, key=lambda t: t.qname):
        constraints = tuple(sorted(by_class[cls], key=lambda c: c.source_axiom))
        shapes.append(Shape(cls, constraints))
    return shapes


def validate(g: Graph, shapes: list[Shape]) -> ValidationReport:
    """Count distinct fillers per target instance and report shortfalls
    and exceedances, ordered by (focus, shape, constraint)."""
    violations: list[Violation] = []
    for shape in shapes:
        targets = sorted(_extension(g, shape.target_class), key=g.key)
        if not targets:
            continue
        for constraint in shape.constraints:
            r_id = g.lookup(constraint.relation)
            fwd = g._fwd.get(r_id, {}) if r_id is not None else {}
            filler_ext = _extension(g, constraint.filler)
            for x in targets:
                found = sum(1 for o in _vals(fwd.get(x, ())) if o in filler_ext)
                if found < constraint.min:
                    violations.append(Violation(
                        g.node(x), shape.target_class, constraint, found,
                        f"{g.node(x).qname} has {found} {constraint.relation.qname} "
                        f"filler(s) of type {constraint.filler.qname}; "
                        f"needs at least {constraint.min}",
                    ))
                elif constraint.max is not None and found > constraint.max:
                    violations.append(Violation(
                        g.node(x), shape.target_class, constraint, found,
                        f"{g.node(x).qname} has {found} {constraint.relation.qname} "
                        f"filler(s) of type {constraint.filler.qname}; "
                        f"allows at most {constraint.max}",
                    ))
    violations.sort(key=lambda v: (v.focus.qname, v.shape.qname, v.constraint.source_axiom))
    conforms = not any(v.constraint.severity == "error" for v in violations)
    return ValidationReport(conforms, tuple(violations))
