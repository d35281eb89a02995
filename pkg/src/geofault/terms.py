"""Interned identifiers and literal values shared by the whole engine.

A Term names a class, relation, or individual as a (namespace tag, local
name) pair. Namespace tags map to full IRIs through the fixed PREFIXES
table; documents may extend that table but may not contradict it.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from decimal import Decimal
from typing import Union

_LOCAL_NAME = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")

# Canonical prefix table. Domain vocabulary and bundled instance data live
# under geofault:; upper-level terms keep their own prefixes. The w3id /
# obolibrary IRIs are local placeholders, documented in the README.
PREFIXES: dict[str, str] = {
    "rdf": "http://www.w3.org/1999/02/22-rdf-syntax-ns#",
    "rdfs": "http://www.w3.org/2000/01/rdf-schema#",
    "owl": "http://www.w3.org/2002/07/owl#",
    "xsd": "http://www.w3.org/2001/XMLSchema#",
    "unit": "https://w3id.org/geofault/unit#",
    "bfo": "http://purl.obolibrary.org/obo/bfo#",
    "geocore": "https://w3id.org/geocore#",
    "geofault": "https://w3id.org/geofault#",
    "geofault-proj": "https://w3id.org/geofault/project#",
    "geofault-meta": "https://w3id.org/geofault/meta#",
}

UNITS = ("degree", "meter")
LITERAL_KINDS = ("string", "decimal", "boolean")


@dataclass(frozen=True, order=True, slots=True)
class Term:
    ns: str
    local: str

    def __post_init__(self):
        if not self.ns:
            raise ValueError("empty namespace tag")
        if not _LOCAL_NAME.match(self.local):
            raise ValueError(f"invalid local name: {self.local!r}")

    @property
    def qname(self) -> str:
        return f"{self.ns}:{self.local}"

    def __str__(self) -> str:
        return self.qname


def bfo(local: str) -> Term:
    return Term("bfo", local)


def geocore(local: str) -> Term:
    return Term("geocore", local)


def geofault(local: str) -> Term:
    return Term("geofault", local)


RDF_TYPE = Term("rdf", "type")

# Literal-valued relation ranges are expressed as xsd datatypes.
XSD_STRING = Term("xsd", "string")
XSD_DECIMAL = Term("xsd", "decimal")
XSD_BOOLEAN = Term("xsd", "boolean")


def format_decimal(value: Decimal) -> str:
    """Canonical lexical form: at most 6 fractional digits, no trailing zeros."""
    q = value.quantize(Decimal("0.000001")) if value != value.to_integral_value() else value
    text = format(q.normalize(), "f")
    if "." in text:
        text = text.rstrip("0").rstrip(".")
    return text or "0"


@dataclass(frozen=True, slots=True)
class Literal:
    kind: str  # one of LITERAL_KINDS
    value: Union[str, Decimal, bool]
    unit: str | None = None  # degree / meter; decimals only

    def __post_init__(self):
        if self.kind not in LITERAL_KINDS:
            raise ValueError(f"unknown literal kind: {self.kind!r}")
        if self.kind == "decimal":
            if not isinstance(self.value, Decimal):
                object.__setattr__(self, "value", Decimal(str(self.value)))
            if not self.value.is_finite():
                raise ValueError("decimal literals must be finite")
        elif self.kind == "boolean":
            if not isinstance(self.value, bool):
                raise ValueError("boolean literal needs a bool value")
        elif not isinstance(self.value, str):
            raise ValueError("string literal needs a str value")
        if self.unit is not None:
            if self.kind != "decimal":
                raise ValueError("units are allowed on decimals only")
            if self.unit not in UNITS:
                raise ValueError(f"unknown unit: {self.unit!r}")

    @property
    def lexical(self) -> str:
        if self.kind == "decimal":
            return format_decimal(self.value)
        if self.kind == "boolean":
            return "true" if self.value else "false"
        return self.value

    def __str__(self) -> str:
        if self.unit:
            return f'"{self.lexical}"^^unit:{self.unit}'
        return self.lexical if self.kind != "string" else f'"{self.lexical}"'


Node = Union[Term, Literal]


def string_literal(value: str) -> Literal:
    return Literal("string", value)


def decimal_literal(value, unit: str | None = None) -> Literal:
    return Literal("decimal", Decimal(str(value)), unit)


def boolean_literal(value: bool) -> Literal:
    return Literal("boolean", value)


def node_key(node: Node) -> str:
    """Total order key over terms and literals; terms sort before literals."""
    if isinstance(node, Term):
        return f"t:{node.qname}"
    return f"v:{node.kind}:{node.unit or ''}:{node.lexical}"
