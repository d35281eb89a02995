"""GeoFault knowledge-graph engine.

Schema, triple store, rule reasoner, constraint validator, Turtle I/O,
competency-question queries, CLI, and the HTTP annotation service.
"""

from .errors import (
    AmbiguousTerm,
    BindingNotAnAnswer,
    CannotRetractInferred,
    GeoFaultError,
    ParseError,
    ResourceLimit,
    TripleNotFound,
    TypeMismatch,
    UnknownFixture,
    UnknownPredicate,
    UnknownTerm,
)
from .terms import (
    Literal,
    Node,
    PREFIXES,
    RDF_TYPE,
    Term,
    bfo,
    boolean_literal,
    decimal_literal,
    geocore,
    geofault,
    string_literal,
)
from .schema import (
    Axiom,
    ClassDef,
    RelationDef,
    Schema,
    annotation_vocabulary,
    dip_band,
    load_builtin_schema,
    relation_profile,
    subclass_closure,
)
from .store import (
    ASSERTED,
    Assertion,
    Graph,
    Provenance,
    TriplePattern,
    Var,
    graph_from_assertions,
    imported,
    inferred,
)
from .turtle import (
    Document,
    export_structured,
    export_structured_json,
    graph_from_document,
    parse_turtle,
    serialize_document,
    serialize_turtle,
)
from .reasoner import (
    Clash,
    ConsistencyReport,
    Derivation,
    Rule,
    check_consistency,
    compile_rules,
    explain,
    materialize,
)
from .validator import (
    Constraint,
    Shape,
    ValidationReport,
    Violation,
    compile_shapes,
    validate,
)
from .query import (
    BindingSet,
    PathExplanation,
    Query,
    evaluate,
    explain_answer,
    parse_query,
)
from .schema_io import schema_from_document, schema_to_document

__version__ = "0.1.0"
