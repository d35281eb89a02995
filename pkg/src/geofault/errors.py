"""Exception types shared across the engine."""

from __future__ import annotations


class GeoFaultError(Exception):
    """Base class for all engine errors."""


class UnknownTerm(GeoFaultError):
    """A term does not resolve against the active schema."""


class AmbiguousTerm(GeoFaultError):
    """A bare local name resolves to more than one schema term."""


class UnknownPredicate(GeoFaultError):
    """An assertion uses a predicate that is neither a schema relation nor rdf:type."""


class TypeMismatch(GeoFaultError):
    """Object kind (term vs literal) conflicts with the relation's range kind."""


class CannotRetractInferred(GeoFaultError):
    """Inferred triples are removed only by re-materialization, never retracted."""


class TripleNotFound(GeoFaultError):
    """The triple to explain is not in the graph."""


class BindingNotAnAnswer(GeoFaultError):
    """The binding passed to explain_answer is not among the query's answers."""


class ResourceLimit(GeoFaultError):
    """A configured resource cap (derived-triple count, term-table size) was hit."""


class UnknownFixture(GeoFaultError):
    """Requested fixture name is not in the bundled manifest."""


class ParseError(GeoFaultError):
    """Syntax error with a 1-based source position.

    Used by both the Turtle reader and the query parser.
    """

    def __init__(self, line: int, column: int, message: str, snippet: str = ""):
        self.line = line
        self.column = column
        self.message = message
        self.snippet = snippet
        super().__init__(f"{line}:{column}: {message}")
