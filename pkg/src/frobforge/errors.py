"""Structured errors shared by all engine modules."""

from __future__ import annotations


class EngineError(Exception):
    """Base class for structured engine failures.

    `module` names the originating engine module so front ends can report it.
    """

    module = "engine"


class ResourceBudgetError(EngineError):
    """A computation exceeded its step budget instead of truncating silently."""

    module = "groebner"

    def __init__(self, budget: int, what: str = "S-pair reductions"):
        self.budget = budget
        self.what = what
        super().__init__(f"resource budget exceeded: more than {budget} {what}")


class PreconditionError(EngineError):
    """An operation was called outside its stated preconditions."""


class MapNotWellDefinedError(PreconditionError):
    module = "algebra"

    def __init__(self, relation, image):
        self.relation = relation
        self.image = image
        super().__init__(
            f"map is not well defined: relation {relation} maps to nonzero {image}"
        )


class EnumerationError(EngineError):
    """The brute-force oracle cannot enumerate an algebra."""

    module = "oracle"


class ParseError(EngineError):
    module = "workbench"

    def __init__(self, line: int, column: int, expected: str):
        self.line = line
        self.column = column
        self.expected = expected
        super().__init__(f"line {line}, column {column}: {expected}")
