"""Exception hierarchy shared across the package.

Two top-level families map onto CLI exit codes: InputError (bad files,
unknown identifiers, invalid configuration -> exit 1) and InvariantError
(a constructed artifact violated an internal guarantee -> exit 2).
"""

from __future__ import annotations


class TairkitError(Exception):
    """Base class for all errors raised by tairkit."""


class InputError(TairkitError):
    """Malformed or inconsistent user input."""


class ParseError(InputError):
    """Syntax error in an input file, reported with a 1-based line number."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ClauseNotFoundError(InputError):
    """Lookup of an unknown clause identifier."""


class NotFoundError(InputError):
    """An IRI was queried but occurs nowhere in the graph."""


class SchemeError(InputError):
    """Concept scheme construction failed (duplicate terms, unknown categories, ...)."""


class LexiconError(InputError):
    """Bad lexicon file content."""


class CurationError(InputError):
    """Bad curation file content or references."""


class ManifestError(InputError):
    """Bad vocabulary manifest content."""


class ConfigError(InputError):
    """Invalid runtime configuration (unknown pitfall codes, bad flags, ...)."""


class InvariantError(TairkitError):
    """An internal structural guarantee was violated."""


class CycleError(InvariantError):
    """A hierarchy that must be acyclic contains a cycle."""


class GraphBuildError(InvariantError):
    """Graph assembly detected dangling or inconsistent references."""
