"""Exception hierarchy shared across the package.

Parse-time problems (bad surface syntax, with a source span) and semantic
validation problems (bad numbers in a syntactically fine input) are distinct
categories; the CLI maps them to different exit codes.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True, slots=True)
class SourceSpan:
    """Location of a token or fragment inside an input text.

    ``line`` and ``column`` are 1-based; ``start``/``end`` are byte offsets
    into the UTF-8 input with ``0 <= start <= end <= len(text)``.
    """

    line: int
    column: int
    start: int
    end: int


class CfWorldsError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(CfWorldsError):
    """Syntactic error in a statement or experiment config.

    Always carries a span into the offending input, plus the set of token
    descriptions the parser would have accepted at that point.
    """

    def __init__(self, message: str, span: SourceSpan, expected: frozenset[str] = frozenset()):
        super().__init__(message)
        self.message = message
        self.span = span
        self.expected = expected

    def __str__(self) -> str:
        loc = f"{self.span.line}:{self.span.column}"
        if self.expected:
            exp = ", ".join(sorted(self.expected))
            return f"{loc}: {self.message} (expected: {exp})"
        return f"{loc}: {self.message}"


class ValidationError(CfWorldsError):
    """Semantic validation failure: norms, orthonormality, structure."""


class NormError(ValidationError):
    """A state vector is not unit-norm within tolerance."""


class OrthonormalityError(ValidationError):
    """A measurement basis is not orthonormal within tolerance."""


class ConditionImpossible(CfWorldsError):
    """Conditioning event has probability at or below the possibility threshold."""


class MalformedStatement(CfWorldsError):
    """Statement AST violates a structural rule (nesting, unknown labels)."""
