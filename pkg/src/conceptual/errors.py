"""Error types and the check-result value shared across the package."""

from __future__ import annotations

from dataclasses import dataclass


class ConceptualError(Exception):
    """Base class for all errors raised by this package."""


class ShapeError(ConceptualError):
    """Operands have incompatible shapes; the message names both."""


class ValidationError(ConceptualError):
    """A structural invariant failed; carries a witness when one exists."""

    def __init__(self, message: str, witness: object = None):
        super().__init__(message)
        self.witness = witness


class ResourceLimitError(ConceptualError):
    """A configured cap (powerset size, concept count) was exceeded."""


class ParseError(ConceptualError):
    """Malformed input file; carries the 1-based line number."""

    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


@dataclass(frozen=True)
class CheckResult:
    """Verdict of a structural check, with a minimal witness on failure."""

    ok: bool
    witness: tuple | None = None
    reason: str = ""

    def __bool__(self) -> bool:
        return self.ok
