"""Diagnostic codes, severities, and text rendering.

The registry is closed: every diagnostic produced anywhere in the
toolchain (compiler, template validation, runtime) carries one of the
codes below, and constructing a diagnostic with any other code is a bug.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .model import Span

#: Closed registry. E = compile-time, T = template validation, R = runtime.
REGISTRY: dict[str, str] = {
    "E001": "identifier is already declared",
    "E002": "operand or assignment type mismatch",
    "E003": "illegal identifier",
    "E004": "undeclared identifier",
    "E005": "syntax error",
    "E006": "reserved word used as an identifier",
    "E007": "Select case label is not a literal of the scrutinee's type",
    "T001": "missing required template slot",
    "T002": "slot value fails slot-kind validation",
    "R101": "division or remainder by zero, or non-finite arithmetic result",
    "R102": "array index out of bounds or not a whole number",
    "R103": "input text not convertible to Number",
    "R104": "repeat count negative or not a whole number",
    "R105": "step limit exceeded",
}


class Severity(Enum):
    ERROR = "error"
    WARNING = "warning"


#: Zero-width stand-in position for diagnostics with no source text,
#: e.g. template slot validation failures.
NO_SPAN = Span(0, 0, 1, 1)


@dataclass(frozen=True)
class Diagnostic:
    code: str
    severity: Severity
    span: Span
    message: str
    related_name: str | None = None

    def __post_init__(self) -> None:
        if self.code not in REGISTRY:
            raise ValueError(f"diagnostic code {self.code!r} is not in the registry")


def error(code: str, span: Span | None, message: str, related_name: str | None = None) -> Diagnostic:
    return Diagnostic(code, Severity.ERROR, span or NO_SPAN, message, related_name)


def format_diagnostic(diagnostic: Diagnostic) -> str:
    """One-line presentation: ``ERROR E005 at 1:1: expected a statement.``"""
    label = "ERROR" if diagnostic.severity is Severity.ERROR else "WARNING"
    message = diagnostic.message
    if not message.endswith("."):
        message += "."
    return f"{label} {diagnostic.code} at {diagnostic.span.line}:{diagnostic.span.column}: {message}"
