"""Shared data model for the whole toolchain.

Source spans, tokens, type tags, the expression and statement AST, and
programs. Every pipeline stage (lexer, parser, checker, template engine,
sentence realizer, interpreter, code generator) exchanges the immutable
types defined here. AST equality is structural and ignores spans, so a
statement built by the template engine compares equal to the same
statement parsed back out of its realized sentence.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum


@dataclass(frozen=True)
class Span:
    """Half-open byte range [start, end) into the UTF-8 source.

    ``line`` and ``column`` are the 1-based position of ``start``.
    """

    start: int
    end: int
    line: int
    column: int

    def __post_init__(self) -> None:
        if self.start > self.end:
            raise ValueError(f"span start {self.start} is past end {self.end}")
        if self.line < 1 or self.column < 1:
            raise ValueError("line and column are 1-based")


def span_merge(a: Span, b: Span) -> Span:
    """Smallest span covering both inputs; position comes from the earlier one."""
    first = a if a.start <= b.start else b
    return Span(min(a.start, b.start), max(a.end, b.end), first.line, first.column)


class TokenKind(Enum):
    WORD = "word"
    NUMBER = "number"
    STRING = "string"
    OPERATOR = "operator"
    LPAREN = "lparen"
    RPAREN = "rparen"
    AMPERSAND = "ampersand"
    PERIOD = "period"


@dataclass(frozen=True)
class Token:
    kind: TokenKind
    lexeme: str
    span: Span

    def folded(self) -> str:
        """Case-folded lexeme; keywords compare case-insensitively."""
        return self.lexeme.casefold()


class ScalarType(Enum):
    """The two value types of the language."""

    NUMBER = "Number"
    STRING = "String"


@dataclass(frozen=True)
class ArrayType:
    """Type of a one-dimensional fixed-size array symbol."""

    element: ScalarType
    size: int

    def __post_init__(self) -> None:
        if self.size < 1:
            raise ValueError("array size must be positive")


TypeTag = ScalarType | ArrayType


def render_number(value: float) -> str:
    """Canonical text for a Number value.

    Shortest digit string that round-trips to the same double, always in
    plain positional notation (the grammar has no exponent form), and with
    no decimal point for integral values. Shared by the sentence realizer,
    the interpreter, and mirrored by the emitted runtime helpers.
    """
    text = repr(value)
    if text.endswith(".0"):
        return text[:-2]
    if "e" not in text:
        return text
    head, _, exp_text = text.partition("e")
    sign = ""
    if head.startswith("-"):
        sign, head = "-", head[1:]
    point = head.find(".")
    digits = head.replace(".", "")
    if point < 0:
        point = len(head)
    point += int(exp_text)
    if point <= 0:
        return sign + "0." + "0" * -point + digits
    if point >= len(digits):
        return sign + digits + "0" * (point - len(digits))
    return sign + digits[:point] + "." + digits[point:]


# --- Expressions ---------------------------------------------------------
#
# Spans are carried for diagnostics but excluded from equality, hashing,
# and repr. Bodies and operands are deeply immutable.


@dataclass(frozen=True)
class NumberLit:
    value: float
    span: Span | None = field(default=None, kw_only=True, compare=False, repr=False)


@dataclass(frozen=True)
class StringLit:
    value: str
    span: Span | None = field(default=None, kw_only=True, compare=False, repr=False)


@dataclass(frozen=True)
class VarRef:
    name: str
    span: Span | None = field(default=None, kw_only=True, compare=False, repr=False)


@dataclass(frozen=True)
class ElementRef:
    """1-based element access: ``element <index> of <array>``."""

    index: "Expression"
    array: str
    span: Span | None = field(default=None, kw_only=True, compare=False, repr=False)


@dataclass(frozen=True)
class Negate:
    """Unary arithmetic negation."""

    operand: "Expression"
    span: Span | None = field(default=None, kw_only=True, compare=False, repr=False)


class BinaryOp(Enum):
    ADD = "+"
    SUB = "-"
    MUL = "*"
    DIV = "/"
    REM = "%"
    CONCAT = "&"


@dataclass(frozen=True)
class Binary:
    op: BinaryOp
    left: "Expression"
    right: "Expression"
    span: Span | None = field(default=None, kw_only=True, compare=False, repr=False)


class Relop(Enum):
    GREATER = "Greater"
    SMALLER = "Smaller"
    GREATER_EQUAL = "GreaterOrEqual"
    SMALLER_EQUAL = "SmallerOrEqual"
    EQUAL = "Equal"
    NOT_EQUAL = "NotEqual"


@dataclass(frozen=True)
class Comparison:
    """Relational test. Guard-only: comparisons have no value type."""

    op: Relop
    left: "Expression"
    right: "Expression"
    span: Span | None = field(default=None, kw_only=True, compare=False, repr=False)


class LogicalOp(Enum):
    AND = "And"
    OR = "Or"


@dataclass(frozen=True)
class Logical:
    """Short-circuit connective over comparisons, guard-only."""

    op: LogicalOp
    left: "Expression"
    right: "Expression"
    span: Span | None = field(default=None, kw_only=True, compare=False, repr=False)


Expression = (
    NumberLit | StringLit | VarRef | ElementRef | Negate | Binary | Comparison | Logical
)

#: Lvalues: the expressions allowed as assignment and Read targets.
LValue = VarRef | ElementRef


# --- Statements ----------------------------------------------------------


@dataclass(frozen=True)
class DeclareVariable:
    name: str
    type: ScalarType
    initial: Expression | None = None
    span: Span | None = field(default=None, kw_only=True, compare=False, repr=False)
    name_span: Span | None = field(default=None, kw_only=True, compare=False, repr=False)


@dataclass(frozen=True)
class DeclareArray:
    name: str
    element_type: ScalarType
    size: int
    span: Span | None = field(default=None, kw_only=True, compare=False, repr=False)
    name_span: Span | None = field(default=None, kw_only=True, compare=False, repr=False)

    def __post_init__(self) -> None:
        if self.size < 1:
            raise ValueError("array size must be positive")


@dataclass(frozen=True)
class Assignment:
    target: LValue
    value: Expression
    span: Span | None = field(default=None, kw_only=True, compare=False, repr=False)


@dataclass(frozen=True)
class Display:
    value: Expression
    span: Span | None = field(default=None, kw_only=True, compare=False, repr=False)


@dataclass(frozen=True)
class Read:
    target: LValue
    prompt: str | None = None
    span: Span | None = field(default=None, kw_only=True, compare=False, repr=False)


@dataclass(frozen=True)
class IfArm:
    condition: Expression
    body: tuple["Statement", ...]


@dataclass(frozen=True)
class If:
    """Conditional chain: one or more guarded arms plus an optional Otherwise."""

    arms: tuple[IfArm, ...]
    otherwise: tuple["Statement", ...] | None = None
    span: Span | None = field(default=None, kw_only=True, compare=False, repr=False)

    def __post_init__(self) -> None:
        if not self.arms:
            raise ValueError("an If needs at least one arm")


@dataclass(frozen=True)
class RepeatWhile:
    condition: Expression
    body: tuple["Statement", ...]
    span: Span | None = field(default=None, kw_only=True, compare=False, repr=False)


@dataclass(frozen=True)
class RepeatTimes:
    count: Expression
    body: tuple["Statement", ...]
    span: Span | None = field(default=None, kw_only=True, compare=False, repr=False)


@dataclass(frozen=True)
class SelectCase:
    """One case: a literal label and its body."""

    label: NumberLit | StringLit
    body: tuple["Statement", ...]


@dataclass(frozen=True)
class Select:
    scrutinee: Expression
    cases: tuple[SelectCase, ...]
    other: tuple["Statement", ...] | None = None
    span: Span | None = field(default=None, kw_only=True, compare=False, repr=False)

    def __post_init__(self) -> None:
        if not self.cases:
            raise ValueError("a Select needs at least one case")


Statement = (
    DeclareVariable
    | DeclareArray
    | Assignment
    | Display
    | Read
    | If
    | RepeatWhile
    | RepeatTimes
    | Select
)


@dataclass(frozen=True)
class Program:
    statements: tuple[Statement, ...] = ()
    span: Span | None = field(default=None, kw_only=True, compare=False, repr=False)
