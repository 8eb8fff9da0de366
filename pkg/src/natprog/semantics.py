"""Semantic analysis: symbol table, identifier legality, and type checking.

One flat global scope. Names resolve case-insensitively but keep their
declared spelling. Declaration must precede use in textual (pre-order)
statement order. The checker walks the whole program and collects every
diagnostic rather than stopping at the first.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .diagnostics import Diagnostic, error
from .model import (
    ArrayType,
    Assignment,
    Binary,
    BinaryOp,
    Comparison,
    DeclareArray,
    DeclareVariable,
    Display,
    ElementRef,
    Expression,
    If,
    Logical,
    NumberLit,
    Negate,
    Program,
    Read,
    Relop,
    RepeatTimes,
    RepeatWhile,
    ScalarType,
    Select,
    Span,
    Statement,
    StringLit,
    TypeTag,
    VarRef,
)

#: Words of the language itself; they cannot be declared as identifiers.
RESERVED_WORDS = frozenset(
    """
    a an and array called condition declare display element end equal from
    greater if initial is keyboard not number of on or other otherwise
    prompt read repeat screen select set size smaller string than the then
    times to type value variable when while with
    """.split()
)

MAX_IDENTIFIER_LENGTH = 64


def check_identifier(name: str, span: Span | None = None) -> Diagnostic | None:
    """Legality check for a would-be identifier; None means legal.

    Rule: a letter followed by letters, digits, or underscores, at most 64
    characters, and not a reserved word.
    """
    if not name or not name[0].isalpha():
        return error("E003", span, f"'{name}' is not a legal identifier", name)
    if any(not (ch.isalnum() or ch == "_") for ch in name[1:]):
        return error("E003", span, f"'{name}' contains illegal characters", name)
    if len(name) > MAX_IDENTIFIER_LENGTH:
        return error(
            "E003",
            span,
            f"'{name}' is longer than {MAX_IDENTIFIER_LENGTH} characters",
            name,
        )
    if name.casefold() in RESERVED_WORDS:
        return error("E006", span, f"'{name}' is a reserved word", name)
    return None


@dataclass(frozen=True)
class Symbol:
    name: str  # declared spelling
    type: TypeTag
    span: Span | None
    order: int  # declaration position in pre-order statement numbering


class SymbolTable:
    """Insertion-ordered symbol map with case-insensitive lookup."""

    def __init__(self) -> None:
        self._entries: dict[str, Symbol] = {}

    def lookup(self, name: str) -> Symbol | None:
        return self._entries.get(name.casefold())

    def declare(self, symbol: Symbol) -> None:
        key = symbol.name.casefold()
        if key in self._entries:
            raise ValueError(f"duplicate declaration of {symbol.name!r}")
        self._entries[key] = symbol

    def copy(self) -> "SymbolTable":
        clone = SymbolTable()
        clone._entries = dict(self._entries)
        return clone

    def __iter__(self):
        return iter(self._entries.values())

    def __len__(self) -> int:
        return len(self._entries)


@dataclass
class Analysis:
    """Result of :func:`analyze`.

    ``checked`` is set only when there are no error diagnostics. The
    symbol table is always populated as far as analysis got, which lets
    callers validate template instances against partially bad context.
    """

    diagnostics: tuple[Diagnostic, ...]
    symbols: SymbolTable
    checked: "CheckedProgram | None" = None

    @property
    def ok(self) -> bool:
        return self.checked is not None


@dataclass
class CheckedProgram:
    """A program that passed analysis, with per-node expression types.

    Types are keyed by node identity (not equality: two occurrences of
    the literal 5 are distinct nodes). Holding the program keeps the ids
    stable.
    """

    program: Program
    symbols: SymbolTable
    _types: dict[int, TypeTag] = field(default_factory=dict, repr=False)

    def type_of(self, expr: Expression) -> TypeTag:
        return self._types[id(expr)]


def analyze(program: Program) -> Analysis:
    checker = _Checker()
    for stmt in program.statements:
        checker.check_statement(stmt)
    analysis = Analysis(tuple(checker.diagnostics), checker.symbols)
    if not checker.diagnostics:
        analysis.checked = CheckedProgram(program, checker.symbols, checker.types)
    return analysis


def check_statement(stmt: Statement, symbols: SymbolTable) -> list[Diagnostic]:
    """Check one statement against an existing table (mutating it).

    Shared by :func:`analyze` and template-instance validation, so a
    template instance that validates cleanly is guaranteed to compile
    cleanly in the same context.
    """
    checker = _Checker(symbols)
    checker.check_statement(stmt)
    return checker.diagnostics


def type_of(expr: Expression, symbols: SymbolTable) -> TypeTag | Diagnostic:
    """Type of a value expression, or the first diagnostic explaining why not."""
    checker = _Checker(symbols.copy())
    tag = checker.value_type(expr)
    if checker.diagnostics:
        return checker.diagnostics[0]
    assert tag is not None
    return tag


class _Checker:
    def __init__(self, symbols: SymbolTable | None = None) -> None:
        self.symbols = symbols if symbols is not None else SymbolTable()
        self.diagnostics: list[Diagnostic] = []
        self.types: dict[int, TypeTag] = {}
        self.order = len(self.symbols)

    def report(self, code: str, span: Span | None, message: str, name: str | None = None) -> None:
        self.diagnostics.append(error(code, span, message, name))

    # -- statements -------------------------------------------------------

    def check_statement(self, stmt: Statement) -> None:
        if isinstance(stmt, DeclareVariable):
            self._declare(stmt.name, stmt.type, stmt.name_span or stmt.span)
            if stmt.initial is not None:
                got = self.value_type(stmt.initial)
                if got is not None and got != stmt.type:
                    self.report(
                        "E002",
                        stmt.initial.span or stmt.span,
                        f"initial value is {_name(got)} but '{stmt.name}' is {_name(stmt.type)}",
                        stmt.name,
                    )
        elif isinstance(stmt, DeclareArray):
            self._declare(
                stmt.name,
                ArrayType(stmt.element_type, stmt.size),
                stmt.name_span or stmt.span,
            )
        elif isinstance(stmt, Assignment):
            target = self.lvalue_type(stmt.target)
            got = self.value_type(stmt.value)
            if target is not None and got is not None and got != target:
                self.report(
                    "E002",
                    stmt.value.span or stmt.span,
                    f"cannot assign {_name(got)} to {_name(target)} target "
                    f"'{_target_name(stmt.target)}'",
                    _target_name(stmt.target),
                )
        elif isinstance(stmt, Display):
            self.value_type(stmt.value)
        elif isinstance(stmt, Read):
            self.lvalue_type(stmt.target)
        elif isinstance(stmt, If):
            for arm in stmt.arms:
                self.condition(arm.condition)
                self._block(arm.body)
            if stmt.otherwise is not None:
                self._block(stmt.otherwise)
        elif isinstance(stmt, RepeatWhile):
            self.condition(stmt.condition)
            self._block(stmt.body)
        elif isinstance(stmt, RepeatTimes):
            got = self.value_type(stmt.count)
            if got is not None and got is not ScalarType.NUMBER:
                self.report(
                    "E002",
                    stmt.count.span or stmt.span,
                    "the repeat count must be a Number",
                )
            self._block(stmt.body)
        elif isinstance(stmt, Select):
            scrutinee = self.value_type(stmt.scrutinee)
            for case in stmt.cases:
                label = case.label
                if not isinstance(label, (NumberLit, StringLit)):
                    self.report("E007", getattr(label, "span", stmt.span), "case label must be a literal")
                    continue
                label_type = (
                    ScalarType.NUMBER if isinstance(label, NumberLit) else ScalarType.STRING
                )
                self.types[id(label)] = label_type
                if scrutinee is not None and label_type is not scrutinee:
                    self.report(
                        "E007",
                        label.span or stmt.span,
                        f"case label is {_name(label_type)} but the Select value is {_name(scrutinee)}",
                    )
                self._block(case.body)
            if stmt.other is not None:
                self._block(stmt.other)
        else:
            raise TypeError(f"not a statement: {stmt!r}")

    def _block(self, body: tuple[Statement, ...]) -> None:
        for stmt in body:
            self.check_statement(stmt)

    def _declare(self, name: str, tag: TypeTag, span: Span | None) -> None:
        problem = check_identifier(name, span)
        if problem is not None:
            self.diagnostics.append(problem)
            return
        existing = self.symbols.lookup(name)
        if existing is not None:
            self.report("E001", span, f"variable '{existing.name}' is already declared", name)
            return
        self.symbols.declare(Symbol(name, tag, span, self.order))
        self.order += 1

    # -- expressions ------------------------------------------------------

    def value_type(self, expr: Expression) -> ScalarType | None:
        """Type a value expression; records it and returns None after an error."""
        tag = self._value_type(expr)
        if tag is not None:
            self.types[id(expr)] = tag
        return tag

    def _value_type(self, expr: Expression) -> ScalarType | None:
        if isinstance(expr, NumberLit):
            return ScalarType.NUMBER
        if isinstance(expr, StringLit):
            return ScalarType.STRING
        if isinstance(expr, VarRef):
            symbol = self._resolve(expr.name, expr.span)
            if symbol is None:
                return None
            if isinstance(symbol.type, ArrayType):
                self.report(
                    "E002",
                    expr.span,
                    f"array '{symbol.name}' needs an element index here",
                    symbol.name,
                )
                return None
            return symbol.type
        if isinstance(expr, ElementRef):
            return self._element_type(expr)
        if isinstance(expr, Negate):
            got = self.value_type(expr.operand)
            if got is not None and got is not ScalarType.NUMBER:
                self.report("E002", expr.span, "'-' needs a Number operand")
                return None
            return ScalarType.NUMBER if got is not None else None
        if isinstance(expr, Binary):
            return self._binary_type(expr)
        if isinstance(expr, (Comparison, Logical)):
            self.report("E002", expr.span, "a condition cannot be used as a value")
            return None
        raise TypeError(f"not an expression: {expr!r}")

    def _binary_type(self, expr: Binary) -> ScalarType | None:
        left = self.value_type(expr.left)
        right = self.value_type(expr.right)
        if expr.op is BinaryOp.CONCAT:
            # '&' accepts Number or String on either side and yields String.
            if left is None or right is None:
                return None
            return ScalarType.STRING
        bad = False
        for got, side in ((left, expr.left), (right, expr.right)):
            if got is not None and got is not ScalarType.NUMBER:
                self.report(
                    "E002",
                    side.span or expr.span,
                    f"'{expr.op.value}' needs Number operands, not {_name(got)}",
                )
                bad = True
        if bad or left is None or right is None:
            return None
        return ScalarType.NUMBER

    def _element_type(self, expr: ElementRef) -> ScalarType | None:
        index_type = self.value_type(expr.index)
        if index_type is not None and index_type is not ScalarType.NUMBER:
            self.report("E002", expr.index.span or expr.span, "the element index must be a Number")
        symbol = self._resolve(expr.array, expr.span)
        if symbol is None:
            return None
        if not isinstance(symbol.type, ArrayType):
            self.report("E002", expr.span, f"'{symbol.name}' is not an array", symbol.name)
            return None
        return symbol.type.element

    def lvalue_type(self, target: Expression) -> ScalarType | None:
        if isinstance(target, VarRef):
            symbol = self._resolve(target.name, target.span)
            if symbol is None:
                return None
            if isinstance(symbol.type, ArrayType):
                self.report(
                    "E002",
                    target.span,
                    f"array '{symbol.name}' needs an element index here",
                    symbol.name,
                )
                return None
            self.types[id(target)] = symbol.type
            return symbol.type
        if isinstance(target, ElementRef):
            tag = self._element_type(target)
            if tag is not None:
                self.types[id(target)] = tag
            return tag
        self.report("E002", getattr(target, "span", None), "the target must be a variable or array element")
        return None

    def condition(self, expr: Expression) -> None:
        if isinstance(expr, Logical):
            self.condition(expr.left)
            self.condition(expr.right)
            return
        if isinstance(expr, Comparison):
            left = self.value_type(expr.left)
            right = self.value_type(expr.right)
            if expr.op in (Relop.EQUAL, Relop.NOT_EQUAL):
                if left is not None and right is not None and left is not right:
                    self.report(
                        "E002",
                        expr.span,
                        f"cannot compare {_name(left)} with {_name(right)}",
                    )
            else:
                for got, side in ((left, expr.left), (right, expr.right)):
                    if got is not None and got is not ScalarType.NUMBER:
                        self.report(
                            "E002",
                            side.span or expr.span,
                            f"ordering comparisons need Number operands, not {_name(got)}",
                        )
            return
        # A bare value expression where a condition belongs.
        self.report("E002", getattr(expr, "span", None), "expected a condition here")
        self.value_type(expr)

    def _resolve(self, name: str, span: Span | None) -> Symbol | None:
        symbol = self.symbols.lookup(name)
        if symbol is None:
            self.report("E004", span, f"'{name}' is not declared", name)
            return None
        return symbol


def _name(tag: TypeTag) -> str:
    if isinstance(tag, ArrayType):
        return f"array of {tag.element.value}"
    return tag.value


def _target_name(target: Expression) -> str:
    if isinstance(target, VarRef):
        return target.name
    if isinstance(target, ElementRef):
        return target.array
    return "?"
