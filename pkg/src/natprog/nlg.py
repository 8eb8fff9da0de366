"""Sentence realizer: AST back to canonical natural-language source.

Template-filling realization: each statement kind has one fixed English
pattern whose holes are filled from the node. The output is the
canonical form of the language, so ``parse(realize(ast)) == ast`` for
every well-formed AST and realization is idempotent on parsed programs.
"""

from __future__ import annotations

from .lexer import escape_string
from .model import (
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
    LogicalOp,
    Negate,
    NumberLit,
    Program,
    Read,
    Relop,
    RepeatTimes,
    RepeatWhile,
    Select,
    Statement,
    StringLit,
    VarRef,
    render_number,
)

INDENT = "    "

# Precedence levels for minimal re-parenthesization. Higher binds tighter.
_LEVEL_OR = 1
_LEVEL_AND = 2
_LEVEL_COMPARISON = 3
_LEVEL_CONCAT = 4
_LEVEL_ADDITIVE = 5
_LEVEL_MULTIPLICATIVE = 6
_LEVEL_UNARY = 7
_LEVEL_ATOM = 8

_BINARY_LEVEL = {
    BinaryOp.CONCAT: _LEVEL_CONCAT,
    BinaryOp.ADD: _LEVEL_ADDITIVE,
    BinaryOp.SUB: _LEVEL_ADDITIVE,
    BinaryOp.MUL: _LEVEL_MULTIPLICATIVE,
    BinaryOp.DIV: _LEVEL_MULTIPLICATIVE,
    BinaryOp.REM: _LEVEL_MULTIPLICATIVE,
}

#: Canonical comparison phrasings (the optional 'than'/'to' words are
#: always included on output).
_RELOP_TEXT = {
    Relop.GREATER: "is Greater than",
    Relop.SMALLER: "is Smaller than",
    Relop.GREATER_EQUAL: "is Greater or Equal to",
    Relop.SMALLER_EQUAL: "is Smaller or Equal to",
    Relop.EQUAL: "is Equal to",
    Relop.NOT_EQUAL: "is Not Equal to",
}


def realize_expression(expr: Expression) -> str:
    """Render a value expression or condition as source text."""
    text, _ = _render(expr)
    return text


def realize_statement(stmt: Statement) -> str:
    """Render one statement as one complete sentence (no trailing newline).

    Block statements span multiple lines; nested bodies are indented four
    spaces per level.
    """
    return "\n".join(_lines(stmt, 0))


def realize_program(program: Program) -> str:
    """Render a whole program, one newline-terminated sentence per statement."""
    return "".join(realize_statement(stmt) + "\n" for stmt in program.statements)


def _render(expr: Expression) -> tuple[str, int]:
    """Return (text, precedence level) for an expression."""
    if isinstance(expr, NumberLit):
        text = render_number(expr.value)
        # A negative literal prints with a leading minus, which re-parses
        # at unary level rather than as an atom.
        return text, _LEVEL_UNARY if text.startswith("-") else _LEVEL_ATOM
    if isinstance(expr, StringLit):
        return escape_string(expr.value), _LEVEL_ATOM
    if isinstance(expr, VarRef):
        return expr.name, _LEVEL_ATOM
    if isinstance(expr, ElementRef):
        return f"element {_child(expr.index, _LEVEL_CONCAT)} of {expr.array}", _LEVEL_ATOM
    if isinstance(expr, Negate):
        return f"-{_child(expr.operand, _LEVEL_ATOM)}", _LEVEL_UNARY
    if isinstance(expr, Binary):
        level = _BINARY_LEVEL[expr.op]
        left = _child(expr.left, level)
        right = _child(expr.right, level + 1)
        return f"{left} {expr.op.value} {right}", level
    if isinstance(expr, Comparison):
        left = _child(expr.left, _LEVEL_CONCAT)
        right = _child(expr.right, _LEVEL_CONCAT)
        return f"{left} {_RELOP_TEXT[expr.op]} {right}", _LEVEL_COMPARISON
    if isinstance(expr, Logical):
        level = _LEVEL_AND if expr.op is LogicalOp.AND else _LEVEL_OR
        left = _child(expr.left, level)
        right = _child(expr.right, level + 1)
        return f"{left} {expr.op.value} {right}", level
    raise TypeError(f"not an expression: {expr!r}")


def _child(expr: Expression, minimum: int) -> str:
    text, level = _render(expr)
    if level < minimum:
        return f"({text})"
    return text


def _lvalue(expr: Expression) -> str:
    return realize_expression(expr)


def _lines(stmt: Statement, depth: int) -> list[str]:
    pad = INDENT * depth
    if isinstance(stmt, DeclareVariable):
        text = f"Declare a variable called {stmt.name} of type {stmt.type.value}"
        if stmt.initial is not None:
            text += f" with initial value {realize_expression(stmt.initial)}"
        return [pad + text + "."]
    if isinstance(stmt, DeclareArray):
        return [
            pad
            + f"Declare an array called {stmt.name} of type "
            + f"{stmt.element_type.value} with size {stmt.size}."
        ]
    if isinstance(stmt, Assignment):
        return [pad + f"Set {_lvalue(stmt.target)} to {realize_expression(stmt.value)}."]
    if isinstance(stmt, Display):
        return [pad + f"Display {realize_expression(stmt.value)} on the screen."]
    if isinstance(stmt, Read):
        text = f"Read {_lvalue(stmt.target)} from the keyboard"
        if stmt.prompt is not None:
            text += f" with prompt {escape_string(stmt.prompt)}"
        return [pad + text + "."]
    if isinstance(stmt, If):
        lines: list[str] = []
        for position, arm in enumerate(stmt.arms):
            opener = "If" if position == 0 else "Otherwise if"
            lines.append(pad + f"{opener} {realize_expression(arm.condition)} then")
            lines.extend(_body(arm.body, depth))
        if stmt.otherwise is not None:
            lines.append(pad + "Otherwise")
            lines.extend(_body(stmt.otherwise, depth))
        lines.append(pad + "End of condition.")
        return lines
    if isinstance(stmt, RepeatWhile):
        lines = [pad + f"Repeat while {realize_expression(stmt.condition)}"]
        lines.extend(_body(stmt.body, depth))
        lines.append(pad + "End of repeat.")
        return lines
    if isinstance(stmt, RepeatTimes):
        lines = [pad + f"Repeat {realize_expression(stmt.count)} times"]
        lines.extend(_body(stmt.body, depth))
        lines.append(pad + "End of repeat.")
        return lines
    if isinstance(stmt, Select):
        lines = [pad + f"Select on {realize_expression(stmt.scrutinee)}"]
        for case in stmt.cases:
            lines.append(pad + f"When {realize_expression(case.label)} then")
            lines.extend(_body(case.body, depth))
        if stmt.other is not None:
            lines.append(pad + "When other then")
            lines.extend(_body(stmt.other, depth))
        lines.append(pad + "End of select.")
        return lines
    raise TypeError(f"not a statement: {stmt!r}")


def _body(statements: tuple[Statement, ...], depth: int) -> list[str]:
    lines: list[str] = []
    for stmt in statements:
        lines.extend(_lines(stmt, depth + 1))
    return lines


def pattern_table() -> dict[str, str]:
    """The statement-pattern table, for documentation and the service."""
    return {
        "declare-variable": "Declare a variable called <name> of type <type> [with initial value <expression>].",
        "declare-array": "Declare an array called <name> of type <type> with size <size>.",
        "assignment": "Set <target> to <expression>.",
        "display": "Display <expression> on the screen.",
        "read": "Read <target> from the keyboard [with prompt <string>].",
        "if": "If <condition> then ... [Otherwise if <condition> then ...] [Otherwise ...] End of condition.",
        "repeat-while": "Repeat while <condition> ... End of repeat.",
        "repeat-times": "Repeat <expression> times ... End of repeat.",
        "select": "Select on <expression> When <literal> then ... [When other then ...] End of select.",
    }
