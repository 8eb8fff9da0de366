"""Tree-walking interpreter with deterministic, step-bounded execution.

Numbers are finite IEEE-754 doubles; a non-finite intermediate is a
runtime error, never a stored value. Every evaluated statement or
expression node costs one step, repeat iterations cost one step each,
and data-producing operations (array allocation, concatenation) charge
in proportion to the data they create, so the step limit also bounds
memory and guarantees termination.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping

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
    LogicalOp,
    Negate,
    NumberLit,
    Read,
    Relop,
    RepeatTimes,
    RepeatWhile,
    ScalarType,
    Select,
    Span,
    Statement,
    StringLit,
    VarRef,
    render_number,
)
from .semantics import CheckedProgram, SymbolTable

Value = float | str

DEFAULT_STEP_LIMIT = 10_000_000

#: One step per this many characters of freshly built text.
_TEXT_STEP_GRAIN = 8


class RuntimeFault(Exception):
    """Raised inside the machine; surfaces as ``RunResult.runtime_error``."""

    def __init__(self, diagnostic: Diagnostic) -> None:
        super().__init__(diagnostic.message)
        self.diagnostic = diagnostic


@dataclass
class RunResult:
    outputs: list[str]
    runtime_error: Diagnostic | None
    steps_used: int

    @property
    def ok(self) -> bool:
        return self.runtime_error is None


def run(
    checked: CheckedProgram,
    inputs: Iterable[str] = (),
    step_limit: int = DEFAULT_STEP_LIMIT,
) -> RunResult:
    """Execute a checked program. Outputs made before an error are kept."""
    machine = _Machine(checked.symbols, inputs, step_limit)
    try:
        machine.prepare()
        for stmt in checked.program.statements:
            machine.execute(stmt)
    except RuntimeFault as fault:
        return RunResult(machine.outputs, fault.diagnostic, machine.steps)
    return RunResult(machine.outputs, None, machine.steps)


def eval_expression(
    expr: Expression,
    variables: Mapping[str, Value] | None = None,
    step_limit: int = DEFAULT_STEP_LIMIT,
) -> Value:
    """Evaluate one well-typed value expression; raises RuntimeFault on error."""
    machine = _Machine(SymbolTable(), (), step_limit)
    if variables:
        machine.scalars.update({name.casefold(): value for name, value in variables.items()})
    return machine.eval(expr)


def render_value(value: Value) -> str:
    return render_number(value) if isinstance(value, float) else value


class _Machine:
    def __init__(self, symbols: SymbolTable, inputs: Iterable[str], step_limit: int) -> None:
        self.symbols = symbols
        self.inputs: Iterator[str] = iter(inputs)
        self.step_limit = step_limit
        self.steps = 0
        self.outputs: list[str] = []
        self.scalars: dict[str, Value] = {}
        self.arrays: dict[str, list[Value]] = {}

    def prepare(self) -> None:
        # Hoist every declared symbol to its default so a reference whose
        # declaration sits in an unexecuted branch still has a value.
        for symbol in self.symbols:
            key = symbol.name.casefold()
            if isinstance(symbol.type, ArrayType):
                self.charge(symbol.type.size, symbol.span)
                self.arrays[key] = [_default(symbol.type.element)] * symbol.type.size
            else:
                self.scalars[key] = _default(symbol.type)

    def charge(self, amount: int, span: Span | None) -> None:
        self.steps += amount
        if self.steps > self.step_limit:
            raise RuntimeFault(
                error("R105", span, f"step limit of {self.step_limit} exceeded")
            )

    # -- statements -------------------------------------------------------

    def execute(self, stmt: Statement) -> None:
        self.charge(1, stmt.span)
        if isinstance(stmt, DeclareVariable):
            value = self.eval(stmt.initial) if stmt.initial is not None else _default(stmt.type)
            self.scalars[stmt.name.casefold()] = value
        elif isinstance(stmt, DeclareArray):
            self.charge(stmt.size, stmt.span)
            self.arrays[stmt.name.casefold()] = [_default(stmt.element_type)] * stmt.size
        elif isinstance(stmt, Assignment):
            self.store(stmt.target, self.eval(stmt.value))
        elif isinstance(stmt, Display):
            self.outputs.append(render_value(self.eval(stmt.value)))
        elif isinstance(stmt, Read):
            self.store(stmt.target, self.read_value(stmt))
        elif isinstance(stmt, If):
            for arm in stmt.arms:
                if self.truth(arm.condition):
                    self.run_block(arm.body)
                    return
            if stmt.otherwise is not None:
                self.run_block(stmt.otherwise)
        elif isinstance(stmt, RepeatWhile):
            while self.truth(stmt.condition):
                self.run_block(stmt.body)
        elif isinstance(stmt, RepeatTimes):
            span = stmt.count.span or stmt.span
            count = self.eval(stmt.count)
            assert isinstance(count, float)
            if not count.is_integer() or count < 0:
                raise RuntimeFault(
                    error(
                        "R104",
                        span,
                        f"repeat count must be a non-negative whole number, not {render_number(count)}",
                    )
                )
            for _ in range(int(count)):
                self.charge(1, stmt.span)
                self.run_block(stmt.body)
        elif isinstance(stmt, Select):
            value = self.eval(stmt.scrutinee)
            for case in stmt.cases:
                if self.eval(case.label) == value:
                    self.run_block(case.body)
                    return
            if stmt.other is not None:
                self.run_block(stmt.other)
        else:
            raise TypeError(f"not a statement: {stmt!r}")

    def run_block(self, body: tuple[Statement, ...]) -> None:
        for stmt in body:
            self.execute(stmt)

    def store(self, target: Expression, value: Value) -> None:
        if isinstance(target, VarRef):
            self.scalars[target.name.casefold()] = value
        elif isinstance(target, ElementRef):
            cells, index = self.locate(target)
            cells[index] = value
        else:
            raise TypeError(f"not an lvalue: {target!r}")

    def locate(self, ref: ElementRef) -> tuple[list[Value], int]:
        index = self.eval(ref.index)
        assert isinstance(index, float)
        cells = self.arrays[ref.array.casefold()]
        if not index.is_integer() or not (1 <= index <= len(cells)):
            raise RuntimeFault(
                error(
                    "R102",
                    ref.span,
                    f"index {render_number(index)} is outside 1..{len(cells)} "
                    f"for array '{ref.array}'",
                    ref.array,
                )
            )
        return cells, int(index) - 1

    def read_value(self, stmt: Read) -> Value:
        target_type = self.target_type(stmt.target)
        try:
            text = next(self.inputs)
        except StopIteration:
            # The input sequence ran dry; report it on the Read statement.
            raise RuntimeFault(
                error("R103", stmt.span, "no input is available for Read")
            ) from None
        if target_type is ScalarType.STRING:
            return text
        try:
            value = float(text)
        except ValueError:
            value = float("nan")
        if not math.isfinite(value):
            raise RuntimeFault(
                error("R103", stmt.span, f"input '{text.strip()}' is not a Number")
            )
        return value

    def target_type(self, target: Expression) -> ScalarType:
        if isinstance(target, VarRef):
            symbol = self.symbols.lookup(target.name)
            assert symbol is not None and isinstance(symbol.type, ScalarType)
            return symbol.type
        assert isinstance(target, ElementRef)
        symbol = self.symbols.lookup(target.array)
        assert symbol is not None and isinstance(symbol.type, ArrayType)
        return symbol.type.element

    # -- expressions ------------------------------------------------------

    def eval(self, expr: Expression) -> Value:
        self.charge(1, expr.span)
        if isinstance(expr, NumberLit):
            return expr.value
        if isinstance(expr, StringLit):
            return expr.value
        if isinstance(expr, VarRef):
            return self.scalars[expr.name.casefold()]
        if isinstance(expr, ElementRef):
            cells, index = self.locate(expr)
            return cells[index]
        if isinstance(expr, Negate):
            operand = self.eval(expr.operand)
            assert isinstance(operand, float)
            return -operand
        if isinstance(expr, Binary):
            return self.binary(expr)
        raise TypeError(f"conditions are guard-only, got {expr!r}")

    def binary(self, expr: Binary) -> Value:
        left = self.eval(expr.left)
        right = self.eval(expr.right)
        if expr.op is BinaryOp.CONCAT:
            text = render_value(left) + render_value(right)
            self.charge(len(text) // _TEXT_STEP_GRAIN, expr.span)
            return text
        assert isinstance(left, float) and isinstance(right, float)
        if expr.op is BinaryOp.ADD:
            result = left + right
        elif expr.op is BinaryOp.SUB:
            result = left - right
        elif expr.op is BinaryOp.MUL:
            result = left * right
        elif expr.op is BinaryOp.DIV:
            if right == 0.0:
                raise RuntimeFault(error("R101", expr.span, "division by zero"))
            result = left / right
        else:
            if right == 0.0:
                raise RuntimeFault(error("R101", expr.span, "remainder by zero"))
            # Floating remainder keeps the dividend's sign.
            result = math.fmod(left, right)
        if not math.isfinite(result):
            raise RuntimeFault(
                error("R101", expr.span, "arithmetic result is not a finite Number")
            )
        return result

    def truth(self, condition: Expression) -> bool:
        self.charge(1, condition.span)
        if isinstance(condition, Logical):
            if condition.op is LogicalOp.AND:
                return self.truth(condition.left) and self.truth(condition.right)
            return self.truth(condition.left) or self.truth(condition.right)
        assert isinstance(condition, Comparison), f"not a condition: {condition!r}"
        left = self.eval(condition.left)
        right = self.eval(condition.right)
        if condition.op is Relop.EQUAL:
            return left == right
        if condition.op is Relop.NOT_EQUAL:
            return left != right
        assert isinstance(left, float) and isinstance(right, float)
        if condition.op is Relop.GREATER:
            return left > right
        if condition.op is Relop.SMALLER:
            return left < right
        if condition.op is Relop.GREATER_EQUAL:
            return left >= right
        return left <= right


def _default(tag: ScalarType) -> Value:
    return 0.0 if tag is ScalarType.NUMBER else ""
