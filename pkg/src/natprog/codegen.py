"""Code generator: checked programs to a single C#-compatible source file.

The output embeds a small fixed runtime (number formatting, checked
arithmetic, 1-based index checks, keyboard reads) so the compiled
program matches the interpreter's observable behavior: identical output
rendering, identical runtime error codes on stderr. Emission is
deterministic byte for byte: LF line endings, four-space indents, UTF-8.
"""

from __future__ import annotations

from dataclasses import dataclass

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
    Statement,
    StringLit,
    VarRef,
    render_number,
)
from .semantics import CheckedProgram

#: Largest double magnitude that is safe to print as a bare C# int literal.
_INT_LITERAL_LIMIT = 2.0**31

_COMPARISON_TEXT = {
    Relop.GREATER: ">",
    Relop.SMALLER: "<",
    Relop.GREATER_EQUAL: ">=",
    Relop.SMALLER_EQUAL: "<=",
    Relop.EQUAL: "==",
    Relop.NOT_EQUAL: "!=",
}

_ARITHMETIC_HELPER = {
    BinaryOp.ADD: "Add",
    BinaryOp.SUB: "Sub",
    BinaryOp.MUL: "Mul",
    BinaryOp.DIV: "Div",
    BinaryOp.REM: "Rem",
}

# Precedence levels for the emitted text (arithmetic is helper calls, so
# only concatenation, comparisons, and logicals need parenthesization).
_LEVEL_OR = 1
_LEVEL_AND = 2
_LEVEL_COMPARISON = 3
_LEVEL_CONCAT = 4
_LEVEL_ATOM = 5


@dataclass(frozen=True)
class TargetUnit:
    """One emitted compilation unit."""

    source: str
    entry_point: str = "Main"


def emit_target(checked: CheckedProgram) -> TargetUnit:
    if not isinstance(checked, CheckedProgram):
        raise ValueError("emit_target needs the CheckedProgram of a clean analysis")
    return TargetUnit(_Emitter(checked).emit())


class _Emitter:
    def __init__(self, checked: CheckedProgram) -> None:
        self.checked = checked
        self.lines: list[str] = []
        self.depth = 0
        self.temps = 0

    # -- line plumbing ------------------------------------------------------

    def put(self, text: str = "") -> None:
        self.lines.append("    " * self.depth + text if text else "")

    def open_brace(self) -> None:
        self.put("{")
        self.depth += 1

    def close_brace(self, suffix: str = "") -> None:
        self.depth -= 1
        self.put("}" + suffix)

    def emit(self) -> str:
        self.put("// Generated code. Edit the natural-language source instead.")
        self.put("using System;")
        self.put("using System.Globalization;")
        self.put()
        self.put("public static class Program")
        self.open_brace()
        self._fields()
        self.put("public static void Main()")
        self.open_brace()
        self.put("try")
        self.open_brace()
        self.put("Run();")
        self.close_brace()
        self.put("catch (RuntimeFault fault)")
        self.open_brace()
        self.put('Console.Error.WriteLine("ERROR " + fault.Code + ": " + fault.Message);')
        self.put("Environment.Exit(1);")
        self.close_brace()
        self.close_brace()
        self.put()
        self.put("private static void Run()")
        self.open_brace()
        for stmt in self.checked.program.statements:
            self.statement(stmt)
        self.close_brace()
        self.put()
        self._runtime()
        self.close_brace()
        return "\n".join(self.lines) + "\n"

    def _fields(self) -> None:
        # Declarations hoist to fields with defaults; executing a
        # declaration (re)initializes, mirroring the interpreter.
        wrote = False
        for symbol in self.checked.symbols:
            name = _var(symbol.name)
            if isinstance(symbol.type, ArrayType):
                if symbol.type.element is ScalarType.NUMBER:
                    self.put(f"private static double[] {name} = new double[{symbol.type.size}];")
                else:
                    self.put(f"private static string[] {name} = NewTextArray({symbol.type.size});")
            elif symbol.type is ScalarType.NUMBER:
                self.put(f"private static double {name} = 0;")
            else:
                self.put(f'private static string {name} = "";')
            wrote = True
        if wrote:
            self.put()

    # -- statements ---------------------------------------------------------

    def statement(self, stmt: Statement) -> None:
        if isinstance(stmt, DeclareVariable):
            if stmt.initial is not None:
                value = self.value(stmt.initial)
            elif stmt.type is ScalarType.NUMBER:
                value = "0"
            else:
                value = '""'
            self.put(f"{self._declared(stmt.name)} = {value};")
        elif isinstance(stmt, DeclareArray):
            name = self._declared(stmt.name)
            if stmt.element_type is ScalarType.NUMBER:
                self.put(f"{name} = new double[{stmt.size}];")
            else:
                self.put(f"{name} = NewTextArray({stmt.size});")
        elif isinstance(stmt, Assignment):
            self.put(f"{self.lvalue(stmt.target)} = {self.value(stmt.value)};")
        elif isinstance(stmt, Display):
            if self.checked.type_of(stmt.value) is ScalarType.NUMBER:
                self.put(f"Console.WriteLine(FormatNumber({self.value(stmt.value)}));")
            else:
                self.put(f"Console.WriteLine({self.value(stmt.value)});")
        elif isinstance(stmt, Read):
            reader = (
                "ReadNumber()"
                if self.checked.type_of(stmt.target) is ScalarType.NUMBER
                else "ReadText()"
            )
            self.put(f"{self.lvalue(stmt.target)} = {reader};")
        elif isinstance(stmt, If):
            for position, arm in enumerate(stmt.arms):
                keyword = "if" if position == 0 else "else if"
                self.put(f"{keyword} ({self.condition(arm.condition)})")
                self.block(arm.body)
            if stmt.otherwise is not None:
                self.put("else")
                self.block(stmt.otherwise)
        elif isinstance(stmt, RepeatWhile):
            self.put(f"while ({self.condition(stmt.condition)})")
            self.block(stmt.body)
        elif isinstance(stmt, RepeatTimes):
            slot = self._temp()
            self.put(
                f"for (long step{slot} = 0, limit{slot} = RepeatCount({self.value(stmt.count)}); "
                f"step{slot} < limit{slot}; step{slot}++)"
            )
            self.block(stmt.body)
        elif isinstance(stmt, Select):
            slot = self._temp()
            kind = (
                "double"
                if self.checked.type_of(stmt.scrutinee) is ScalarType.NUMBER
                else "string"
            )
            self.open_brace()
            self.put(f"{kind} pick{slot} = {self.value(stmt.scrutinee)};")
            for position, case in enumerate(stmt.cases):
                keyword = "if" if position == 0 else "else if"
                self.put(f"{keyword} (pick{slot} == {self.value(case.label)})")
                self.block(case.body)
            if stmt.other is not None:
                self.put("else")
                self.block(stmt.other)
            self.close_brace()
        else:
            raise TypeError(f"not a statement: {stmt!r}")

    def block(self, body: tuple[Statement, ...]) -> None:
        self.open_brace()
        for stmt in body:
            self.statement(stmt)
        self.close_brace()

    def _temp(self) -> int:
        self.temps += 1
        return self.temps

    def _declared(self, name: str) -> str:
        symbol = self.checked.symbols.lookup(name)
        assert symbol is not None
        return _var(symbol.name)

    # -- expressions --------------------------------------------------------

    def value(self, expr: Expression) -> str:
        text, _ = self._render(expr)
        return text

    def lvalue(self, target: Expression) -> str:
        if isinstance(target, VarRef):
            return self._declared(target.name)
        assert isinstance(target, ElementRef)
        symbol = self.checked.symbols.lookup(target.array)
        assert symbol is not None and isinstance(symbol.type, ArrayType)
        return (
            f"{_var(symbol.name)}[Index({self.value(target.index)}, "
            f"{symbol.type.size}, {_string(symbol.name)})]"
        )

    def condition(self, expr: Expression) -> str:
        text, _ = self._render_condition(expr)
        return text

    def _render_condition(self, expr: Expression) -> tuple[str, int]:
        if isinstance(expr, Logical):
            level = _LEVEL_AND if expr.op is LogicalOp.AND else _LEVEL_OR
            operator = "&&" if expr.op is LogicalOp.AND else "||"
            left = self._condition_child(expr.left, level)
            right = self._condition_child(expr.right, level + 1)
            return f"{left} {operator} {right}", level
        assert isinstance(expr, Comparison)
        left = self.value(expr.left)
        right = self.value(expr.right)
        return f"{left} {_COMPARISON_TEXT[expr.op]} {right}", _LEVEL_COMPARISON

    def _condition_child(self, expr: Expression, minimum: int) -> str:
        text, level = self._render_condition(expr)
        if level < minimum:
            return f"({text})"
        return text

    def _render(self, expr: Expression) -> tuple[str, int]:
        if isinstance(expr, NumberLit):
            return _number_literal(expr.value), _LEVEL_ATOM
        if isinstance(expr, StringLit):
            return _string(expr.value), _LEVEL_ATOM
        if isinstance(expr, (VarRef, ElementRef)):
            return self.lvalue(expr), _LEVEL_ATOM
        if isinstance(expr, Negate):
            operand, _ = self._render(expr.operand)
            return f"-{operand}", _LEVEL_ATOM
        if isinstance(expr, Binary):
            if expr.op is BinaryOp.CONCAT:
                left = self._concat_operand(expr.left, _LEVEL_CONCAT)
                right = self._concat_operand(expr.right, _LEVEL_CONCAT + 1)
                return f"{left} + {right}", _LEVEL_CONCAT
            helper = _ARITHMETIC_HELPER[expr.op]
            return f"{helper}({self.value(expr.left)}, {self.value(expr.right)})", _LEVEL_ATOM
        raise TypeError(f"conditions are guard-only, got {expr!r}")

    def _concat_operand(self, expr: Expression, minimum: int) -> str:
        text, level = self._render(expr)
        if self.checked.type_of(expr) is ScalarType.NUMBER:
            return f"FormatNumber({text})"
        if level < minimum:
            return f"({text})"
        return text

    # -- fixed runtime --------------------------------------------------------

    def _runtime(self) -> None:
        for line in _RUNTIME.splitlines():
            if line:
                self.put(line)
            else:
                self.put()


def _var(name: str) -> str:
    # Prefixing keeps user names clear of C# keywords and the runtime.
    return f"v_{name}"


def _number_literal(value: float) -> str:
    text = render_number(value)
    if text == "-0":
        # An int literal would lose the sign of negative zero.
        return "-0.0"
    if "." not in text and abs(value) >= _INT_LITERAL_LIMIT:
        return text + ".0"
    return text


def _string(value: str) -> str:
    out = ['"']
    for ch in value:
        if ch == "\\":
            out.append("\\\\")
        elif ch == '"':
            out.append('\\"')
        elif ch == "\n":
            out.append("\\n")
        elif ch == "\r":
            out.append("\\r")
        elif ch == "\t":
            out.append("\\t")
        elif ord(ch) < 0x20:
            out.append(f"\\u{ord(ch):04x}")
        else:
            out.append(ch)
    out.append('"')
    return "".join(out)


_RUNTIME = """
private sealed class RuntimeFault : Exception
{
    public readonly string Code;

    public RuntimeFault(string code, string message) : base(message)
    {
        Code = code;
    }
}

private static string FormatNumber(double value)
{
    string text = value.ToString("R", CultureInfo.InvariantCulture);
    int mark = text.IndexOf('E');
    if (mark < 0)
    {
        return text;
    }
    string head = text.Substring(0, mark);
    int exponent = int.Parse(text.Substring(mark + 1), CultureInfo.InvariantCulture);
    string sign = "";
    if (head.StartsWith("-"))
    {
        sign = "-";
        head = head.Substring(1);
    }
    int point = head.IndexOf('.');
    string digits = head.Replace(".", "");
    if (point < 0)
    {
        point = head.Length;
    }
    point += exponent;
    if (point <= 0)
    {
        return sign + "0." + new string('0', -point) + digits;
    }
    if (point >= digits.Length)
    {
        return sign + digits + new string('0', point - digits.Length);
    }
    return sign + digits.Substring(0, point) + "." + digits.Substring(point);
}

private static double Arith(double value)
{
    if (double.IsNaN(value) || double.IsInfinity(value))
    {
        throw new RuntimeFault("R101", "arithmetic result is not a finite Number");
    }
    return value;
}

private static double Add(double left, double right)
{
    return Arith(left + right);
}

private static double Sub(double left, double right)
{
    return Arith(left - right);
}

private static double Mul(double left, double right)
{
    return Arith(left * right);
}

private static double Div(double left, double right)
{
    if (right == 0.0)
    {
        throw new RuntimeFault("R101", "division by zero");
    }
    return Arith(left / right);
}

private static double Rem(double left, double right)
{
    if (right == 0.0)
    {
        throw new RuntimeFault("R101", "remainder by zero");
    }
    return Arith(left % right);
}

private static int Index(double index, int size, string arrayName)
{
    if (index != Math.Floor(index) || index < 1.0 || index > size)
    {
        throw new RuntimeFault(
            "R102",
            "index " + FormatNumber(index) + " is outside 1.." + size + " for array '" + arrayName + "'");
    }
    return (int)index - 1;
}

private static long RepeatCount(double count)
{
    if (count != Math.Floor(count) || count < 0.0)
    {
        throw new RuntimeFault(
            "R104",
            "repeat count must be a non-negative whole number, not " + FormatNumber(count));
    }
    return (long)count;
}

private static string ReadText()
{
    string line = Console.ReadLine();
    if (line == null)
    {
        throw new RuntimeFault("R103", "no input is available for Read");
    }
    return line;
}

private static double ReadNumber()
{
    string line = ReadText();
    double value;
    bool parsed = double.TryParse(
        line.Trim(), NumberStyles.Float, CultureInfo.InvariantCulture, out value);
    if (!parsed || double.IsNaN(value) || double.IsInfinity(value))
    {
        throw new RuntimeFault("R103", "input '" + line.Trim() + "' is not a Number");
    }
    return value;
}

private static string[] NewTextArray(int size)
{
    string[] cells = new string[size];
    for (int i = 0; i < size; i++)
    {
        cells[i] = "";
    }
    return cells;
}
""".strip("\n")
