"""Recursive-descent parser: tokens to statement AST.

Predictive except for one sanctioned backtrack point: a ``(`` in
condition position is first tried as a grouped condition and falls back
to a parenthesized arithmetic expression. Statement-level errors become
E005 diagnostics with skip-to-the-next-period recovery, so parsing is
total over arbitrary token sequences and always returns a (possibly
partial) program.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass

from .diagnostics import Diagnostic, error
from .lexer import string_value
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
    IfArm,
    Logical,
    LogicalOp,
    LValue,
    Negate,
    NumberLit,
    Program,
    Read,
    Relop,
    RepeatTimes,
    RepeatWhile,
    ScalarType,
    Select,
    SelectCase,
    Span,
    Statement,
    StringLit,
    Token,
    TokenKind,
    VarRef,
    span_merge,
)

#: Nesting bound for blocks and parentheses. Inputs deeper than this get a
#: diagnostic instead of exhausting the interpreter stack; the totality
#: guarantee (never panic) takes priority over unbounded nesting.
MAX_DEPTH = 150

_ADDITIVE = {"+": BinaryOp.ADD, "-": BinaryOp.SUB}
_MULTIPLICATIVE = {"*": BinaryOp.MUL, "/": BinaryOp.DIV, "%": BinaryOp.REM}


@dataclass(frozen=True)
class ParseOutput:
    program: Program
    diagnostics: tuple[Diagnostic, ...]


def parse_program(tokens: tuple[Token, ...] | list[Token]) -> ParseOutput:
    parser = _Parser(tokens)
    statements = parser.statements(frozenset())
    span = None
    if statements and statements[0].span is not None and statements[-1].span is not None:
        span = span_merge(statements[0].span, statements[-1].span)
    return ParseOutput(Program(statements, span=span), tuple(parser.diagnostics))


def parse_condition(
    tokens: tuple[Token, ...] | list[Token],
) -> tuple[Expression | None, tuple[Diagnostic, ...]]:
    """Parse a complete condition fragment (all tokens must be consumed)."""
    return _parse_fragment(tokens, "condition")


def parse_expression(
    tokens: tuple[Token, ...] | list[Token],
) -> tuple[Expression | None, tuple[Diagnostic, ...]]:
    """Parse a complete value-expression fragment."""
    return _parse_fragment(tokens, "expression")


def _parse_fragment(
    tokens: tuple[Token, ...] | list[Token], what: str
) -> tuple[Expression | None, tuple[Diagnostic, ...]]:
    parser = _Parser(tokens)
    try:
        node = parser.condition() if what == "condition" else parser.expression()
        leftover = parser.peek()
        if leftover is not None:
            raise _ParseError(
                error("E005", leftover.span, f"unexpected text after the {what}")
            )
        return node, ()
    except _ParseError as err:
        parser.diagnostics.append(err.diagnostic)
        return None, tuple(parser.diagnostics)


class _ParseError(Exception):
    def __init__(self, diagnostic: Diagnostic) -> None:
        super().__init__(diagnostic.message)
        self.diagnostic = diagnostic


class _Parser:
    def __init__(self, tokens: tuple[Token, ...] | list[Token]) -> None:
        self.tokens = tuple(tokens)
        self.pos = 0
        self.depth = 0
        self.diagnostics: list[Diagnostic] = []

    # -- token access -----------------------------------------------------

    def peek(self, ahead: int = 0) -> Token | None:
        index = self.pos + ahead
        return self.tokens[index] if index < len(self.tokens) else None

    def peek_word(self, ahead: int = 0) -> str | None:
        tok = self.peek(ahead)
        if tok is not None and tok.kind is TokenKind.WORD:
            return tok.folded()
        return None

    def advance(self) -> Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def here(self) -> Span:
        tok = self.peek()
        if tok is not None:
            return tok.span
        if self.tokens:
            last = self.tokens[-1]
            end = last.span.end
            return Span(end, end, last.span.line, last.span.column + len(last.lexeme))
        return Span(0, 0, 1, 1)

    def fail(self, message: str, span: Span | None = None) -> _ParseError:
        return _ParseError(error("E005", span or self.here(), message))

    def expect(self, kind: TokenKind, message: str) -> Token:
        tok = self.peek()
        if tok is None or tok.kind is not kind:
            raise self.fail(message)
        return self.advance()

    def expect_word(self, word: str) -> Token:
        tok = self.peek()
        if tok is None or tok.kind is not TokenKind.WORD or tok.folded() != word:
            raise self.fail(f"expected '{word}'")
        return self.advance()

    def accept_word(self, word: str) -> Token | None:
        tok = self.peek()
        if tok is not None and tok.kind is TokenKind.WORD and tok.folded() == word:
            return self.advance()
        return None

    def _push(self) -> None:
        self.depth += 1
        if self.depth > MAX_DEPTH:
            raise self.fail("nesting is too deep")

    # -- statements -------------------------------------------------------

    def statements(self, until: frozenset[str]) -> tuple[Statement, ...]:
        """Parse statements until EOF or a block-terminator word in ``until``."""
        out: list[Statement] = []
        while True:
            tok = self.peek()
            if tok is None:
                break
            if tok.kind is TokenKind.WORD and tok.folded() in until:
                break
            try:
                out.append(self.statement())
            except _ParseError as err:
                self.diagnostics.append(err.diagnostic)
                self._skip_to_period()
        return tuple(out)

    def statement(self) -> Statement:
        self._push()
        try:
            word = self.peek_word()
            if word == "declare":
                return self._declare()
            if word == "set":
                return self._assignment()
            if word == "display":
                return self._display()
            if word == "read":
                return self._read()
            if word == "if":
                return self._if()
            if word == "repeat":
                return self._repeat()
            if word == "select":
                return self._select()
            raise self.fail("expected a statement")
        finally:
            self.depth -= 1

    def _skip_to_period(self) -> None:
        while True:
            tok = self.peek()
            if tok is None:
                return
            self.advance()
            if tok.kind is TokenKind.PERIOD:
                return

    def _period(self) -> Token:
        return self.expect(TokenKind.PERIOD, "expected '.' to end the statement")

    def _declare(self) -> Statement:
        kw = self.expect_word("declare")
        if self.accept_word("a"):
            self.expect_word("variable")
            return self._declare_variable(kw)
        if self.accept_word("an"):
            self.expect_word("array")
            return self._declare_array(kw)
        raise self.fail("expected 'a variable' or 'an array' after 'Declare'")

    def _declare_variable(self, kw: Token) -> DeclareVariable:
        self.expect_word("called")
        name = self.expect(TokenKind.WORD, "expected a variable name")
        self.expect_word("of")
        self.expect_word("type")
        declared = self._type()
        initial: Expression | None = None
        if self.accept_word("with"):
            self.expect_word("initial")
            self.expect_word("value")
            initial = self.expression()
        period = self._period()
        return DeclareVariable(
            name.lexeme,
            declared,
            initial,
            span=span_merge(kw.span, period.span),
            name_span=name.span,
        )

    def _declare_array(self, kw: Token) -> DeclareArray:
        self.expect_word("called")
        name = self.expect(TokenKind.WORD, "expected an array name")
        self.expect_word("of")
        self.expect_word("type")
        element = self._type()
        self.expect_word("with")
        self.expect_word("size")
        size_tok = self.expect(TokenKind.NUMBER, "expected the array size")
        if "." in size_tok.lexeme or int(size_tok.lexeme) < 1:
            raise self.fail("array size must be a positive whole number", size_tok.span)
        period = self._period()
        return DeclareArray(
            name.lexeme,
            element,
            int(size_tok.lexeme),
            span=span_merge(kw.span, period.span),
            name_span=name.span,
        )

    def _type(self) -> ScalarType:
        if self.accept_word("number"):
            return ScalarType.NUMBER
        if self.accept_word("string"):
            return ScalarType.STRING
        raise self.fail("expected a type (Number or String)")

    def _assignment(self) -> Assignment:
        kw = self.expect_word("set")
        target = self._lvalue()
        self.expect_word("to")
        value = self.expression()
        period = self._period()
        return Assignment(target, value, span=span_merge(kw.span, period.span))

    def _display(self) -> Display:
        kw = self.expect_word("display")
        value = self.expression()
        self.expect_word("on")
        self.expect_word("the")
        self.expect_word("screen")
        period = self._period()
        return Display(value, span=span_merge(kw.span, period.span))

    def _read(self) -> Read:
        kw = self.expect_word("read")
        target = self._lvalue()
        self.expect_word("from")
        self.expect_word("the")
        self.expect_word("keyboard")
        prompt: str | None = None
        if self.accept_word("with"):
            self.expect_word("prompt")
            text = self.expect(TokenKind.STRING, "expected a prompt string")
            prompt = string_value(text.lexeme)
        period = self._period()
        return Read(target, prompt, span=span_merge(kw.span, period.span))

    def _if(self) -> If:
        kw = self.expect_word("if")
        condition = self.condition()
        self.expect_word("then")
        arms = [IfArm(condition, self.statements(frozenset({"otherwise", "end"})))]
        otherwise: tuple[Statement, ...] | None = None
        while self.accept_word("otherwise"):
            if self.accept_word("if"):
                chained = self.condition()
                self.expect_word("then")
                arms.append(
                    IfArm(chained, self.statements(frozenset({"otherwise", "end"})))
                )
            else:
                otherwise = self.statements(frozenset({"otherwise", "end"}))
                if self.peek_word() == "otherwise":
                    raise self.fail("the Otherwise block must come last")
                break
        self.expect_word("end")
        self.expect_word("of")
        self.expect_word("condition")
        period = self._period()
        return If(tuple(arms), otherwise, span=span_merge(kw.span, period.span))

    def _repeat(self) -> Statement:
        kw = self.expect_word("repeat")
        if self.accept_word("while"):
            condition = self.condition()
            body = self.statements(frozenset({"end"}))
            period = self._end_of("repeat")
            return RepeatWhile(condition, body, span=span_merge(kw.span, period.span))
        count = self.expression()
        self.expect_word("times")
        body = self.statements(frozenset({"end"}))
        period = self._end_of("repeat")
        return RepeatTimes(count, body, span=span_merge(kw.span, period.span))

    def _end_of(self, closer: str) -> Token:
        self.expect_word("end")
        self.expect_word("of")
        self.expect_word(closer)
        return self._period()

    def _select(self) -> Select:
        kw = self.expect_word("select")
        self.expect_word("on")
        scrutinee = self.expression()
        cases: list[SelectCase] = []
        other: tuple[Statement, ...] | None = None
        while self.peek_word() == "when":
            self.advance()
            if self.accept_word("other"):
                self.expect_word("then")
                other = self.statements(frozenset({"when", "end"}))
                if self.peek_word() == "when":
                    raise self.fail("'When other' must be the last case")
                break
            label = self._case_label()
            self.expect_word("then")
            cases.append(SelectCase(label, self.statements(frozenset({"when", "end"}))))
        if not cases:
            raise self.fail("Select needs at least one When case")
        period = self._end_of("select")
        return Select(scrutinee, tuple(cases), other, span=span_merge(kw.span, period.span))

    def _case_label(self) -> NumberLit | StringLit:
        tok = self.peek()
        if tok is not None and tok.kind is TokenKind.OPERATOR and tok.lexeme == "-":
            minus = self.advance()
            number = self.expect(TokenKind.NUMBER, "expected a number after '-'")
            return NumberLit(
                -self._number_value(number), span=span_merge(minus.span, number.span)
            )
        if tok is not None and tok.kind is TokenKind.NUMBER:
            self.advance()
            return NumberLit(self._number_value(tok), span=tok.span)
        if tok is not None and tok.kind is TokenKind.STRING:
            self.advance()
            return StringLit(string_value(tok.lexeme), span=tok.span)
        raise self.fail("expected a literal case label")

    # -- conditions -------------------------------------------------------

    def condition(self) -> Expression:
        self._push()
        try:
            left = self._andcond()
            while self.accept_word("or"):
                right = self._andcond()
                left = Logical(
                    LogicalOp.OR, left, right, span=_merge_optional(left.span, right.span)
                )
            return left
        finally:
            self.depth -= 1

    def _andcond(self) -> Expression:
        left = self._comparison()
        while True:
            # 'And' might instead begin 'and' as a stray word; only the
            # connective reading exists, so consume unconditionally.
            if not self.accept_word("and"):
                return left
            right = self._comparison()
            left = Logical(
                LogicalOp.AND, left, right, span=_merge_optional(left.span, right.span)
            )

    def _comparison(self) -> Expression:
        tok = self.peek()
        if tok is not None and tok.kind is TokenKind.LPAREN:
            # The single backtrack point: try '( condition )', and on any
            # failure re-read the parens as an arithmetic grouping.
            state = (self.pos, len(self.diagnostics))
            try:
                self.advance()
                self._push()
                try:
                    grouped = self.condition()
                finally:
                    self.depth -= 1
                self.expect(TokenKind.RPAREN, "expected ')'")
                return grouped
            except _ParseError:
                self.pos, kept = state
                del self.diagnostics[kept:]
        left = self.expression()
        op = self._relop()
        right = self.expression()
        return Comparison(op, left, right, span=_merge_optional(left.span, right.span))

    def _relop(self) -> Relop:
        self.expect_word("is")
        if self.accept_word("greater"):
            return self._ordering(Relop.GREATER, Relop.GREATER_EQUAL)
        if self.accept_word("smaller"):
            return self._ordering(Relop.SMALLER, Relop.SMALLER_EQUAL)
        if self.accept_word("not"):
            self.expect_word("equal")
            self.accept_word("to")
            return Relop.NOT_EQUAL
        if self.accept_word("equal"):
            self.accept_word("to")
            return Relop.EQUAL
        raise self.fail("expected a comparison like 'Greater than' or 'Equal to'")

    def _ordering(self, strict: Relop, or_equal: Relop) -> Relop:
        # 'Greater or Equal' needs two words of lookahead: a bare 'or'
        # here would otherwise read as the condition connective.
        if self.peek_word() == "or" and self.peek_word(1) == "equal":
            self.advance()
            self.advance()
            self.accept_word("to")
            return or_equal
        self.accept_word("than")
        return strict

    # -- value expressions ------------------------------------------------

    def expression(self) -> Expression:
        self._push()
        try:
            left = self._additive()
            while True:
                tok = self.peek()
                if tok is None or tok.kind is not TokenKind.AMPERSAND:
                    return left
                self.advance()
                right = self._additive()
                left = Binary(
                    BinaryOp.CONCAT,
                    left,
                    right,
                    span=_merge_optional(left.span, right.span),
                )
        finally:
            self.depth -= 1

    def _additive(self) -> Expression:
        left = self._term()
        while True:
            tok = self.peek()
            if tok is None or tok.kind is not TokenKind.OPERATOR or tok.lexeme not in _ADDITIVE:
                return left
            self.advance()
            right = self._term()
            left = Binary(
                _ADDITIVE[tok.lexeme], left, right, span=_merge_optional(left.span, right.span)
            )

    def _term(self) -> Expression:
        left = self._unary()
        while True:
            tok = self.peek()
            if (
                tok is None
                or tok.kind is not TokenKind.OPERATOR
                or tok.lexeme not in _MULTIPLICATIVE
            ):
                return left
            self.advance()
            right = self._unary()
            left = Binary(
                _MULTIPLICATIVE[tok.lexeme],
                left,
                right,
                span=_merge_optional(left.span, right.span),
            )

    def _unary(self) -> Expression:
        tok = self.peek()
        if tok is not None and tok.kind is TokenKind.OPERATOR and tok.lexeme == "-":
            minus = self.advance()
            operand = self._primary()
            span = _merge_optional(minus.span, operand.span)
            if isinstance(operand, NumberLit):
                # Fold negated literals so '-5' parses to the same node the
                # realizer prints it from.
                return NumberLit(-operand.value, span=span)
            return Negate(operand, span=span)
        return self._primary()

    def _primary(self) -> Expression:
        self._push()
        try:
            tok = self.peek()
            if tok is None:
                raise self.fail("expected an expression")
            if tok.kind is TokenKind.NUMBER:
                self.advance()
                return NumberLit(self._number_value(tok), span=tok.span)
            if tok.kind is TokenKind.STRING:
                self.advance()
                return StringLit(string_value(tok.lexeme), span=tok.span)
            if tok.kind is TokenKind.LPAREN:
                open_paren = self.advance()
                inner = self.expression()
                close_paren = self.expect(TokenKind.RPAREN, "expected ')'")
                # Grouping is not a node; widen the span to cover the parens.
                return dataclasses.replace(
                    inner, span=span_merge(open_paren.span, close_paren.span)
                )
            if tok.kind is TokenKind.WORD:
                if tok.folded() == "element":
                    return self._element()
                self.advance()
                return VarRef(tok.lexeme, span=tok.span)
            raise self.fail("expected an expression")
        finally:
            self.depth -= 1

    def _element(self) -> ElementRef:
        kw = self.expect_word("element")
        index = self.expression()
        self.expect_word("of")
        name = self.expect(TokenKind.WORD, "expected an array name")
        return ElementRef(index, name.lexeme, span=span_merge(kw.span, name.span))

    def _lvalue(self) -> LValue:
        tok = self.peek()
        if tok is not None and tok.kind is TokenKind.WORD:
            if tok.folded() == "element":
                return self._element()
            self.advance()
            return VarRef(tok.lexeme, span=tok.span)
        raise self.fail("expected a variable or array element")

    def _number_value(self, tok: Token) -> float:
        value = float(tok.lexeme)
        if value == float("inf"):
            raise self.fail("number literal is too large", tok.span)
        return value


def _merge_optional(a: Span | None, b: Span | None) -> Span | None:
    if a is None:
        return b
    if b is None:
        return a
    return span_merge(a, b)
