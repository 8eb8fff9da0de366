"""Lexical analyzer: source text to tokens with exact byte spans.

Lexing is total. Malformed fragments (stray characters, unterminated
strings, bad escapes) produce E005 diagnostics and are skipped, never
exceptions, so arbitrary input is safe. Concatenating the emitted token
lexemes with the source text between their spans reproduces the input
byte for byte; for diagnostic-free input the gaps are pure whitespace.
"""

from __future__ import annotations

from dataclasses import dataclass

from .diagnostics import Diagnostic, error
from .model import Span, Token, TokenKind

_OPERATORS = frozenset("+-*/%")
_ESCAPES = {'"': '"', "\\": "\\", "n": "\n"}


@dataclass(frozen=True)
class LexOutput:
    tokens: tuple[Token, ...]
    diagnostics: tuple[Diagnostic, ...]


def tokenize(source: str | bytes) -> LexOutput:
    """Scan ``source`` into tokens. Bytes are decoded as UTF-8, lossily."""
    if isinstance(source, bytes):
        source = source.decode("utf-8", errors="replace")
    return _Scanner(source).scan()


def string_value(lexeme: str) -> str:
    """Decode a StringLiteral lexeme (with quotes) to its text value.

    Lenient: an unknown escape, already reported by the scanner, decodes
    to the escaped character itself.
    """
    out: list[str] = []
    i = 1
    stop = len(lexeme) - 1
    while i < stop:
        ch = lexeme[i]
        if ch == "\\" and i + 1 < stop:
            out.append(_ESCAPES.get(lexeme[i + 1], lexeme[i + 1]))
            i += 2
        else:
            out.append(ch)
            i += 1
    return "".join(out)


def escape_string(value: str) -> str:
    """Quote and escape a text value as a StringLiteral lexeme."""
    body = value.replace("\\", "\\\\").replace('"', '\\"').replace("\n", "\\n")
    return f'"{body}"'


class _Scanner:
    def __init__(self, source: str) -> None:
        self.source = source
        self.pos = 0
        self.line = 1
        self.column = 1
        self.tokens: list[Token] = []
        self.diagnostics: list[Diagnostic] = []
        # Byte offsets equal character offsets for ASCII input; otherwise
        # precompute a prefix-sum table once.
        if source.isascii():
            self._bytes: list[int] | None = None
        else:
            table = [0] * (len(source) + 1)
            total = 0
            for i, ch in enumerate(source):
                total += len(ch.encode("utf-8"))
                table[i + 1] = total
            self._bytes = table

    def _byte_at(self, pos: int) -> int:
        return pos if self._bytes is None else self._bytes[pos]

    def scan(self) -> LexOutput:
        src = self.source
        n = len(src)
        while self.pos < n:
            ch = src[self.pos]
            if ch.isspace():
                self._advance(1)
            elif ch.isdigit():
                self._number()
            elif ch.isalpha():
                self._word()
            elif ch == '"':
                self._string()
            elif ch in _OPERATORS:
                self._single(TokenKind.OPERATOR)
            elif ch == "(":
                self._single(TokenKind.LPAREN)
            elif ch == ")":
                self._single(TokenKind.RPAREN)
            elif ch == "&":
                self._single(TokenKind.AMPERSAND)
            elif ch == ".":
                self._single(TokenKind.PERIOD)
            else:
                self._stray()
        return LexOutput(tuple(self.tokens), tuple(self.diagnostics))

    # -- movement ---------------------------------------------------------

    def _advance(self, count: int) -> None:
        src = self.source
        for _ in range(count):
            if src[self.pos] == "\n":
                self.line += 1
                self.column = 1
            else:
                self.column += 1
            self.pos += 1

    def _mark(self) -> tuple[int, int, int]:
        return self.pos, self.line, self.column

    def _span_from(self, mark: tuple[int, int, int]) -> Span:
        start, line, column = mark
        return Span(self._byte_at(start), self._byte_at(self.pos), line, column)

    def _emit(self, kind: TokenKind, mark: tuple[int, int, int]) -> None:
        start = mark[0]
        self.tokens.append(Token(kind, self.source[start : self.pos], self._span_from(mark)))

    def _single(self, kind: TokenKind) -> None:
        mark = self._mark()
        self._advance(1)
        self._emit(kind, mark)

    # -- token scanners ---------------------------------------------------

    def _number(self) -> None:
        # Digits with at most one interior decimal point; a period counts
        # as part of the literal only when a digit sits on both sides.
        src = self.source
        n = len(src)
        mark = self._mark()
        while self.pos < n and src[self.pos].isdigit():
            self._advance(1)
        if (
            self.pos + 1 < n
            and src[self.pos] == "."
            and src[self.pos + 1].isdigit()
        ):
            self._advance(1)
            while self.pos < n and src[self.pos].isdigit():
                self._advance(1)
        self._emit(TokenKind.NUMBER, mark)

    def _word(self) -> None:
        src = self.source
        n = len(src)
        mark = self._mark()
        self._advance(1)
        while self.pos < n and (src[self.pos].isalnum() or src[self.pos] == "_"):
            self._advance(1)
        self._emit(TokenKind.WORD, mark)

    def _string(self) -> None:
        src = self.source
        n = len(src)
        mark = self._mark()
        self._advance(1)
        while self.pos < n:
            ch = src[self.pos]
            if ch == '"':
                self._advance(1)
                self._emit(TokenKind.STRING, mark)
                return
            if ch == "\n":
                break
            if ch == "\\":
                if self.pos + 1 >= n or src[self.pos + 1] == "\n":
                    break
                if src[self.pos + 1] not in _ESCAPES:
                    escape_mark = self._mark()
                    self._advance(2)
                    self.diagnostics.append(
                        error(
                            "E005",
                            self._span_from(escape_mark),
                            f"unknown escape '\\{src[escape_mark[0] + 1]}' in string literal",
                        )
                    )
                else:
                    self._advance(2)
            else:
                self._advance(1)
        # No closing quote before end of line or input: report and drop.
        self.diagnostics.append(
            error("E005", self._span_from(mark), "unterminated string literal")
        )

    def _stray(self) -> None:
        # Skip to the next whitespace so one bad fragment yields one
        # diagnostic instead of one per character.
        src = self.source
        n = len(src)
        mark = self._mark()
        while self.pos < n and not src[self.pos].isspace():
            self._advance(1)
        fragment = src[mark[0] : self.pos]
        self.diagnostics.append(
            error("E005", self._span_from(mark), f"unexpected characters {fragment!r}")
        )
