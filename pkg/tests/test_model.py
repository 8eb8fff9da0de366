"""Core model: spans, diagnostics formatting, number rendering, AST equality."""

import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from natprog.diagnostics import (
    NO_SPAN,
    REGISTRY,
    Diagnostic,
    Severity,
    format_diagnostic,
)
from natprog.model import (
    ArrayType,
    Binary,
    BinaryOp,
    If,
    IfArm,
    NumberLit,
    ScalarType,
    Select,
    Span,
    StringLit,
    render_number,
    span_merge,
)


def span(start, end, line=1, column=1):
    return Span(start, end, line, column)


class TestSpan:
    def test_rejects_inverted_range(self):
        with pytest.raises(ValueError):
            Span(5, 3, 1, 1)

    def test_rejects_zero_based_position(self):
        with pytest.raises(ValueError):
            Span(0, 0, 0, 1)
        with pytest.raises(ValueError):
            Span(0, 0, 1, 0)

    def test_merge_hull(self):
        assert span_merge(span(0, 3), span(5, 8)) == span(0, 8)

    def test_merge_idempotent(self):
        s = span(4, 9, 2, 5)
        assert span_merge(s, s) == s

    def test_merge_commutative_hull(self):
        assert span_merge(span(5, 8), span(0, 3)) == span(0, 8)

    def test_merge_takes_position_of_earlier_span(self):
        a = Span(10, 12, 3, 4)
        b = Span(2, 6, 1, 3)
        merged = span_merge(a, b)
        assert (merged.line, merged.column) == (1, 3)

    @given(
        st.integers(0, 100),
        st.integers(0, 100),
        st.integers(0, 100),
        st.integers(0, 100),
    )
    def test_merge_covers_both(self, a0, a1, b0, b1):
        a = span(min(a0, a1), max(a0, a1))
        b = span(min(b0, b1), max(b0, b1))
        merged = span_merge(a, b)
        assert merged.start <= min(a.start, b.start)
        assert merged.end >= max(a.end, b.end)


class TestDiagnostics:
    def test_registry_is_closed(self):
        with pytest.raises(ValueError):
            Diagnostic("E999", Severity.ERROR, NO_SPAN, "nope")

    def test_registry_codes_shape(self):
        for code in REGISTRY:
            assert code[0] in "ETR"
            assert code[1:].isdigit() and len(code) == 4

    def test_format_redeclaration(self):
        d = Diagnostic(
            "E001",
            Severity.ERROR,
            Span(20, 21, 3, 9),
            "variable 'X' is already declared",
            related_name="X",
        )
        assert format_diagnostic(d) == "ERROR E001 at 3:9: variable 'X' is already declared."

    def test_format_syntax_error(self):
        d = Diagnostic("E005", Severity.ERROR, Span(0, 1, 1, 1), "expected a statement")
        assert format_diagnostic(d) == "ERROR E005 at 1:1: expected a statement."

    def test_format_keeps_existing_period(self):
        d = Diagnostic("E005", Severity.ERROR, NO_SPAN, "expected a statement.")
        assert format_diagnostic(d).count(".") == 1

    def test_format_warning_severity(self):
        d = Diagnostic("E005", Severity.WARNING, NO_SPAN, "just saying")
        assert format_diagnostic(d).startswith("WARNING")


class TestRenderNumber:
    # Frozen oracle pairs, computed by hand from the rendering rule:
    # shortest round-tripping digits, positional only, no ".0" tail.
    CASES = [
        (25.0, "25"),
        (0.0, "0"),
        (-0.0, "-0"),
        (3.14, "3.14"),
        (-7.5, "-7.5"),
        (1 / 3, "0.3333333333333333"),
        (1e20, "100000000000000000000"),
        (1e-5, "0.00001"),
        (-2.5e-7, "-0.00000025"),
        (1.5e22, "15000000000000000000000"),
        (2.0**53, "9007199254740992"),
    ]

    @pytest.mark.parametrize("value, expected", CASES)
    def test_frozen_cases(self, value, expected):
        assert render_number(value) == expected

    @given(st.floats(allow_nan=False, allow_infinity=False))
    def test_round_trips_to_same_double(self, value):
        text = render_number(value)
        assert "e" not in text and "E" not in text
        back = float(text)
        assert back == value or (math.copysign(1, back) == math.copysign(1, value) and value == 0)

    @given(st.integers(-(10**15), 10**15))
    def test_integral_values_have_no_point(self, n):
        assert render_number(float(n)) == str(n)


class TestAst:
    def test_equality_ignores_spans(self):
        a = NumberLit(5.0, span=Span(0, 1, 1, 1))
        b = NumberLit(5.0, span=Span(40, 41, 3, 7))
        assert a == b

    def test_equality_is_structural(self):
        x = Binary(BinaryOp.ADD, NumberLit(1.0), NumberLit(2.0))
        y = Binary(BinaryOp.ADD, NumberLit(1.0), NumberLit(2.0))
        z = Binary(BinaryOp.SUB, NumberLit(1.0), NumberLit(2.0))
        assert x == y
        assert x != z

    def test_nodes_are_immutable(self):
        lit = NumberLit(1.0)
        with pytest.raises(AttributeError):
            lit.value = 2.0

    def test_array_type_positive_size(self):
        with pytest.raises(ValueError):
            ArrayType(ScalarType.NUMBER, 0)

    def test_if_needs_an_arm(self):
        with pytest.raises(ValueError):
            If((), None)

    def test_select_needs_a_case(self):
        with pytest.raises(ValueError):
            Select(NumberLit(1.0), (), None)

    def test_if_accepts_one_arm(self):
        arm = IfArm(StringLit("x"), ())
        assert If((arm,), None).arms == (arm,)
