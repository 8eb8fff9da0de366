"""Pipeline operations shared by the command line and the HTTP service."""

from __future__ import annotations

from dataclasses import dataclass, field

from .codegen import TargetUnit, emit_target
from .diagnostics import Diagnostic, Severity
from .interpreter import DEFAULT_STEP_LIMIT, RunResult, run
from .lexer import tokenize
from .model import If, Program, Span
from .nlg import realize_program, realize_statement
from .parser import parse_program
from .semantics import Analysis, CheckedProgram, SymbolTable, analyze
from .templates import (
    TemplateInstance,
    instantiate,
    merge_if_arm,
    validate_instance,
    wants_arm_append,
)
from typing import Iterable


@dataclass
class CompileResult:
    diagnostics: list[Diagnostic]
    program: Program
    symbols: SymbolTable
    checked: CheckedProgram | None = None
    target: TargetUnit | None = None
    natural_echo: str | None = None

    @property
    def ok(self) -> bool:
        return self.checked is not None


def compile_source(source: str | bytes, want_target: bool = True) -> CompileResult:
    """Lex, parse, and check; emit target text when everything is clean."""
    lexed = tokenize(source)
    parsed = parse_program(lexed.tokens)
    analysis: Analysis = analyze(parsed.program)
    diagnostics = [*lexed.diagnostics, *parsed.diagnostics, *analysis.diagnostics]
    result = CompileResult(diagnostics, parsed.program, analysis.symbols)
    if not lexed.diagnostics and not parsed.diagnostics:
        # Full-fidelity parse: echo the canonical realization.
        result.natural_echo = realize_program(parsed.program)
    if not diagnostics and analysis.checked is not None:
        result.checked = analysis.checked
        if want_target:
            result.target = emit_target(analysis.checked)
    return result


def run_source(
    source: str | bytes,
    inputs: Iterable[str] = (),
    step_limit: int = DEFAULT_STEP_LIMIT,
) -> tuple[CompileResult, RunResult | None]:
    compiled = compile_source(source, want_target=False)
    if compiled.checked is None:
        return compiled, None
    return compiled, run(compiled.checked, inputs, step_limit)


@dataclass
class GenerateResult:
    diagnostics: list[Diagnostic]
    text: str | None = None
    #: When True, ``text`` re-realizes the context's final statement with
    #: the new arm merged in, and should replace it rather than follow it.
    replaces_last: bool = False
    #: Byte span of the context statement being replaced.
    replaced_span: Span | None = field(default=None)

    @property
    def ok(self) -> bool:
        return self.text is not None


def generate_sentence(
    instance: TemplateInstance, context_source: str | bytes | None = None
) -> GenerateResult:
    """Validate an instance against a source context and realize it.

    The context provides the symbol table (so redeclarations and
    undeclared targets are caught) and the merge target for if-arm
    appending. A broken context contributes whatever symbols could be
    recovered but never blocks generation.
    """
    lexed = tokenize(context_source or "")
    parsed = parse_program(lexed.tokens)
    context_clean = not lexed.diagnostics and not parsed.diagnostics
    analysis = analyze(parsed.program)
    problems = [
        d
        for d in validate_instance(instance, analysis.symbols)
        if d.severity is Severity.ERROR
    ]
    if problems:
        return GenerateResult(problems)
    statement = instantiate(instance)
    if wants_arm_append(instance) and context_clean and parsed.program.statements:
        last = parsed.program.statements[-1]
        if isinstance(last, If) and isinstance(statement, If):
            merged = merge_if_arm(last, statement)
            return GenerateResult([], realize_statement(merged), True, last.span)
    return GenerateResult([], realize_statement(statement))


def diagnostic_json(diagnostic: Diagnostic) -> dict:
    from .diagnostics import format_diagnostic

    out = {
        "code": diagnostic.code,
        "severity": diagnostic.severity.value,
        "message": diagnostic.message,
        "line": diagnostic.span.line,
        "column": diagnostic.span.column,
        "startOffset": diagnostic.span.start,
        "endOffset": diagnostic.span.end,
        "formatted": format_diagnostic(diagnostic),
    }
    if diagnostic.related_name is not None:
        out["relatedName"] = diagnostic.related_name
    return out
