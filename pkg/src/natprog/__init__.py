"""natprog: a template-driven natural-language programming toolchain.

The pipeline, end to end:

    templates -> sentence generation -> .mpl natural-language source
        -> lexer -> parser -> semantic analysis
        -> tree-walking interpreter and C# source emission

Public API re-exported here; see the CLI (``natprog``) and the HTTP
service (``natprog.service``) for the two hosted frontends.
"""

from .diagnostics import NO_SPAN, REGISTRY, Diagnostic, Severity, format_diagnostic
from .driver import (
    CompileResult,
    GenerateResult,
    compile_source,
    diagnostic_json,
    generate_sentence,
    run_source,
)
from .interpreter import DEFAULT_STEP_LIMIT, RunResult, eval_expression, run
from .lexer import LexOutput, tokenize
from .model import (
    ArrayType,
    Program,
    ScalarType,
    Span,
    Token,
    TokenKind,
    render_number,
    span_merge,
)
from .nlg import realize_expression, realize_program, realize_statement
from .parser import (
    ParseOutput,
    parse_condition,
    parse_expression,
    parse_program,
)
from .semantics import (
    MAX_IDENTIFIER_LENGTH,
    RESERVED_WORDS,
    Analysis,
    CheckedProgram,
    analyze,
    check_identifier,
)
from .templates import (
    CATALOG,
    SlotDescriptor,
    TemplateDescriptor,
    TemplateInstance,
    catalog_json,
    instantiate,
    template,
    validate_instance,
)
from .codegen import TargetUnit, emit_target

__version__ = "0.1.0"

__all__ = [
    "Analysis",
    "ArrayType",
    "CATALOG",
    "CheckedProgram",
    "CompileResult",
    "DEFAULT_STEP_LIMIT",
    "Diagnostic",
    "GenerateResult",
    "LexOutput",
    "MAX_IDENTIFIER_LENGTH",
    "NO_SPAN",
    "ParseOutput",
    "Program",
    "REGISTRY",
    "RESERVED_WORDS",
    "RunResult",
    "ScalarType",
    "SlotDescriptor",
    "Span",
    "TargetUnit",
    "TemplateDescriptor",
    "TemplateInstance",
    "Token",
    "TokenKind",
    "analyze",
    "catalog_json",
    "check_identifier",
    "compile_source",
    "diagnostic_json",
    "emit_target",
    "eval_expression",
    "format_diagnostic",
    "generate_sentence",
    "instantiate",
    "parse_condition",
    "parse_expression",
    "parse_program",
    "realize_expression",
    "realize_program",
    "realize_statement",
    "render_number",
    "run",
    "run_source",
    "span_merge",
    "template",
    "tokenize",
    "validate_instance",
]
