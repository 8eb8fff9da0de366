"""Template catalog, slot validation, and instantiation.

The catalog is the fixed set of eight statement templates a user fills
in instead of typing source text. Slot values are plain text fragments;
expression-like slots are validated by the real lexer and parser, and
context checks run the real semantic checker, so an instance that
validates cleanly realizes to a sentence that compiles cleanly in the
same context.
"""

from __future__ import annotations

from dataclasses import dataclass
from types import MappingProxyType
from typing import Mapping

from .diagnostics import Diagnostic, error
from .lexer import string_value, tokenize
from .model import (
    Assignment,
    DeclareArray,
    DeclareVariable,
    Display,
    ElementRef,
    Expression,
    If,
    IfArm,
    LValue,
    NumberLit,
    Read,
    RepeatTimes,
    RepeatWhile,
    ScalarType,
    Select,
    SelectCase,
    Statement,
    StringLit,
    TokenKind,
    VarRef,
)
from .parser import parse_condition, parse_expression
from .semantics import SymbolTable, check_identifier, check_statement


@dataclass(frozen=True)
class SlotDescriptor:
    name: str
    label: str
    kind: str  # identifier | type-choice | expression | condition | literal | integer | string
    required: bool
    choices: tuple[str, ...] | None = None


@dataclass(frozen=True)
class TemplateDescriptor:
    id: str
    title: str
    description: str
    slots: tuple[SlotDescriptor, ...]


@dataclass(frozen=True)
class TemplateInstance:
    template_id: str
    slots: Mapping[str, str]

    def __post_init__(self) -> None:
        object.__setattr__(self, "slots", MappingProxyType(dict(self.slots)))


_TYPE_CHOICES = (ScalarType.NUMBER.value, ScalarType.STRING.value)

CATALOG: tuple[TemplateDescriptor, ...] = (
    TemplateDescriptor(
        "declare-variable",
        "Declare a variable",
        "Introduce a named Number or String variable, optionally initialized.",
        (
            SlotDescriptor("name", "Variable name", "identifier", True),
            SlotDescriptor("type", "Type", "type-choice", True, _TYPE_CHOICES),
            SlotDescriptor("initial", "Initial value", "expression", False),
        ),
    ),
    TemplateDescriptor(
        "declare-array",
        "Declare an array",
        "Introduce a fixed-size array of Numbers or Strings.",
        (
            SlotDescriptor("name", "Array name", "identifier", True),
            SlotDescriptor("type", "Element type", "type-choice", True, _TYPE_CHOICES),
            SlotDescriptor("size", "Size", "integer", True),
        ),
    ),
    TemplateDescriptor(
        "assignment",
        "Set a value",
        "Store the value of an expression in a variable or array element.",
        (
            SlotDescriptor("target", "Target", "expression", True),
            SlotDescriptor("value", "Value", "expression", True),
        ),
    ),
    TemplateDescriptor(
        "display",
        "Display on the screen",
        "Show the value of an expression as one output line.",
        (SlotDescriptor("value", "Value", "expression", True),),
    ),
    TemplateDescriptor(
        "read",
        "Read from the keyboard",
        "Read one input value into a variable or array element.",
        (
            SlotDescriptor("target", "Target", "expression", True),
            SlotDescriptor("prompt", "Prompt", "string", False),
        ),
    ),
    TemplateDescriptor(
        "if",
        "If condition",
        "Start a conditional block with one guarded arm and empty bodies. "
        "Set arm to 'append' to add the arm to the previous If instead.",
        (
            SlotDescriptor("condition", "Condition", "condition", True),
            SlotDescriptor("arm", "Arm placement", "string", False, ("new", "append")),
            SlotDescriptor("otherwise", "Include Otherwise", "string", False, ("yes", "no")),
        ),
    ),
    TemplateDescriptor(
        "repeat",
        "Repeat",
        "Start a loop skeleton, guarded by a condition or a repetition count.",
        (
            SlotDescriptor("mode", "Mode", "string", True, ("while", "times")),
            SlotDescriptor("condition", "Condition (while mode)", "condition", False),
            SlotDescriptor("count", "Count (times mode)", "expression", False),
        ),
    ),
    TemplateDescriptor(
        "select",
        "Select on a value",
        "Start a multiway branch skeleton with one empty body per case label.",
        (
            SlotDescriptor("scrutinee", "Select on", "expression", True),
            SlotDescriptor("cases", "Case labels", "literal", True),
            SlotDescriptor("other", "Include When other", "string", False, ("yes", "no")),
        ),
    ),
)

_BY_ID = {descriptor.id: descriptor for descriptor in CATALOG}


def catalog() -> tuple[TemplateDescriptor, ...]:
    return CATALOG


def template(template_id: str) -> TemplateDescriptor:
    """Look up a descriptor; unknown ids are a caller contract violation."""
    return _BY_ID[template_id]


def catalog_json() -> dict:
    return {
        "templates": [
            {
                "id": descriptor.id,
                "title": descriptor.title,
                "description": descriptor.description,
                "slots": [
                    _slot_json(slot)
                    for slot in descriptor.slots
                ],
            }
            for descriptor in CATALOG
        ]
    }


def _slot_json(slot: SlotDescriptor) -> dict:
    out: dict = {
        "name": slot.name,
        "label": slot.label,
        "kind": slot.kind,
        "required": slot.required,
    }
    if slot.choices is not None:
        out["choices"] = list(slot.choices)
    return out


def catalog_from_json(data: dict) -> tuple[TemplateDescriptor, ...]:
    """Inverse of :func:`catalog_json`; round-trips losslessly."""
    return tuple(
        TemplateDescriptor(
            entry["id"],
            entry["title"],
            entry.get("description", ""),
            tuple(
                SlotDescriptor(
                    slot["name"],
                    slot["label"],
                    slot["kind"],
                    slot["required"],
                    tuple(slot["choices"]) if "choices" in slot else None,
                )
            for slot in entry["slots"]),
        )
        for entry in data["templates"]
    )


def instance_from_json(data: dict) -> TemplateInstance:
    return TemplateInstance(data["templateId"], dict(data["slots"]))


def instance_json(instance: TemplateInstance) -> dict:
    return {"templateId": instance.template_id, "slots": dict(instance.slots)}


# -- validation -----------------------------------------------------------


def validate_instance(
    instance: TemplateInstance, symbols: SymbolTable | None = None
) -> list[Diagnostic]:
    """All problems with an instance; empty means instantiate-and-compile-safe.

    Structural checks (missing slots, kind validation) yield T001/T002;
    context checks against ``symbols`` reuse the semantic checker and
    yield its E-codes (redeclaration, undeclared target, type mismatch).
    """
    descriptor = template(instance.template_id)
    diagnostics: list[Diagnostic] = []
    known = {slot.name for slot in descriptor.slots}
    for name in instance.slots:
        if name not in known:
            diagnostics.append(
                error("T002", None, f"template '{descriptor.id}' has no slot '{name}'", name)
            )
    values = _present_values(instance)
    for slot in descriptor.slots:
        value = values.get(slot.name)
        if value is None:
            if slot.required:
                diagnostics.append(_missing(descriptor, slot))
            continue
        diagnostics.extend(_check_kind(descriptor, slot, value))
    diagnostics.extend(_cross_checks(descriptor, values))
    if diagnostics:
        return diagnostics
    # Structure is sound: build the statement and run the real checker
    # against the caller's context.
    statement = instantiate(instance)
    table = symbols.copy() if symbols is not None else SymbolTable()
    return check_statement(statement, table)


def _present_values(instance: TemplateInstance) -> dict[str, str]:
    # Blank and absent are both "not provided"; optional clause slots are
    # simply omitted from the sentence.
    return {
        name: value
        for name, value in instance.slots.items()
        if value is not None and value.strip() != ""
    }


def _missing(descriptor: TemplateDescriptor, slot: SlotDescriptor) -> Diagnostic:
    return error(
        "T001",
        None,
        f"template '{descriptor.id}' needs the '{slot.name}' slot",
        slot.name,
    )


def _check_kind(
    descriptor: TemplateDescriptor, slot: SlotDescriptor, value: str
) -> list[Diagnostic]:
    prefix = f"slot '{slot.name}'"
    if slot.kind == "identifier":
        problem = check_identifier(value.strip())
        if problem is not None:
            return [error("T002", None, f"{prefix}: {problem.message}", slot.name)]
        return []
    if slot.kind == "type-choice":
        if value.strip().casefold() not in {choice.casefold() for choice in slot.choices or ()}:
            return [
                error(
                    "T002",
                    None,
                    f"{prefix}: expected one of {', '.join(slot.choices or ())}",
                    slot.name,
                )
            ]
        return []
    if slot.kind == "expression":
        expr, problems = _parse_slot(value, "expression")
        if expr is None:
            return [_reparse_error(prefix, slot, problems)]
        if slot.name == "target" and not isinstance(expr, LValue):
            return [
                error(
                    "T002",
                    None,
                    f"{prefix}: must be a variable or an array element",
                    slot.name,
                )
            ]
        return []
    if slot.kind == "condition":
        cond, problems = _parse_slot(value, "condition")
        if cond is None:
            return [_reparse_error(prefix, slot, problems)]
        return []
    if slot.kind == "literal":
        if _parse_labels(value) is None:
            return [
                error(
                    "T002",
                    None,
                    f"{prefix}: expected one or more literals separated by spaces",
                    slot.name,
                )
            ]
        return []
    if slot.kind == "integer":
        if not value.strip().isdigit() or int(value.strip()) < 1:
            return [
                error("T002", None, f"{prefix}: must be a positive whole number", slot.name)
            ]
        return []
    if slot.kind == "string":
        if slot.choices is not None and value.strip().casefold() not in {
            choice.casefold() for choice in slot.choices
        }:
            return [
                error(
                    "T002",
                    None,
                    f"{prefix}: expected one of {', '.join(slot.choices)}",
                    slot.name,
                )
            ]
        return []
    raise ValueError(f"unknown slot kind {slot.kind!r}")


def _cross_checks(
    descriptor: TemplateDescriptor, values: dict[str, str]
) -> list[Diagnostic]:
    if descriptor.id != "repeat" or "mode" not in values:
        return []
    mode = values["mode"].strip().casefold()
    if mode not in ("while", "times"):
        return []  # the mode slot itself was already rejected
    needed = "condition" if mode == "while" else "count"
    if needed not in values:
        return [
            error(
                "T001",
                None,
                f"repeat mode '{mode}' needs the '{needed}' slot",
                needed,
            )
        ]
    return []


def _parse_slot(
    value: str, what: str
) -> tuple[Expression | None, tuple[Diagnostic, ...]]:
    lexed = tokenize(value)
    if lexed.diagnostics:
        return None, lexed.diagnostics
    if what == "condition":
        return parse_condition(lexed.tokens)
    return parse_expression(lexed.tokens)


def _reparse_error(
    prefix: str, slot: SlotDescriptor, problems: tuple[Diagnostic, ...]
) -> Diagnostic:
    detail = problems[0].message if problems else "cannot be parsed"
    return error("T002", None, f"{prefix}: {detail}", slot.name)


def _parse_labels(value: str) -> list[NumberLit | StringLit] | None:
    """Parse a whitespace-separated list of literals; None if malformed."""
    lexed = tokenize(value)
    if lexed.diagnostics:
        return None
    labels: list[NumberLit | StringLit] = []
    tokens = list(lexed.tokens)
    position = 0
    while position < len(tokens):
        tok = tokens[position]
        negative = False
        if tok.kind is TokenKind.OPERATOR and tok.lexeme == "-":
            negative = True
            position += 1
            if position >= len(tokens):
                return None
            tok = tokens[position]
        if tok.kind is TokenKind.NUMBER:
            value_f = float(tok.lexeme)
            labels.append(NumberLit(-value_f if negative else value_f))
        elif tok.kind is TokenKind.STRING and not negative:
            labels.append(StringLit(string_value(tok.lexeme)))
        else:
            return None
        position += 1
    return labels or None


# -- instantiation --------------------------------------------------------


def instantiate(instance: TemplateInstance) -> Statement:
    """Build the statement for a structurally valid instance.

    Control-flow templates yield skeletons with empty bodies; further
    statements are inserted by the caller, the engine is stateless about
    insertion points.
    """
    values = _present_values(instance)
    build = _BUILDERS[instance.template_id]
    return build(values)


def _expr(text: str) -> Expression:
    expr, problems = _parse_slot(text, "expression")
    if expr is None:
        raise ValueError(problems[0].message if problems else "bad expression slot")
    return expr


def _cond(text: str) -> Expression:
    cond, problems = _parse_slot(text, "condition")
    if cond is None:
        raise ValueError(problems[0].message if problems else "bad condition slot")
    return cond


def _lvalue(text: str) -> LValue:
    expr = _expr(text)
    if not isinstance(expr, (VarRef, ElementRef)):
        raise ValueError("target must be a variable or an array element")
    return expr


def _scalar(text: str) -> ScalarType:
    return ScalarType.NUMBER if text.strip().casefold() == "number" else ScalarType.STRING


def _flag(values: dict[str, str], name: str) -> bool:
    return values.get(name, "").strip().casefold() == "yes"


def _build_declare_variable(values: dict[str, str]) -> Statement:
    initial = _expr(values["initial"]) if "initial" in values else None
    return DeclareVariable(values["name"].strip(), _scalar(values["type"]), initial)


def _build_declare_array(values: dict[str, str]) -> Statement:
    return DeclareArray(
        values["name"].strip(), _scalar(values["type"]), int(values["size"].strip())
    )


def _build_assignment(values: dict[str, str]) -> Statement:
    return Assignment(_lvalue(values["target"]), _expr(values["value"]))


def _build_display(values: dict[str, str]) -> Statement:
    return Display(_expr(values["value"]))


def _build_read(values: dict[str, str]) -> Statement:
    # A blank prompt slot means "no prompt clause", not an empty prompt.
    return Read(_lvalue(values["target"]), values.get("prompt"))


def _build_if(values: dict[str, str]) -> Statement:
    arm = IfArm(_cond(values["condition"]), ())
    return If((arm,), () if _flag(values, "otherwise") else None)


def _build_repeat(values: dict[str, str]) -> Statement:
    if values["mode"].strip().casefold() == "while":
        return RepeatWhile(_cond(values["condition"]), ())
    return RepeatTimes(_expr(values["count"]), ())


def _build_select(values: dict[str, str]) -> Statement:
    labels = _parse_labels(values["cases"])
    if labels is None:
        raise ValueError("bad case labels")
    cases = tuple(SelectCase(label, ()) for label in labels)
    return Select(_expr(values["scrutinee"]), cases, () if _flag(values, "other") else None)


_BUILDERS = {
    "declare-variable": _build_declare_variable,
    "declare-array": _build_declare_array,
    "assignment": _build_assignment,
    "display": _build_display,
    "read": _build_read,
    "if": _build_if,
    "repeat": _build_repeat,
    "select": _build_select,
}


def wants_arm_append(instance: TemplateInstance) -> bool:
    """True when an if-instance asks to extend the previous If statement."""
    return (
        instance.template_id == "if"
        and instance.slots.get("arm", "").strip().casefold() == "append"
    )


def merge_if_arm(base: If, extra: If) -> If:
    """Append the arms (and Otherwise, if new) of ``extra`` onto ``base``."""
    otherwise = base.otherwise if base.otherwise is not None else extra.otherwise
    return If(base.arms + extra.arms, otherwise, span=base.span)
