#!/usr/bin/env python3
"""Walk the full pipeline on the two showcase programs, stage by stage.

Shows, for the radius and average-of-three programs: template-driven
sentence generation, the compile check, the generated target source,
and an interpreted run. Everything is printed, nothing is asserted;
run the test suite for the binding version of these claims.
"""

from __future__ import annotations

import textwrap

from natprog import (
    TemplateInstance,
    compile_source,
    format_diagnostic,
    generate_sentence,
    run_source,
)


def banner(title: str) -> None:
    print()
    print("=" * 72)
    print(title)
    print("=" * 72)


def build_from_templates(steps: list[tuple[str, dict[str, str]]]) -> str:
    source = ""
    for template_id, slots in steps:
        result = generate_sentence(TemplateInstance(template_id, slots), source)
        if not result.ok:
            for diagnostic in result.diagnostics:
                print("  rejected:", format_diagnostic(diagnostic))
            raise SystemExit(1)
        print(f"  {template_id:<18} -> {result.text}")
        source += result.text + "\n"
    return source


def compile_and_run(source: str, inputs: list[str]) -> None:
    compiled = compile_source(source)
    print(f"\ncompile: {'clean' if compiled.ok else 'failed'}")
    for diagnostic in compiled.diagnostics:
        print(" ", format_diagnostic(diagnostic))
    if not compiled.ok:
        return
    print("\ntarget source (first lines):")
    print(textwrap.indent("\n".join(compiled.target.source.splitlines()[:12]), "  "))
    _, result = run_source(source, inputs)
    print(f"\nrun with inputs {inputs}:")
    for line in result.outputs:
        print("  out:", line)
    if result.runtime_error is not None:
        print("  err:", format_diagnostic(result.runtime_error))


def main() -> None:
    banner("Radius demo: one declaration, one display")
    source = build_from_templates(
        [
            ("declare-variable", {"name": "Radius", "type": "Number", "initial": "25"}),
            ("display", {"value": "Radius"}),
        ]
    )
    compile_and_run(source, [])

    banner("Average of three numbers, built template by template")
    source = build_from_templates(
        [
            ("declare-variable", {"name": "First", "type": "Number"}),
            ("declare-variable", {"name": "Second", "type": "Number"}),
            ("declare-variable", {"name": "Third", "type": "Number"}),
            ("read", {"target": "First", "prompt": "First: "}),
            ("read", {"target": "Second", "prompt": "Second: "}),
            ("read", {"target": "Third", "prompt": "Third: "}),
            (
                "assignment",
                {"target": "First", "value": "(First + Second + Third) / 3"},
            ),
            ("display", {"value": "First"}),
        ]
    )
    compile_and_run(source, ["10", "20", "30"])

    banner("What rejection looks like: semantic checks in action")
    bad = (
        "Declare a variable called X of type Number.\n"
        "Declare a variable called X of type Number.\n"
        'Set X to "words".\n'
    )
    print(bad)
    compiled = compile_source(bad)
    for diagnostic in compiled.diagnostics:
        print(" ", format_diagnostic(diagnostic))


if __name__ == "__main__":
    main()
