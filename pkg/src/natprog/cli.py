"""Command-line entry point.

Exit codes: 0 success, 1 language or runtime diagnostics were reported,
2 usage or I/O problems. Diagnostics go to stderr, one per line, in the
standard rendering; program output goes to stdout.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Iterable, NoReturn

from .diagnostics import Diagnostic, format_diagnostic
from .driver import compile_source, generate_sentence, run_source
from .interpreter import DEFAULT_STEP_LIMIT
from .templates import TemplateInstance, catalog_json

DEFAULT_PORT = 8000


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except OSError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="natprog",
        description="Template-driven natural-language programming toolchain.",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    compile_cmd = commands.add_parser(
        "compile", help="check a source file and emit target code"
    )
    compile_cmd.add_argument("file", help="natural-language source file (.mpl)")
    compile_cmd.add_argument(
        "--emit", metavar="OUT", help="write the generated target file here"
    )
    compile_cmd.set_defaults(handler=_cmd_compile)

    run_cmd = commands.add_parser("run", help="compile and interpret a source file")
    run_cmd.add_argument("file", help="natural-language source file (.mpl)")
    run_cmd.add_argument(
        "--input", metavar="FILE", help="read inputs from this file, one value per line"
    )
    run_cmd.add_argument(
        "--step-limit",
        type=int,
        default=DEFAULT_STEP_LIMIT,
        metavar="N",
        help=f"execution budget (default {DEFAULT_STEP_LIMIT})",
    )
    run_cmd.set_defaults(handler=_cmd_run)

    generate_cmd = commands.add_parser(
        "generate", help="validate a template instance and print its sentence"
    )
    generate_cmd.add_argument("--template", required=True, metavar="ID")
    generate_cmd.add_argument(
        "--slots", required=True, metavar="JSON", help='slot values, e.g. \'{"name": "X"}\''
    )
    generate_cmd.add_argument(
        "--append-to",
        metavar="FILE",
        help="validate against this file's declarations and append the sentence",
    )
    generate_cmd.set_defaults(handler=_cmd_generate)

    templates_cmd = commands.add_parser("templates", help="print the template catalog as JSON")
    templates_cmd.set_defaults(handler=_cmd_templates)

    serve_cmd = commands.add_parser("serve", help="start the HTTP playground service")
    serve_cmd.add_argument(
        "--port",
        type=int,
        default=None,
        help=f"listen port (default: NATPROG_PORT or {DEFAULT_PORT})",
    )
    serve_cmd.add_argument("--host", default="127.0.0.1")
    serve_cmd.set_defaults(handler=_cmd_serve)

    return parser


def _read_file(path: str) -> str:
    with open(path, "rb") as handle:
        return handle.read().decode("utf-8", errors="replace")


def _report(diagnostics: Iterable[Diagnostic]) -> None:
    for diagnostic in diagnostics:
        print(format_diagnostic(diagnostic), file=sys.stderr)


def _cmd_compile(args: argparse.Namespace) -> int:
    compiled = compile_source(_read_file(args.file))
    _report(compiled.diagnostics)
    if not compiled.ok:
        return 1
    assert compiled.target is not None
    if args.emit:
        with open(args.emit, "w", encoding="utf-8", newline="") as handle:
            handle.write(compiled.target.source)
    else:
        sys.stdout.write(compiled.target.source)
    return 0


def _stdin_values() -> Iterable[str]:
    for line in sys.stdin:
        yield line.rstrip("\n")


def _cmd_run(args: argparse.Namespace) -> int:
    if args.step_limit < 1:
        print("error: --step-limit must be positive", file=sys.stderr)
        return 2
    if args.input is not None:
        inputs: Iterable[str] = _read_file(args.input).splitlines()
    else:
        inputs = _stdin_values()
    compiled, result = run_source(_read_file(args.file), inputs, args.step_limit)
    _report(compiled.diagnostics)
    if result is None:
        return 1
    for line in result.outputs:
        print(line)
    if result.runtime_error is not None:
        print(format_diagnostic(result.runtime_error), file=sys.stderr)
        return 1
    return 0


def _cmd_generate(args: argparse.Namespace) -> int:
    try:
        slots = json.loads(args.slots)
    except json.JSONDecodeError as err:
        print(f"error: --slots is not valid JSON: {err}", file=sys.stderr)
        return 2
    if not isinstance(slots, dict) or not all(
        isinstance(k, str) and isinstance(v, str) for k, v in slots.items()
    ):
        print("error: --slots must be a JSON object of strings", file=sys.stderr)
        return 2
    instance = TemplateInstance(args.template, slots)
    if args.template not in {entry["id"] for entry in catalog_json()["templates"]}:
        print(f"error: unknown template '{args.template}'", file=sys.stderr)
        return 2
    context = ""
    if args.append_to is not None and os.path.exists(args.append_to):
        context = _read_file(args.append_to)
    result = generate_sentence(instance, context)
    _report(result.diagnostics)
    if not result.ok:
        return 1
    assert result.text is not None
    print(result.text)
    if args.append_to is not None:
        _write_back(args.append_to, context, result.text, result.replaced_span)
    return 0


def _write_back(path: str, context: str, text: str, replaced_span) -> None:
    if replaced_span is not None:
        # Arm appending rewrites the final If statement in place.
        # Span start/end index UTF-8 bytes, so splice at the byte level.
        raw = context.encode("utf-8")
        updated = raw[: replaced_span.start] + text.encode("utf-8") + raw[replaced_span.end :]
        content = updated.decode("utf-8")
    else:
        content = context
        if content and not content.endswith("\n"):
            content += "\n"
        content += text + "\n"
    with open(path, "w", encoding="utf-8", newline="") as handle:
        handle.write(content)


def _cmd_templates(args: argparse.Namespace) -> int:
    json.dump(catalog_json(), sys.stdout, indent=2)
    sys.stdout.write("\n")
    return 0


def _cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service import create_app

    port = args.port
    if port is None:
        try:
            port = int(os.environ.get("NATPROG_PORT", DEFAULT_PORT))
        except ValueError:
            print("error: NATPROG_PORT must be an integer", file=sys.stderr)
            return 2
    uvicorn.run(create_app(), host=args.host, port=port)
    return 0


def entry() -> NoReturn:
    raise SystemExit(main())


if __name__ == "__main__":
    entry()
