"""Stateless JSON-over-HTTP service for the playground UI.

Every response is a pure function of the request body. Malformed
requests get 400, language-level failures (diagnostics) get 422 with
the same response shape as success, and runtime errors from /api/run are
a normal 200 result; nothing language-level ever becomes a 500.
"""

from __future__ import annotations

import os
from pathlib import Path

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field

from .driver import compile_source, diagnostic_json, generate_sentence, run_source
from .interpreter import DEFAULT_STEP_LIMIT
from .templates import TemplateInstance, catalog_json

#: Request bodies above this size are rejected so /api/run stays bounded.
MAX_BODY_BYTES = 1 << 20

#: Upper bound on a caller-chosen step limit.
MAX_STEP_LIMIT = 100_000_000


class CompileRequest(BaseModel):
    source: str


class RunRequest(BaseModel):
    source: str
    inputs: list[str] = Field(default_factory=list)
    step_limit: int | None = Field(
        default=None, alias="stepLimit", gt=0, le=MAX_STEP_LIMIT
    )

    model_config = {"populate_by_name": True}


class InstanceBody(BaseModel):
    template_id: str = Field(alias="templateId")
    slots: dict[str, str] = Field(default_factory=dict)

    model_config = {"populate_by_name": True}


class GenerateRequest(BaseModel):
    template_instance: InstanceBody = Field(alias="templateInstance")
    context: str | None = None

    model_config = {"populate_by_name": True}


def create_app() -> FastAPI:
    app = FastAPI(title="natprog service", docs_url=None, redoc_url=None)

    @app.exception_handler(RequestValidationError)
    async def malformed(request: Request, exc: RequestValidationError) -> JSONResponse:
        # This API uses 400 for anything that is not a well-shaped
        # request; FastAPI's default would be 422, which is reserved
        # for language errors here.
        return JSONResponse(
            status_code=400,
            content={"ok": False, "error": "malformed request", "detail": exc.errors()},
        )

    @app.middleware("http")
    async def cap_body(request: Request, call_next):
        declared = request.headers.get("content-length")
        if declared is not None and declared.isdigit() and int(declared) > MAX_BODY_BYTES:
            return JSONResponse(status_code=413, content={"ok": False, "error": "request too large"})
        body = await request.body()
        if len(body) > MAX_BODY_BYTES:
            return JSONResponse(status_code=413, content={"ok": False, "error": "request too large"})
        return await call_next(request)

    @app.get("/api/templates")
    def templates() -> dict:
        return catalog_json()

    @app.post("/api/compile")
    def compile_endpoint(request: CompileRequest) -> JSONResponse:
        compiled = compile_source(request.source)
        payload = {
            "ok": compiled.ok,
            "diagnostics": [diagnostic_json(d) for d in compiled.diagnostics],
        }
        if compiled.target is not None:
            payload["targetSource"] = compiled.target.source
        if compiled.natural_echo is not None:
            payload["naturalSourceEcho"] = compiled.natural_echo
        return JSONResponse(status_code=200 if compiled.ok else 422, content=payload)

    @app.post("/api/run")
    def run_endpoint(request: RunRequest) -> JSONResponse:
        limit = request.step_limit or DEFAULT_STEP_LIMIT
        compiled, result = run_source(request.source, request.inputs, limit)
        if result is None:
            return JSONResponse(
                status_code=422,
                content={
                    "ok": False,
                    "outputs": [],
                    "diagnostics": [diagnostic_json(d) for d in compiled.diagnostics],
                    "runtimeError": None,
                },
            )
        return JSONResponse(
            status_code=200,
            content={
                "ok": result.ok,
                "outputs": result.outputs,
                "diagnostics": [],
                "runtimeError": (
                    diagnostic_json(result.runtime_error)
                    if result.runtime_error is not None
                    else None
                ),
            },
        )

    @app.post("/api/generate")
    def generate_endpoint(request: GenerateRequest) -> JSONResponse:
        instance = TemplateInstance(
            request.template_instance.template_id, request.template_instance.slots
        )
        try:
            result = generate_sentence(instance, request.context)
        except KeyError:
            return JSONResponse(
                status_code=400,
                content={
                    "ok": False,
                    "error": f"unknown template '{instance.template_id}'",
                },
            )
        if not result.ok:
            return JSONResponse(
                status_code=422,
                content={
                    "ok": False,
                    "diagnostics": [diagnostic_json(d) for d in result.diagnostics],
                },
            )
        payload = {
            "ok": True,
            "text": result.text,
            "diagnostics": [],
            "replacesLast": result.replaces_last,
        }
        if result.replaced_span is not None:
            # Byte range of the context statement the new text supersedes.
            payload["replacedSpan"] = {
                "start": result.replaced_span.start,
                "end": result.replaced_span.end,
            }
        return JSONResponse(status_code=200, content=payload)

    _mount_ui(app)
    return app


def _mount_ui(app: FastAPI) -> None:
    """Serve the browser IDE when its build output is around (optional)."""
    candidate = os.environ.get("NATPROG_UI_DIR")
    roots = [Path(candidate)] if candidate else []
    roots.append(Path(__file__).resolve().parents[2] / "frontend" / "dist")
    for root in roots:
        if root.is_dir():
            from fastapi.staticfiles import StaticFiles

            app.mount("/", StaticFiles(directory=str(root), html=True), name="ui")
            return


app = create_app()
