/**
 * Thin typed client for the toolchain's HTTP API.
 *
 * Every function is a pure request/response wrapper; no UI state lives
 * here. Non-2xx statuses that carry a JSON body (language diagnostics,
 * malformed-request reports) are returned as values, not thrown, so the
 * caller can render them; only transport failures reject.
 */

export interface SlotDescriptor {
  name: string;
  label: string;
  kind: string;
  required: boolean;
  choices?: string[];
}

export interface TemplateDescriptor {
  id: string;
  title: string;
  description: string;
  slots: SlotDescriptor[];
}

export interface TemplateCatalog {
  templates: TemplateDescriptor[];
}

export interface WireDiagnostic {
  code: string;
  severity: string;
  message: string;
  line: number;
  column: number;
  startOffset: number;
  endOffset: number;
  formatted: string;
  relatedName?: string;
}

export interface CompileResponse {
  ok: boolean;
  diagnostics: WireDiagnostic[];
  targetSource?: string;
  naturalSourceEcho?: string;
}

export interface RunResponse {
  ok: boolean;
  outputs: string[];
  diagnostics: WireDiagnostic[];
  runtimeError: WireDiagnostic | null;
}

export interface GenerateOk {
  ok: true;
  text: string;
  diagnostics: WireDiagnostic[];
  replacesLast: boolean;
  replacedSpan?: { start: number; end: number };
}

export interface GenerateRejected {
  ok: false;
  diagnostics: WireDiagnostic[];
}

export type GenerateResponse = GenerateOk | GenerateRejected;

export interface RequestRejected {
  kind: "request-error";
  status: number;
  error: string;
}

async function postJson<T>(
  base: string,
  path: string,
  body: unknown,
): Promise<T | RequestRejected> {
  const response = await fetch(base + path, {
    method: "POST",
    headers: { "Content-Type": "application/json" },
    body: JSON.stringify(body),
  });
  const payload = await response.json();
  if (response.status === 200 || response.status === 422) {
    return payload as T;
  }
  return {
    kind: "request-error",
    status: response.status,
    error: typeof payload.error === "string" ? payload.error : "request failed",
  };
}

export function isRequestError(value: unknown): value is RequestRejected {
  return (
    typeof value === "object" &&
    value !== null &&
    (value as RequestRejected).kind === "request-error"
  );
}

export async function fetchCatalog(base: string): Promise<TemplateCatalog> {
  const response = await fetch(`${base}/api/templates`);
  if (!response.ok) {
    throw new Error(`catalog request failed: ${response.status}`);
  }
  return (await response.json()) as TemplateCatalog;
}

export function compileSource(
  base: string,
  source: string,
): Promise<CompileResponse | RequestRejected> {
  return postJson<CompileResponse>(base, "/api/compile", { source });
}

export function runSource(
  base: string,
  source: string,
  inputs: string[],
): Promise<RunResponse | RequestRejected> {
  return postJson<RunResponse>(base, "/api/run", { source, inputs });
}

export function generateSentence(
  base: string,
  templateId: string,
  slots: Record<string, string>,
  context: string,
): Promise<GenerateResponse | RequestRejected> {
  return postJson<GenerateResponse>(base, "/api/generate", {
    templateInstance: { templateId, slots },
    context,
  });
}
