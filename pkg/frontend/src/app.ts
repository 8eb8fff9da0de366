/**
 * Browser wiring: connects the pure renderers and API client to the DOM.
 *
 * Single-page layout: template palette on the left, slot form and the
 * two program buffers in the middle, diagnostics and run console on the
 * right. All program text shown here came from /api/generate or a
 * loaded .mpl file; this module never builds language sentences.
 */

import {
  compileSource,
  fetchCatalog,
  generateSentence,
  isRequestError,
  runSource,
  type TemplateCatalog,
  type TemplateDescriptor,
  type WireDiagnostic,
} from "./api.js";
import {
  conditionFromRows,
  renderConsole,
  renderDiagnostics,
  renderEditor,
  renderPalette,
  renderTemplateForm,
  type ConditionRow,
} from "./forms.js";
import {
  combinedSource,
  defaultBuffer,
  deleteStatement,
  emptyState,
  insertGenerated,
  moveStatement,
  stateFromSource,
  statementAtByteOffset,
  type BufferName,
  type EditorState,
} from "./state.js";
import { scanDeclarations, scanReads, targetType } from "./text.js";

const BASE = "";

let state: EditorState = emptyState();
let catalog: TemplateCatalog = { templates: [] };
let activeTemplate: TemplateDescriptor | null = null;
let running = false;
let compileTimer: number | undefined;

function el<T extends HTMLElement>(selector: string): T {
  const found = document.querySelector<T>(selector);
  if (!found) {
    throw new Error(`missing element: ${selector}`);
  }
  return found;
}

function banner(message: string): void {
  const box = el<HTMLElement>("#banner");
  box.textContent = message;
  box.hidden = message === "";
}

function refreshBuffers(): void {
  el<HTMLElement>("#buffers").innerHTML = renderEditor(state);
}

function refreshDiagnostics(): void {
  el<HTMLElement>("#diagnostics").innerHTML = renderDiagnostics(
    state.lastDiagnostics,
  );
}

function refreshConsole(): void {
  const box = el<HTMLElement>("#console");
  box.innerHTML = renderConsole(state.runConsole);
  box.scrollTop = box.scrollHeight;
}

function refreshAll(): void {
  refreshBuffers();
  refreshDiagnostics();
  refreshConsole();
}

// --- template forms ---------------------------------------------------------

function openForm(template: TemplateDescriptor): void {
  activeTemplate = template;
  const panel = el<HTMLElement>("#form-panel");
  panel.innerHTML = renderTemplateForm(template);
  for (const builder of panel.querySelectorAll<HTMLElement>(
    "[data-condition-builder]",
  )) {
    addConditionRow(builder);
  }
}

function addConditionRow(builder: HTMLElement): void {
  const rows = builder.querySelector<HTMLElement>(".condition-rows")!;
  const template = builder.querySelector<HTMLTemplateElement>(
    ".condition-row-template",
  )!;
  const row = template.content.firstElementChild!.cloneNode(true) as HTMLElement;
  row
    .querySelector<HTMLSelectElement>(".cond-connective")!
    .addEventListener("change", (event) => {
      const select = event.target as HTMLSelectElement;
      const isLast = row === rows.lastElementChild;
      if (select.value !== "" && isLast) {
        addConditionRow(builder);
      } else if (select.value === "") {
        while (rows.lastElementChild && rows.lastElementChild !== row) {
          rows.lastElementChild.remove();
        }
      }
    });
  rows.appendChild(row);
}

function collectConditionValue(builder: HTMLElement): string {
  const rows: ConditionRow[] = [];
  for (const rowEl of builder.querySelectorAll<HTMLElement>(".condition-row")) {
    rows.push({
      lhs: rowEl.querySelector<HTMLInputElement>(".cond-lhs")!.value,
      rhs: rowEl.querySelector<HTMLInputElement>(".cond-rhs")!.value,
      relop: rowEl.querySelector<HTMLSelectElement>(".cond-relop")!.value,
      connective: rowEl.querySelector<HTMLSelectElement>(".cond-connective")!
        .value as ConditionRow["connective"],
    });
  }
  const assembled = conditionFromRows(
    rows.filter((row) => row.lhs.trim() !== "" || row.rhs.trim() !== ""),
  );
  return assembled;
}

function collectSlots(form: HTMLFormElement): Record<string, string> {
  const slots: Record<string, string> = {};
  for (const builder of form.querySelectorAll<HTMLElement>(
    "[data-condition-builder]",
  )) {
    const slotName = builder.dataset.conditionBuilder!;
    const hidden = builder.querySelector<HTMLInputElement>("[data-slot]")!;
    hidden.value = collectConditionValue(builder);
    slots[slotName] = hidden.value;
  }
  for (const control of form.querySelectorAll<HTMLInputElement | HTMLSelectElement>(
    "[data-slot]",
  )) {
    slots[control.dataset.slot!] = control.value;
  }
  for (const [name, value] of Object.entries(slots)) {
    if (value.trim() === "") {
      delete slots[name]; // blank means "slot absent"
    }
  }
  return slots;
}

function showSlotErrors(form: HTMLFormElement, diagnostics: WireDiagnostic[]): void {
  for (const errorEl of form.querySelectorAll<HTMLElement>("[data-slot-error]")) {
    errorEl.textContent = "";
  }
  const unplaced: string[] = [];
  for (const diagnostic of diagnostics) {
    const slotName = slotForDiagnostic(form, diagnostic);
    if (slotName) {
      const target = form.querySelector<HTMLElement>(
        `[data-slot-error="${slotName}"]`,
      );
      if (target) {
        target.textContent = `${diagnostic.code}: ${diagnostic.message}`;
        continue;
      }
    }
    unplaced.push(diagnostic.formatted);
  }
  banner(unplaced.join(" — "));
}

function slotForDiagnostic(
  form: HTMLFormElement,
  diagnostic: WireDiagnostic,
): string | null {
  const mentioned = diagnostic.message.match(/slot '(\w+)'/);
  if (mentioned) {
    return mentioned[1];
  }
  if (diagnostic.relatedName) {
    for (const control of form.querySelectorAll<
      HTMLInputElement | HTMLSelectElement
    >("[data-slot]")) {
      if (
        control.value.trim().toLowerCase() ===
        diagnostic.relatedName.toLowerCase()
      ) {
        return control.dataset.slot ?? null;
      }
    }
  }
  return null;
}

async function onGenerate(form: HTMLFormElement): Promise<void> {
  if (!activeTemplate) {
    return;
  }
  banner("");
  const slots = collectSlots(form);
  let response;
  try {
    response = await generateSentence(
      BASE,
      activeTemplate.id,
      slots,
      combinedSource(state),
    );
  } catch (error) {
    banner(`network problem: ${String(error)}`);
    return;
  }
  if (isRequestError(response)) {
    banner(`${response.status}: ${response.error}`);
    return;
  }
  if (!response.ok) {
    showSlotErrors(form, response.diagnostics);
    return;
  }
  state = insertGenerated(
    state,
    defaultBuffer(activeTemplate.id),
    response.text,
    response.replacesLast,
  );
  refreshBuffers();
  scheduleCompile();
}

// --- compile and run --------------------------------------------------------

function scheduleCompile(): void {
  window.clearTimeout(compileTimer);
  compileTimer = window.setTimeout(() => void onCompile(), 300);
}

async function onCompile(): Promise<void> {
  let response;
  try {
    response = await compileSource(BASE, combinedSource(state));
  } catch (error) {
    banner(`network problem: ${String(error)}`);
    return;
  }
  if (isRequestError(response)) {
    banner(`${response.status}: ${response.error}`);
    return;
  }
  state = { ...state, lastDiagnostics: response.diagnostics };
  refreshDiagnostics();
}

function askInput(prompt: string, wantNumber: boolean): Promise<string> {
  const dialog = el<HTMLDialogElement>("#read-dialog");
  const label = el<HTMLElement>("#read-prompt");
  const field = el<HTMLInputElement>("#read-value");
  const error = el<HTMLElement>("#read-error");
  label.textContent = prompt;
  field.value = "";
  error.textContent = "";
  dialog.showModal();
  return new Promise((resolve) => {
    const submit = (event: Event) => {
      event.preventDefault();
      const value = field.value;
      if (wantNumber && value.trim() !== "" && !isFinite(Number(value.trim()))) {
        // Re-prompt locally; the core's R103 stays authoritative for
        // anything submitted.
        error.textContent = "That is not a Number; try again.";
        field.select();
        return;
      }
      dialog.removeEventListener("submit", submit);
      dialog.close();
      resolve(value);
    };
    dialog.addEventListener("submit", submit);
  });
}

async function onRun(): Promise<void> {
  if (running) {
    return;
  }
  running = true;
  const runButton = el<HTMLButtonElement>("#run");
  runButton.disabled = true;
  try {
    const source = combinedSource(state);
    const declarations = scanDeclarations(source);
    const inputs: string[] = [];
    for (const site of scanReads(source)) {
      const type = targetType(site.target, declarations);
      const prompt = site.prompt ?? `Enter a value for ${site.target}:`;
      inputs.push(await askInput(prompt, type === "Number"));
    }
    let response;
    try {
      response = await runSource(BASE, source, inputs);
    } catch (error) {
      banner(`network problem: ${String(error)}`);
      return;
    }
    if (isRequestError(response)) {
      banner(`${response.status}: ${response.error}`);
      return;
    }
    const entries = [...state.runConsole];
    entries.push({ kind: "info", text: `run @ ${new Date().toLocaleTimeString()}` });
    if (response.diagnostics.length > 0) {
      state = { ...state, lastDiagnostics: response.diagnostics };
      refreshDiagnostics();
      for (const diagnostic of response.diagnostics) {
        entries.push({ kind: "err", text: diagnostic.formatted });
      }
    }
    for (const line of response.outputs) {
      entries.push({ kind: "out", text: line });
    }
    if (response.runtimeError) {
      entries.push({ kind: "err", text: response.runtimeError.formatted });
    }
    state = { ...state, runConsole: entries };
    refreshConsole();
  } finally {
    running = false;
    runButton.disabled = false;
  }
}

// --- save / load ------------------------------------------------------------

function onSave(): void {
  const blob = new Blob([combinedSource(state)], { type: "text/plain" });
  const link = document.createElement("a");
  link.href = URL.createObjectURL(blob);
  link.download = "program.mpl";
  link.click();
  URL.revokeObjectURL(link.href);
}

async function onLoad(files: FileList | null): Promise<void> {
  if (!files || files.length === 0) {
    return;
  }
  const text = await files[0].text();
  state = { ...stateFromSource(text), runConsole: state.runConsole };
  refreshAll();
  scheduleCompile();
}

// --- event delegation -------------------------------------------------------

function highlightStatement(start: number): void {
  for (const marked of document.querySelectorAll(".statement.highlight")) {
    marked.classList.remove("highlight");
  }
  const location = statementAtByteOffset(state, start);
  if (!location) {
    return;
  }
  const item = document.querySelector(
    `.statement[data-buffer="${location.buffer}"][data-index="${location.index}"]`,
  );
  item?.classList.add("highlight");
  item?.scrollIntoView({ block: "nearest" });
}

function wireEvents(): void {
  el<HTMLElement>("#palette").addEventListener("click", (event) => {
    const button = (event.target as HTMLElement).closest<HTMLElement>(
      "[data-template]",
    );
    if (!button) {
      return;
    }
    const template = catalog.templates.find(
      (entry) => entry.id === button.dataset.template,
    );
    if (template) {
      openForm(template);
    }
  });

  el<HTMLElement>("#form-panel").addEventListener("submit", (event) => {
    event.preventDefault();
    void onGenerate(event.target as HTMLFormElement);
  });

  el<HTMLElement>("#buffers").addEventListener("click", (event) => {
    const button = (event.target as HTMLElement).closest<HTMLElement>(
      "[data-action]",
    );
    if (!button) {
      return;
    }
    const item = button.closest<HTMLElement>(".statement")!;
    const buffer = item.dataset.buffer as BufferName;
    const index = Number(item.dataset.index);
    if (button.dataset.action === "delete") {
      state = deleteStatement(state, buffer, index);
    } else if (button.dataset.action === "up") {
      state = moveStatement(state, buffer, index, -1);
    } else {
      state = moveStatement(state, buffer, index, 1);
    }
    refreshBuffers();
    scheduleCompile();
  });

  el<HTMLElement>("#diagnostics").addEventListener("click", (event) => {
    const row = (event.target as HTMLElement).closest<HTMLElement>("[data-start]");
    if (row) {
      highlightStatement(Number(row.dataset.start));
    }
  });

  el<HTMLButtonElement>("#compile").addEventListener("click", () => void onCompile());
  el<HTMLButtonElement>("#run").addEventListener("click", () => void onRun());
  el<HTMLButtonElement>("#save").addEventListener("click", onSave);
  el<HTMLInputElement>("#load").addEventListener("change", (event) => {
    void onLoad((event.target as HTMLInputElement).files);
  });
}

async function start(): Promise<void> {
  wireEvents();
  refreshAll();
  try {
    catalog = await fetchCatalog(BASE);
  } catch (error) {
    banner(`cannot reach the toolchain service: ${String(error)}`);
    return;
  }
  el<HTMLElement>("#palette").innerHTML = renderPalette(catalog.templates);
}

document.addEventListener("DOMContentLoaded", () => void start());
