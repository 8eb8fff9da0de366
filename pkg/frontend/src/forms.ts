/**
 * Pure HTML renderers, all driven by server data.
 *
 * Every function here maps JSON (the template catalog, diagnostics,
 * editor state) to an HTML string with zero DOM access, so the whole
 * visual layer is snapshot-testable in a plain node environment. Event
 * wiring happens elsewhere via data attributes.
 */

import type { SlotDescriptor, TemplateDescriptor, WireDiagnostic } from "./api.js";
import type { ConsoleEntry, EditorState } from "./state.js";

export function escapeHtml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;")
    .replace(/'/g, "&#39;");
}

/** Relop surface forms offered by the condition row builder. */
export const RELOPS = [
  "is Equal to",
  "is Not Equal to",
  "is Greater than",
  "is Smaller than",
  "is Greater or Equal to",
  "is Smaller or Equal to",
];

/** Left panel: one launcher button per catalog template. */
export function renderPalette(templates: TemplateDescriptor[]): string {
  const buttons = templates
    .map(
      (template) =>
        `<button class="launcher" data-template="${escapeHtml(template.id)}" ` +
        `title="${escapeHtml(template.description)}">` +
        `${escapeHtml(template.title)}</button>`,
    )
    .join("\n");
  return `<nav class="palette">\n${buttons}\n</nav>`;
}

/**
 * One interactive form for a template descriptor: a control per slot,
 * required slots marked, and a Generate button. Control choice is
 * driven entirely by the descriptor (kind + optional choices list);
 * unknown kinds degrade to a plain text input with a console warning.
 */
export function renderTemplateForm(descriptor: TemplateDescriptor): string {
  const rows = descriptor.slots
    .map((slot) => renderSlotRow(descriptor.id, slot))
    .join("\n");
  return [
    `<form class="template-form" data-template="${escapeHtml(descriptor.id)}">`,
    `<h3>${escapeHtml(descriptor.title)}</h3>`,
    `<p class="description">${escapeHtml(descriptor.description)}</p>`,
    rows,
    `<button type="submit" class="generate">Generate</button>`,
    `</form>`,
  ]
    .filter((part) => part !== "")
    .join("\n");
}

function renderSlotRow(templateId: string, slot: SlotDescriptor): string {
  const marker = slot.required ? ' <span class="required">*</span>' : "";
  const label =
    `<label for="${controlId(templateId, slot.name)}">` +
    `${escapeHtml(slot.label)}${marker}</label>`;
  return (
    `<div class="slot-row" data-slot-row="${escapeHtml(slot.name)}">\n` +
    `${label}\n${renderSlotControl(templateId, slot)}\n` +
    `<span class="slot-error" data-slot-error="${escapeHtml(slot.name)}"></span>\n` +
    `</div>`
  );
}

function controlId(templateId: string, slotName: string): string {
  return `slot-${templateId}-${slotName}`;
}

function renderSlotControl(templateId: string, slot: SlotDescriptor): string {
  const id = controlId(templateId, slot.name);
  const common = `id="${id}" data-slot="${escapeHtml(slot.name)}"`;
  if (slot.choices && slot.choices.length > 0) {
    const blank = slot.required ? "" : `<option value=""></option>\n`;
    const options = slot.choices
      .map(
        (choice) =>
          `<option value="${escapeHtml(choice)}">${escapeHtml(choice)}</option>`,
      )
      .join("\n");
    return `<select ${common}>\n${blank}${options}\n</select>`;
  }
  switch (slot.kind) {
    case "condition":
      return renderConditionBuilder(id, slot.name);
    case "integer":
      return `<input ${common} type="number" step="1">`;
    case "identifier":
    case "expression":
    case "string":
    case "literal":
      return `<input ${common} type="text"${placeholderFor(slot.kind)}>`;
    default:
      console.warn(
        `unknown slot kind '${slot.kind}' for slot '${slot.name}'; rendering as text`,
      );
      return `<input ${common} type="text">`;
  }
}

function placeholderFor(kind: string): string {
  if (kind === "literal") {
    return ' placeholder="10, 20, 30 or &quot;labels&quot;"';
  }
  return "";
}

/**
 * Row builder for condition slots: left side, relop, right side, plus an
 * And/Or connective that reveals the next row. The assembled text is
 * kept in a hidden input so form collection stays uniform.
 */
function renderConditionBuilder(id: string, slotName: string): string {
  const relops = RELOPS.map(
    (relop) => `<option value="${escapeHtml(relop)}">${escapeHtml(relop)}</option>`,
  ).join("\n");
  return [
    `<div class="condition-builder" data-condition-builder="${escapeHtml(slotName)}">`,
    `<input ${`id="${id}"`} data-slot="${escapeHtml(slotName)}" type="hidden">`,
    `<div class="condition-rows"></div>`,
    `<template class="condition-row-template">`,
    `<div class="condition-row">`,
    `<input type="text" class="cond-lhs" placeholder="left side">`,
    `<select class="cond-relop">\n${relops}\n</select>`,
    `<input type="text" class="cond-rhs" placeholder="right side">`,
    `<select class="cond-connective">`,
    `<option value=""></option>`,
    `<option value="And">And</option>`,
    `<option value="Or">Or</option>`,
    `</select>`,
    `</div>`,
    `</template>`,
    `</div>`,
  ].join("\n");
}

/** Assemble a condition slot value from builder rows (pure). */
export interface ConditionRow {
  lhs: string;
  relop: string;
  rhs: string;
  connective: "" | "And" | "Or";
}

export function conditionFromRows(rows: ConditionRow[]): string {
  const parts: string[] = [];
  for (const row of rows) {
    parts.push(`${row.lhs.trim()} ${row.relop} ${row.rhs.trim()}`);
    if (row.connective === "") {
      break;
    }
    parts.push(row.connective);
  }
  if (parts.length % 2 === 0) {
    parts.pop(); // a trailing connective with no following row is dropped
  }
  return parts.join(" ");
}

/** Diagnostics list; rows carry the byte span for click-to-highlight. */
export function renderDiagnostics(diagnostics: WireDiagnostic[]): string {
  if (diagnostics.length === 0) {
    return `<p class="no-diagnostics">No problems.</p>`;
  }
  const rows = diagnostics
    .map(
      (diagnostic) =>
        `<li class="diagnostic ${escapeHtml(diagnostic.severity)}" ` +
        `data-start="${diagnostic.startOffset}" data-end="${diagnostic.endOffset}">` +
        `${escapeHtml(diagnostic.formatted)}</li>`,
    )
    .join("\n");
  return `<ul class="diagnostics">\n${rows}\n</ul>`;
}

/** One buffer panel: numbered statements with delete/move controls. */
export function renderBuffer(name: "globals" | "instructions", entries: string[]): string {
  const title = name === "globals" ? "Global variables" : "Instructions";
  if (entries.length === 0) {
    return (
      `<section class="buffer" data-buffer="${name}">` +
      `<h2>${title}</h2><p class="empty">Nothing generated yet.</p></section>`
    );
  }
  const items = entries
    .map(
      (text, index) =>
        `<li class="statement" data-buffer="${name}" data-index="${index}">` +
        `<pre>${escapeHtml(text)}</pre>` +
        `<span class="statement-tools">` +
        `<button data-action="up" title="Move up">&uarr;</button>` +
        `<button data-action="down" title="Move down">&darr;</button>` +
        `<button data-action="delete" title="Delete">&times;</button>` +
        `</span></li>`,
    )
    .join("\n");
  return (
    `<section class="buffer" data-buffer="${name}">` +
    `<h2>${title}</h2>\n<ol>\n${items}\n</ol></section>`
  );
}

export function renderConsole(entries: ConsoleEntry[]): string {
  if (entries.length === 0) {
    return `<p class="empty">Run output appears here.</p>`;
  }
  const lines = entries
    .map(
      (entry) =>
        `<div class="console-${entry.kind}">${escapeHtml(entry.text)}</div>`,
    )
    .join("\n");
  return `<div class="console-lines">\n${lines}\n</div>`;
}

/** Whole-editor view assembled from the pieces above. */
export function renderEditor(state: EditorState): string {
  return [
    renderBuffer("globals", state.globals),
    renderBuffer("instructions", state.instructions),
  ].join("\n");
}
