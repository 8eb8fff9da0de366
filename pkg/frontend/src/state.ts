/**
 * Editor state and its pure transitions.
 *
 * Buffers are lists of generated statements (the user can delete and
 * reorder entries but never edits text in place). The compiled program
 * is always the globals buffer followed by the instructions buffer.
 */

import type { WireDiagnostic } from "./api.js";
import { byteLength, splitStatements } from "./text.js";

export type BufferName = "globals" | "instructions";

export interface ConsoleEntry {
  kind: "out" | "err" | "info";
  text: string;
}

export interface EditorState {
  globals: string[];
  instructions: string[];
  lastDiagnostics: WireDiagnostic[];
  runConsole: ConsoleEntry[];
}

export function emptyState(): EditorState {
  return { globals: [], instructions: [], lastDiagnostics: [], runConsole: [] };
}

/** The program the server sees: globals first, then instructions. */
export function combinedSource(state: EditorState): string {
  const statements = [...state.globals, ...state.instructions];
  return statements.length === 0 ? "" : statements.join("\n") + "\n";
}

/** Declarations land in globals; everything else in instructions. */
export function defaultBuffer(templateId: string): BufferName {
  return templateId.startsWith("declare-") ? "globals" : "instructions";
}

/**
 * Apply a generation result. When the server says the new text replaces
 * the final statement of the context (arm appending), the last entry of
 * the combined program is swapped out; otherwise the text is appended to
 * the requested buffer.
 */
export function insertGenerated(
  state: EditorState,
  buffer: BufferName,
  text: string,
  replacesLast: boolean,
): EditorState {
  const next: EditorState = {
    ...state,
    globals: [...state.globals],
    instructions: [...state.instructions],
  };
  if (replacesLast) {
    if (next.instructions.length > 0) {
      next.instructions[next.instructions.length - 1] = text;
    } else if (next.globals.length > 0) {
      next.globals[next.globals.length - 1] = text;
    } else {
      next.instructions.push(text);
    }
    return next;
  }
  next[buffer].push(text);
  return next;
}

export function deleteStatement(
  state: EditorState,
  buffer: BufferName,
  index: number,
): EditorState {
  const entries = state[buffer].filter((_, i) => i !== index);
  return { ...state, [buffer]: entries };
}

export function moveStatement(
  state: EditorState,
  buffer: BufferName,
  index: number,
  delta: -1 | 1,
): EditorState {
  const entries = [...state[buffer]];
  const target = index + delta;
  if (target < 0 || target >= entries.length) {
    return state;
  }
  [entries[index], entries[target]] = [entries[target], entries[index]];
  return { ...state, [buffer]: entries };
}

/** Load a plain .mpl file: statements go to instructions, declarations
 * to globals, preserving relative order inside each buffer. */
export function stateFromSource(source: string): EditorState {
  const state = emptyState();
  for (const statement of splitStatements(source)) {
    if (/^declare\b/i.test(statement.trim())) {
      state.globals.push(statement);
    } else {
      state.instructions.push(statement);
    }
  }
  return state;
}

export interface StatementLocation {
  buffer: BufferName;
  index: number;
}

/**
 * Map a byte offset in the combined source back to the statement that
 * contains it, for diagnostic click-to-highlight.
 */
export function statementAtByteOffset(
  state: EditorState,
  offset: number,
): StatementLocation | null {
  let cursor = 0;
  const walk = (buffer: BufferName): StatementLocation | null => {
    for (let index = 0; index < state[buffer].length; index++) {
      const end = cursor + byteLength(state[buffer][index]);
      if (offset >= cursor && offset <= end) {
        return { buffer, index };
      }
      cursor = end + 1; // the joining newline
    }
    return null;
  };
  return walk("globals") ?? walk("instructions");
}
