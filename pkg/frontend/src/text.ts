/**
 * Read-only text analysis over natural-language source.
 *
 * These helpers only ever *read* program text (splitting it into
 * statements, finding Read statements, mapping byte offsets); they never
 * assemble language sentences. Sentence construction stays on the server
 * side of /api/generate.
 */

export interface ReadSite {
  /** Assignable target as written, e.g. "X" or "element 2 of Scores". */
  target: string;
  /** Prompt text with escapes resolved, or null when none was given. */
  prompt: string | null;
}

/** Block opener/closer pairs; openers have no trailing period. */
const OPENERS = [/^if\b/i, /^repeat\b/i, /^select\b/i];
const CLOSER = /^end\s+of\s+(condition|repeat|select)\b/i;

/**
 * Split source text into top-level statements.
 *
 * A simple statement ends at a "." outside string quotes; a block
 * statement runs from its opener to the matching "End of ..." sentence.
 * The splitter is intentionally forgiving: unterminated input becomes a
 * final chunk so nothing the user typed can disappear from the buffers.
 */
export function splitStatements(source: string): string[] {
  const statements: string[] = [];
  const sentences = splitSentences(source);
  let depth = 0;
  let pending: string[] = [];
  for (const sentence of sentences) {
    const head = sentence.trimStart();
    if (OPENERS.some((opener) => opener.test(head))) {
      depth += 1;
    }
    pending.push(sentence);
    if (CLOSER.test(head)) {
      depth = Math.max(depth - 1, 0);
    }
    const endsStatement = /\.\s*$/.test(sentence);
    if (depth === 0 && endsStatement) {
      statements.push(pending.join("\n"));
      pending = [];
    }
  }
  if (pending.length > 0) {
    statements.push(pending.join("\n"));
  }
  return statements;
}

/**
 * Split into "sentences": maximal chunks ending at a top-level "." or at
 * a line break for block headers (If/Repeat/Select/Otherwise/When lines
 * carry no period). Quotes and escapes are respected.
 */
function splitSentences(source: string): string[] {
  const sentences: string[] = [];
  let current = "";
  let inString = false;
  for (let i = 0; i < source.length; i++) {
    const ch = source[i];
    if (inString) {
      current += ch;
      if (ch === "\\" && i + 1 < source.length) {
        current += source[i + 1];
        i += 1;
      } else if (ch === '"') {
        inString = false;
      }
      continue;
    }
    if (ch === '"') {
      inString = true;
      current += ch;
      continue;
    }
    if (ch === ".") {
      // A period only ends a sentence when it is not part of a number
      // like "1.5" (digit on both sides).
      const prev = current[current.length - 1] ?? "";
      const next = source[i + 1] ?? "";
      if (/\d/.test(prev) && /\d/.test(next)) {
        current += ch;
        continue;
      }
      sentences.push(current + ch);
      current = "";
      continue;
    }
    if (ch === "\n") {
      if (current.trim() !== "") {
        sentences.push(current);
      }
      current = "";
      continue;
    }
    current += ch;
  }
  if (current.trim() !== "") {
    sentences.push(current);
  }
  return sentences.map((sentence) => sentence.replace(/^\s+/, "")).filter(
    (sentence) => sentence.trim() !== "",
  );
}

/**
 * Find every Read statement, in source order, with its prompt resolved.
 * Used to drive one input dialog per Read before a run.
 */
export function scanReads(source: string): ReadSite[] {
  const sites: ReadSite[] = [];
  for (const statement of splitStatements(source)) {
    for (const sentence of statement.split("\n")) {
      const match = sentence
        .trim()
        .match(
          /^Read\s+(.+?)\s+from\s+the\s+keyboard(?:\s+with\s+prompt\s+"((?:[^"\\]|\\.)*)")?\s*\.$/i,
        );
      if (match) {
        sites.push({
          target: match[1],
          prompt: match[2] === undefined ? null : unescapeString(match[2]),
        });
      }
    }
  }
  return sites;
}

/** Resolve the declared type of each variable/array name (lowercased). */
export function scanDeclarations(source: string): Map<string, "Number" | "String"> {
  const types = new Map<string, "Number" | "String">();
  const pattern =
    /^Declare\s+(?:a\s+variable|an\s+array)\s+called\s+(\w+)\s+of\s+type\s+(Number|String)\b/i;
  for (const statement of splitStatements(source)) {
    const match = statement.trim().match(pattern);
    if (match) {
      const type = match[2].toLowerCase() === "number" ? "Number" : "String";
      types.set(match[1].toLowerCase(), type);
    }
  }
  return types;
}

/** Declared type of a Read target, via the "element ... of Name" shape. */
export function targetType(
  target: string,
  declarations: Map<string, "Number" | "String">,
): "Number" | "String" | null {
  const element = target.match(/^element\s+.+\s+of\s+(\w+)$/i);
  const name = element ? element[1] : target.match(/^(\w+)$/)?.[1];
  if (!name) {
    return null;
  }
  return declarations.get(name.toLowerCase()) ?? null;
}

function unescapeString(raw: string): string {
  return raw.replace(/\\(.)/g, (whole, ch: string) => {
    if (ch === "n") return "\n";
    if (ch === "t") return "\t";
    if (ch === '"') return '"';
    if (ch === "\\") return "\\";
    return whole;
  });
}

const encoder = new TextEncoder();

/** UTF-8 byte length of a string (diagnostic offsets count bytes). */
export function byteLength(text: string): number {
  return encoder.encode(text).length;
}

/**
 * Convert a UTF-8 byte offset into a JavaScript string index.
 * Clamps to the string bounds; lands on the nearest character start.
 */
export function byteToCharIndex(text: string, byteOffset: number): number {
  if (byteOffset <= 0) {
    return 0;
  }
  let bytes = 0;
  let index = 0;
  for (const ch of text) {
    const width = encoder.encode(ch).length;
    if (bytes + width > byteOffset) {
      return index;
    }
    bytes += width;
    index += ch.length;
    if (bytes >= byteOffset) {
      return index;
    }
  }
  return text.length;
}
