import { describe, expect, it } from "vitest";

import {
  byteLength,
  byteToCharIndex,
  scanDeclarations,
  scanReads,
  splitStatements,
  targetType,
} from "../src/text.js";

describe("splitStatements", () => {
  it("splits simple statements at their periods", () => {
    const source = "Set X to 1.\nSet Y to 2.\nDisplay X + Y on the screen.\n";
    expect(splitStatements(source)).toEqual([
      "Set X to 1.",
      "Set Y to 2.",
      "Display X + Y on the screen.",
    ]);
  });

  it("splits two statements sharing one line", () => {
    expect(splitStatements("Set X to 1. Set Y to 2.")).toEqual([
      "Set X to 1.",
      "Set Y to 2.",
    ]);
  });

  it("keeps an If block together as one statement", () => {
    const source = [
      "Set X to 11.",
      "If X is Greater than 10 then",
      '    Display "big" on the screen.',
      "Otherwise",
      '    Display "small" on the screen.',
      "End of condition.",
      "Display X on the screen.",
      "",
    ].join("\n");
    const statements = splitStatements(source);
    expect(statements).toHaveLength(3);
    expect(statements[1]).toBe(
      [
        "If X is Greater than 10 then",
        'Display "big" on the screen.',
        "Otherwise",
        'Display "small" on the screen.',
        "End of condition.",
      ].join("\n"),
    );
  });

  it("tracks nesting so inner closers do not end the outer block", () => {
    const source = [
      "Repeat 3 times",
      "If X is Equal to 1 then",
      "Set X to 2.",
      "End of condition.",
      "End of repeat.",
      "",
    ].join("\n");
    const statements = splitStatements(source);
    expect(statements).toHaveLength(1);
    expect(statements[0].endsWith("End of repeat.")).toBe(true);
  });

  it("does not split inside string literals", () => {
    const source = 'Display "One. Two. Three." on the screen.\n';
    expect(splitStatements(source)).toEqual([
      'Display "One. Two. Three." on the screen.',
    ]);
  });

  it("does not split decimal number literals", () => {
    expect(splitStatements("Set X to 1.5 + 2.25.\n")).toEqual([
      "Set X to 1.5 + 2.25.",
    ]);
  });

  it("preserves an unterminated tail instead of dropping it", () => {
    expect(splitStatements("Set X to 1.\nDisplay X on")).toEqual([
      "Set X to 1.",
      "Display X on",
    ]);
  });

  it("returns nothing for blank input", () => {
    expect(splitStatements("")).toEqual([]);
    expect(splitStatements("\n  \n")).toEqual([]);
  });
});

describe("scanReads", () => {
  it("finds a plain Read with no prompt", () => {
    expect(scanReads("Read X from the keyboard.\n")).toEqual([
      { target: "X", prompt: null },
    ]);
  });

  it("captures and unescapes the prompt", () => {
    const source = 'Read Name from the keyboard with prompt "Say \\"hi\\"\\n".\n';
    expect(scanReads(source)).toEqual([{ target: "Name", prompt: 'Say "hi"\n' }]);
  });

  it("keeps multi-word targets intact", () => {
    const source =
      'Read element 2 of Scores from the keyboard with prompt "s2: ".\n';
    expect(scanReads(source)).toEqual([
      { target: "element 2 of Scores", prompt: "s2: " },
    ]);
  });

  it("finds Reads inside block bodies, in order", () => {
    const source = [
      'Read First from the keyboard with prompt "First: ".',
      "If First is Greater than 0 then",
      'Read Second from the keyboard with prompt "Second: ".',
      "End of condition.",
      "Read Third from the keyboard.",
      "",
    ].join("\n");
    expect(scanReads(source).map((site) => site.target)).toEqual([
      "First",
      "Second",
      "Third",
    ]);
  });

  it("ignores statements that merely mention the keyboard", () => {
    expect(scanReads('Display "Read X from the keyboard." on the screen.\n')).toEqual(
      [],
    );
  });
});

describe("scanDeclarations and targetType", () => {
  const source = [
    "Declare a variable called Total of type Number with initial value 0.",
    "Declare an array called Names of type String with size 3.",
    "declare a variable called flag of type number.",
    "Set Total to 1.",
    "",
  ].join("\n");

  it("maps declared names to their types, case-insensitively", () => {
    const declarations = scanDeclarations(source);
    expect(declarations.get("total")).toBe("Number");
    expect(declarations.get("names")).toBe("String");
    expect(declarations.get("flag")).toBe("Number");
    expect(declarations.has("set")).toBe(false);
  });

  it("resolves simple and element targets", () => {
    const declarations = scanDeclarations(source);
    expect(targetType("Total", declarations)).toBe("Number");
    expect(targetType("TOTAL", declarations)).toBe("Number");
    expect(targetType("element 2 of Names", declarations)).toBe("String");
    expect(targetType("element I + 1 of Names", declarations)).toBe("String");
  });

  it("returns null for unknown or unresolvable targets", () => {
    const declarations = scanDeclarations(source);
    expect(targetType("Mystery", declarations)).toBeNull();
    expect(targetType("Total + 1", declarations)).toBeNull();
  });
});

describe("byteLength and byteToCharIndex", () => {
  it("matches string length for ASCII", () => {
    expect(byteLength("Display X.")).toBe(10);
    expect(byteToCharIndex("Display X.", 7)).toBe(7);
  });

  it("counts multi-byte characters", () => {
    expect(byteLength("héllo")).toBe(6);
    expect(byteLength("✓")).toBe(3);
  });

  it("maps byte offsets past a multi-byte character", () => {
    const text = 'Display "héllo" on the screen.';
    // bytes 0..9 are ASCII; é occupies bytes 10-11
    expect(byteToCharIndex(text, 10)).toBe(10);
    expect(byteToCharIndex(text, 12)).toBe(11);
    expect(byteToCharIndex(text, 13)).toBe(12);
  });

  it("lands on the character start when an offset splits a character", () => {
    expect(byteToCharIndex("héllo", 2)).toBe(1);
  });

  it("clamps out-of-range offsets", () => {
    expect(byteToCharIndex("abc", -4)).toBe(0);
    expect(byteToCharIndex("abc", 99)).toBe(3);
  });

  it("advances by two JavaScript indices for surrogate pairs", () => {
    const text = "😀x";
    expect(byteLength(text)).toBe(5);
    expect(byteToCharIndex(text, 4)).toBe(2);
  });
});
