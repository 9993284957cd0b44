import { describe, expect, it } from "vitest";

import { SpanError, applySpans, shiftAfterReplace } from "../src/spans.js";

describe("applySpans", () => {
  it("replaces a single span", () => {
    expect(applySpans("a nodule seen", [{ start: 2, end: 8, replacement: "mass" }])).toBe(
      "a mass seen",
    );
  });

  it("keeps text identical with no spans", () => {
    expect(applySpans("unchanged", [])).toBe("unchanged");
  });

  it("applies multiple spans right-to-left so offsets survive", () => {
    const text = "nodule and nodule";
    const result = applySpans(text, [
      { start: 0, end: 6, replacement: "mass" },
      { start: 11, end: 17, replacement: "mass" },
    ]);
    expect(result).toBe("mass and mass");
  });

  it("accepts spans given out of order", () => {
    const text = "nodule and nodule";
    const result = applySpans(text, [
      { start: 11, end: 17, replacement: "mass" },
      { start: 0, end: 6, replacement: "mass" },
    ]);
    expect(result).toBe("mass and mass");
  });

  it("rejects overlapping spans", () => {
    expect(() =>
      applySpans("abcdef", [
        { start: 0, end: 3, replacement: "x" },
        { start: 2, end: 5, replacement: "y" },
      ]),
    ).toThrow(SpanError);
  });

  it("rejects out-of-bounds spans", () => {
    expect(() => applySpans("abc", [{ start: 1, end: 9, replacement: "x" }])).toThrow(
      SpanError,
    );
    expect(() => applySpans("abc", [{ start: 2, end: 2, replacement: "x" }])).toThrow(
      SpanError,
    );
  });
});

describe("shiftAfterReplace", () => {
  it("leaves spans before the replacement untouched", () => {
    expect(shiftAfterReplace({ start: 0, end: 4 }, 10, 16, 4)).toEqual({
      start: 0,
      end: 4,
    });
  });

  it("shifts spans after the replacement by the length delta", () => {
    // "nodule"(6) -> "mass"(4): delta -2
    expect(shiftAfterReplace({ start: 20, end: 26 }, 10, 16, 4)).toEqual({
      start: 18,
      end: 24,
    });
  });

  it("drops spans overlapping the replaced region", () => {
    expect(shiftAfterReplace({ start: 12, end: 18 }, 10, 16, 4)).toBeNull();
  });
});
