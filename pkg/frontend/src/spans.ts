/** Span-replacement math mirroring the service's semantics: spans must be
 * in bounds and non-overlapping; replacements apply right-to-left so
 * earlier offsets survive. */

import type { ReplacementSpan } from "./api.js";

export class SpanError extends Error {}

export function applySpans(text: string, accepted: ReplacementSpan[]): string {
  const spans = [...accepted].sort((a, b) => a.start - b.start);
  let lastEnd = -1;
  for (const span of spans) {
    if (span.start < 0 || span.end > text.length || span.start >= span.end) {
      throw new SpanError(`span ${span.start}..${span.end} out of bounds`);
    }
    if (span.start < lastEnd) {
      throw new SpanError(`span ${span.start}..${span.end} overlaps a previous span`);
    }
    lastEnd = span.end;
  }
  let result = text;
  for (const span of [...spans].reverse()) {
    result = result.slice(0, span.start) + span.replacement + result.slice(span.end);
  }
  return result;
}

/** Shift a span after a replacement elsewhere in the text; returns null
 * when the span overlapped the replaced region (it no longer exists). */
export function shiftAfterReplace(
  span: { start: number; end: number },
  replacedStart: number,
  replacedEnd: number,
  replacementLength: number,
): { start: number; end: number } | null {
  if (span.end <= replacedStart) return { ...span };
  if (span.start >= replacedEnd) {
    const delta = replacementLength - (replacedEnd - replacedStart);
    return { start: span.start + delta, end: span.end + delta };
  }
  return null;
}
