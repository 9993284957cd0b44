/** Render the draft with inline detection highlights into a backdrop
 * element sitting behind the transparent textarea. Unsanctioned terms and
 * misspellings get distinct mark classes; suggestion popovers live on the
 * detection list entries. */

import type { TrackedDetection } from "./state.js";

function escapeHtml(text: string): string {
  return text
    .replaceAll("&", "&amp;")
    .replaceAll("<", "&lt;")
    .replaceAll(">", "&gt;");
}

export function renderHighlights(
  text: string,
  detections: TrackedDetection[],
  stale: boolean,
): string {
  const open = detections
    .filter((d) => d.status === "open")
    .sort((a, b) => a.start - b.start);
  const parts: string[] = [];
  let cursor = 0;
  for (const d of open) {
    if (d.start < cursor || d.end > text.length) continue; // defensive
    parts.push(escapeHtml(text.slice(cursor, d.start)));
    const cls = stale ? `${d.kind} stale` : d.kind;
    parts.push(
      `<mark class="${cls}" data-id="${d.id}" title="${escapeHtml(
        d.suggestions.join(", "),
      )}">${escapeHtml(text.slice(d.start, d.end))}</mark>`,
    );
    cursor = d.end;
  }
  parts.push(escapeHtml(text.slice(cursor)));
  // trailing newline needs a visible placeholder for height sync
  return parts.join("") + "\n";
}

export function renderDetectionList(detections: TrackedDetection[]): string {
  const open = detections.filter((d) => d.status === "open");
  if (open.length === 0) {
    return `<p class="all-clear">No suggestions.</p>`;
  }
  const items = open.map((d) => {
    const label = d.kind === "unsanctioned" ? "non-standard term" : "possible misspelling";
    const buttons = d.suggestions
      .map(
        (s, index) =>
          `<button class="accept" data-id="${d.id}" data-choice="${escapeHtml(s)}"` +
          ` data-rank="${index + 1}">${escapeHtml(s)}</button>`,
      )
      .join(" ");
    return (
      `<li class="detection ${d.kind}" data-id="${d.id}">` +
      `<span class="term">${escapeHtml(d.term)}</span>` +
      `<span class="label">${label}</span>` +
      `<span class="suggestions">${buttons || "<em>no suggestions</em>"}</span>` +
      `<button class="reject" data-id="${d.id}">dismiss</button>` +
      `</li>`
    );
  });
  return `<ul class="detections">${items.join("")}</ul>`;
}
