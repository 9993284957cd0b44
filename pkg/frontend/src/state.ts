/** Pure editor/score-panel state transitions.
 *
 * The draft text changes only through user typing and through accepting a
 * suggestion (the audit invariant: every text delta maps to a user
 * action). Suggestion responses carry a sequence number; responses for
 * superseded drafts are discarded. Detections fetched for an older draft
 * are stale: accepting one fails with "stale" and the caller refetches.
 */

import type { ClassifyResponse, Detection, VerdictStatus } from "./api.js";
import { applySpans, shiftAfterReplace } from "./spans.js";

export type DetectionStatus = "open" | "accepted" | "rejected";

export interface TrackedDetection extends Detection {
  id: number;
  status: DetectionStatus;
}

export interface EditorState {
  text: string;
  detections: TrackedDetection[];
  /** true once the text changed after the last applied suggestion fetch */
  dirty: boolean;
  /** sequence number of the most recent fetch request issued */
  requestSeq: number;
  /** sequence number of the fetch response currently applied */
  appliedSeq: number;
  offline: boolean;
}

export function initialEditorState(text = ""): EditorState {
  return {
    text,
    detections: [],
    dirty: text.length > 0,
    requestSeq: 0,
    appliedSeq: 0,
    offline: false,
  };
}

export function userTyped(state: EditorState, text: string): EditorState {
  if (text === state.text) return state;
  return { ...state, text, dirty: true };
}

/** Reserve the sequence number for an outgoing /normalize call. */
export function beginFetch(state: EditorState): { state: EditorState; seq: number } {
  const seq = state.requestSeq + 1;
  return { state: { ...state, requestSeq: seq }, seq };
}

export function suggestionsReceived(
  state: EditorState,
  seq: number,
  fetchedText: string,
  detections: Detection[],
  misspellings: Detection[],
): EditorState {
  if (seq <= state.appliedSeq) return state; // out-of-order response
  if (seq < state.requestSeq) return state; // superseded by a newer request
  if (fetchedText !== state.text) return state; // draft moved on meanwhile
  const tracked = [...detections, ...misspellings]
    .sort((a, b) => a.start - b.start)
    .map((d, index) => ({ ...d, id: index + 1, status: "open" as DetectionStatus }));
  return { ...state, detections: tracked, dirty: false, appliedSeq: seq, offline: false };
}

export function fetchFailed(state: EditorState, seq: number): EditorState {
  if (seq < state.requestSeq) return state;
  return { ...state, offline: true };
}

export type ApplyResult =
  | { ok: true; state: EditorState }
  | { ok: false; reason: "stale" | "unknown" | "closed"; state: EditorState };

/** Accept one suggestion: replace the span, shift sibling spans, mark the
 * draft dirty so highlights refresh. Fails "stale" when the draft changed
 * since the detections were fetched. */
export function applySuggestion(
  state: EditorState,
  detectionId: number,
  choice: string,
): ApplyResult {
  const detection = state.detections.find((d) => d.id === detectionId);
  if (!detection) return { ok: false, reason: "unknown", state };
  if (detection.status !== "open") return { ok: false, reason: "closed", state };
  if (state.dirty) return { ok: false, reason: "stale", state };
  const current = state.text.slice(detection.start, detection.end);
  if (current.toLowerCase() !== detection.term.toLowerCase()) {
    return { ok: false, reason: "stale", state };
  }
  const text = applySpans(state.text, [
    { start: detection.start, end: detection.end, replacement: choice },
  ]);
  const detections = state.detections.flatMap((d) => {
    if (d.id === detectionId) return [{ ...d, status: "accepted" as DetectionStatus }];
    if (d.status !== "open") return [d];
    const shifted = shiftAfterReplace(d, detection.start, detection.end, choice.length);
    return shifted ? [{ ...d, ...shifted }] : [];
  });
  return { ok: true, state: { ...state, text, detections, dirty: true } };
}

export function rejectSuggestion(state: EditorState, detectionId: number): EditorState {
  return {
    ...state,
    detections: state.detections.map((d) =>
      d.id === detectionId && d.status === "open"
        ? { ...d, status: "rejected" as DetectionStatus }
        : d,
    ),
  };
}

export function openDetections(state: EditorState): TrackedDetection[] {
  return state.detections.filter((d) => d.status === "open");
}

export const CATEGORIES = [0, 1, 2, 3, 4, 5, 6] as const;

export interface ScoreRow {
  category: number;
  score: number;
  /** server-rendered percentage, displayed verbatim (no renormalization) */
  percent: string;
  inferred: boolean;
}

export interface ScorePanelState {
  rows: ScoreRow[];
  inferred: number;
  reported: number | null;
  status: VerdictStatus;
}

export function scorePanelFromResponse(response: ClassifyResponse): ScorePanelState {
  const { scorecard, verdict } = response;
  const rows = CATEGORIES.map((category) => {
    const key = String(category);
    if (!(key in scorecard.scores) || !(key in scorecard.percent)) {
      throw new Error(`scorecard is missing category ${category}`);
    }
    return {
      category,
      score: scorecard.scores[key]!,
      percent: scorecard.percent[key]!,
      inferred: scorecard.inferred === category,
    };
  }).sort((a, b) => b.category - a.category);
  return {
    rows,
    inferred: scorecard.inferred,
    reported: verdict.reported,
    status: verdict.status,
  };
}
