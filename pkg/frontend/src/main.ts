/** Wire the editor page: textarea + highlight backdrop, suggestion list,
 * score panel, submit flow. All linguistics happen server-side; this is a
 * thin client over the HTTP API. */

import { ApiClient } from "./api.js";
import { Debouncer } from "./debounce.js";
import { renderDetectionList, renderHighlights } from "./highlight.js";
import { renderScorePanel } from "./scorepanel.js";
import {
  applySuggestion,
  beginFetch,
  fetchFailed,
  initialEditorState,
  rejectSuggestion,
  scorePanelFromResponse,
  suggestionsReceived,
  userTyped,
  type EditorState,
} from "./state.js";

export interface PageElements {
  input: HTMLTextAreaElement;
  backdrop: HTMLElement;
  detectionList: HTMLElement;
  scorePanel: HTMLElement;
  classifyButton: HTMLButtonElement;
  statusBanner: HTMLElement;
}

export class EditorController {
  state: EditorState = initialEditorState();
  private readonly debouncer: Debouncer;

  constructor(
    private readonly elements: PageElements,
    private readonly api: ApiClient,
    debounceMs = 500,
  ) {
    this.debouncer = new Debouncer(debounceMs);
    elements.input.addEventListener("input", () => {
      this.state = userTyped(this.state, elements.input.value);
      this.render();
      this.debouncer.schedule(() => void this.refreshSuggestions());
    });
    elements.input.addEventListener("scroll", () => {
      elements.backdrop.scrollTop = elements.input.scrollTop;
      elements.backdrop.scrollLeft = elements.input.scrollLeft;
    });
    elements.detectionList.addEventListener("click", (event) => {
      const target = event.target as HTMLElement;
      if (target.matches("button.accept")) {
        void this.accept(Number(target.dataset.id), target.dataset.choice ?? "");
      } else if (target.matches("button.reject")) {
        this.state = rejectSuggestion(this.state, Number(target.dataset.id));
        this.render();
      }
    });
    elements.classifyButton.addEventListener("click", () => void this.classify());
    elements.scorePanel.addEventListener("click", (event) => {
      const target = event.target as HTMLElement;
      if (target.matches("button.submit")) {
        void this.submit(Number(target.dataset.category));
      }
    });
  }

  /** Fetch suggestions for the current draft (debounced from typing). */
  async refreshSuggestions(): Promise<void> {
    const draft = this.state.text;
    if (!draft.trim()) {
      this.state = { ...this.state, detections: [], dirty: false };
      this.render();
      return;
    }
    const { state, seq } = beginFetch(this.state);
    this.state = state;
    try {
      const response = await this.api.normalize(draft);
      this.state = suggestionsReceived(
        this.state,
        seq,
        draft,
        response.detections,
        response.misspellings,
      );
    } catch {
      this.state = fetchFailed(this.state, seq);
    }
    this.render();
  }

  async accept(detectionId: number, choice: string): Promise<void> {
    const result = applySuggestion(this.state, detectionId, choice);
    this.state = result.state;
    if (result.ok) {
      this.elements.input.value = this.state.text;
      this.render();
      this.debouncer.schedule(() => void this.refreshSuggestions());
    } else if (result.reason === "stale") {
      this.banner("Suggestions were out of date; refreshing. Try again.", "info");
      await this.refreshSuggestions();
    }
  }

  async classify(): Promise<void> {
    try {
      const response = await this.api.classify(this.state.text);
      const panel = scorePanelFromResponse(response);
      this.elements.scorePanel.innerHTML = renderScorePanel(panel);
      this.banner("", "none");
    } catch (error) {
      const detail = (error as { body?: { error?: string } }).body?.error;
      if (detail === "MissingFindings") {
        this.banner("The report needs a FINDINGS section before it can be scored.", "warn");
      } else {
        this.banner("Service unavailable.", "offline");
      }
    }
  }

  async submit(category: number): Promise<void> {
    try {
      const response = await this.api.submit({
        report_id: `editor-${Date.now()}`,
        text: this.state.text,
        accepted_category: category,
        accepted_replacements: [],
      });
      this.banner(
        `Stored as BI-RADS ${category}; the category model now covers ` +
          `${response.report_count} reports.`,
        "ok",
      );
    } catch {
      this.banner("Submit failed.", "warn");
    }
  }

  banner(message: string, kind: "none" | "ok" | "info" | "warn" | "offline"): void {
    this.elements.statusBanner.textContent = message;
    this.elements.statusBanner.dataset.kind = kind;
    this.elements.statusBanner.hidden = kind === "none";
  }

  render(): void {
    this.elements.backdrop.innerHTML = renderHighlights(
      this.state.text,
      this.state.detections,
      this.state.dirty,
    );
    this.elements.detectionList.innerHTML = renderDetectionList(this.state.detections);
    if (this.state.offline) {
      this.banner("Service unreachable; the editor keeps working offline.", "offline");
    }
  }
}

export function mount(document: Document, api: ApiClient, debounceMs = 500): EditorController {
  const byId = <T extends HTMLElement>(id: string): T => {
    const element = document.getElementById(id);
    if (!element) throw new Error(`missing #${id}`);
    return element as T;
  };
  return new EditorController(
    {
      input: byId<HTMLTextAreaElement>("report-input"),
      backdrop: byId("highlight-backdrop"),
      detectionList: byId("detection-list"),
      scorePanel: byId("score-panel"),
      classifyButton: byId<HTMLButtonElement>("classify-button"),
      statusBanner: byId("status-banner"),
    },
    api,
    debounceMs,
  );
}

declare global {
  interface Window {
    biradscheckController?: EditorController;
  }
}

if (typeof window !== "undefined" && typeof document !== "undefined") {
  if (document.getElementById("report-input")) {
    window.biradscheckController = mount(document, new ApiClient(""));
  }
}
