// @vitest-environment jsdom
/** End-to-end flow against the real Python service (criterion: typing
 * surfaces the replacement suggestion, accepting rewrites the draft,
 * classify renders seven rows, submit retrains and a subsequent classify
 * reflects the new model). The service is spawned for the test run and
 * skipped cleanly when python3 is unavailable. */

import { type ChildProcess, spawn, spawnSync } from "node:child_process";
import { mkdtempSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { ApiClient } from "../src/api.js";
import { EditorController, mount } from "../src/main.js";

const PORT = 18000 + (process.pid % 2000);
const BASE = `http://127.0.0.1:${PORT}`;

const SERVICE_SCRIPT = `
import shutil, sys
from pathlib import Path
import uvicorn
from biradscheck.resources import fixture_corpus_dir
from biradscheck.service import ServiceConfig, create_app

workdir = Path(sys.argv[1])
corpus = workdir / "corpus"
shutil.copytree(fixture_corpus_dir(), corpus)
config = ServiceConfig(corpus_dir=corpus, model_path=workdir / "model.json",
                       port=int(sys.argv[2]))
uvicorn.run(create_app(config), host="127.0.0.1", port=config.port, log_level="error")
`;

function pythonAvailable(): boolean {
  const probe = spawnSync("python3", ["-c", "import biradscheck, uvicorn"], {
    timeout: 30_000,
  });
  return probe.status === 0;
}

const HAVE_PYTHON = pythonAvailable();

const PAGE = `
  <p id="status-banner" hidden></p>
  <div class="editor-stack">
    <div id="highlight-backdrop"></div>
    <textarea id="report-input"></textarea>
  </div>
  <aside id="detection-list"></aside>
  <button id="classify-button">Score report</button>
  <div id="score-panel"></div>
`;

const REPORT_TEXT =
  "EXAM: Diagnostic mammogram.\n\n" +
  "FINDINGS: A nodule is seen in the upper outer left breast. " +
  "Grouped punctate calcifications are noted in the lower inner right breast. " +
  "The focal asymmetry is probably benign. " +
  "Short interval follow-up is suggested for the left breast.\n\n" +
  "IMPRESSION: Probably benign finding. BI-RADS category 3.";

describe.skipIf(!HAVE_PYTHON)("editor flow against the live service", () => {
  let service: ChildProcess;
  let api: ApiClient;
  let controller: EditorController;

  beforeAll(async () => {
    const workdir = mkdtempSync(join(tmpdir(), "biradscheck-flow-"));
    service = spawn("python3", ["-c", SERVICE_SCRIPT, workdir, String(PORT)], {
      stdio: ["ignore", "inherit", "inherit"],
    });
    api = new ApiClient(BASE, (input, init) => fetch(input, init));
    const deadline = Date.now() + 45_000;
    while (Date.now() < deadline) {
      if (await api.health()) return;
      await new Promise((resolve) => setTimeout(resolve, 250));
    }
    throw new Error("service did not become healthy");
  }, 60_000);

  afterAll(() => {
    service?.kill();
  });

  function type(text: string) {
    const input = document.getElementById("report-input") as HTMLTextAreaElement;
    input.value = text;
    input.dispatchEvent(new Event("input"));
  }

  const settle = (ms = 150) => new Promise((resolve) => setTimeout(resolve, ms));

  it("drives the full accept/classify/submit loop", async () => {
    document.body.innerHTML = PAGE;
    controller = mount(document, api, 10);

    // 1. typing "nodule" surfaces the "mass" suggestion inline
    type(REPORT_TEXT);
    await settle(600);
    const mark = document.querySelector("#highlight-backdrop mark.unsanctioned");
    expect(mark).not.toBeNull();
    expect(mark!.textContent).toBe("nodule");
    const accept = document.querySelector<HTMLButtonElement>("button.accept")!;
    expect(accept.dataset.choice).toBe("mass");

    // 2. accepting it updates the draft
    accept.click();
    await settle(600);
    const input = document.getElementById("report-input") as HTMLTextAreaElement;
    expect(input.value).toContain("A mass is seen");
    expect(input.value).not.toContain("nodule");
    expect(document.querySelectorAll("#highlight-backdrop mark")).toHaveLength(0);

    // 3. classify renders all seven category rows
    document.getElementById("classify-button")!.click();
    await settle(1500);
    const rows = document.querySelectorAll("#score-panel tr.score-row");
    expect(rows).toHaveLength(7);
    const verdict = document.querySelector("#score-panel .verdict")!;
    expect(verdict.getAttribute("data-status")).toBe("consistent");
    expect(document.querySelector("tr.inferred")!.getAttribute("data-category")).toBe("3");
    const scoreBefore = await api
      .classify(controller.state.text)
      .then((r) => r.scorecard.scores["3"]!);
    const countBefore = await api.model().then((m) => m.report_counts["3"]!);

    // 4. submit into category 3 retrains; a later classify reflects it
    document.querySelector<HTMLButtonElement>('button.submit[data-category="3"]')!.click();
    await settle(2500);
    const banner = document.getElementById("status-banner")!;
    expect(banner.textContent).toContain("Stored as BI-RADS 3");
    const countAfter = await api.model().then((m) => m.report_counts["3"]!);
    expect(countAfter).toBe(countBefore + 1);
    const after = await api.classify(controller.state.text);
    expect(after.scorecard.scores["3"]!).toBeGreaterThan(scoreBefore);
    expect(after.scorecard.inferred).toBe(3);
  }, 90_000);
});
