import { describe, expect, it } from "vitest";

import { ApiClient, ApiError } from "../src/api.js";

function fakeFetch(
  handler: (input: string, init?: RequestInit) => { status: number; body: unknown },
) {
  const seen: Array<{ input: string; init?: RequestInit }> = [];
  const fetchFn = async (input: string, init?: RequestInit) => {
    seen.push({ input, init });
    const { status, body } = handler(input, init);
    return new Response(JSON.stringify(body), {
      status,
      headers: { "content-type": "application/json" },
    });
  };
  return { fetchFn, seen };
}

describe("ApiClient", () => {
  it("posts normalize bodies and parses detections", async () => {
    const { fetchFn, seen } = fakeFetch(() => ({
      status: 200,
      body: {
        version: "1",
        detections: [
          { start: 2, end: 8, term: "nodule", kind: "unsanctioned", suggestions: ["mass"] },
        ],
        misspellings: [],
      },
    }));
    const client = new ApiClient("http://service", fetchFn);
    const response = await client.normalize("a nodule seen");
    expect(seen[0]!.input).toBe("http://service/normalize");
    expect(JSON.parse(seen[0]!.init!.body as string)).toEqual({ text: "a nodule seen" });
    expect(response.detections[0]!.suggestions).toEqual(["mass"]);
  });

  it("raises ApiError with the body on 400", async () => {
    const { fetchFn } = fakeFetch(() => ({
      status: 400,
      body: { error: "MissingFindings", detail: "no findings" },
    }));
    const client = new ApiClient("", fetchFn);
    await expect(client.classify("x")).rejects.toMatchObject({
      status: 400,
      body: { error: "MissingFindings" },
    });
    await expect(client.classify("x")).rejects.toBeInstanceOf(ApiError);
  });

  it("health returns false when fetch rejects", async () => {
    const client = new ApiClient("", async () => {
      throw new Error("connection refused");
    });
    expect(await client.health()).toBe(false);
  });

  it("submit carries replacement spans through", async () => {
    const { fetchFn, seen } = fakeFetch(() => ({
      status: 200,
      body: { version: "1", stored: "/tmp/x.txt", category: 4, report_count: 11 },
    }));
    const client = new ApiClient("", fetchFn);
    const response = await client.submit({
      report_id: "r1",
      text: "FINDINGS: a nodule.",
      accepted_category: 4,
      accepted_replacements: [{ start: 12, end: 18, replacement: "mass" }],
    });
    expect(response.report_count).toBe(11);
    const sent = JSON.parse(seen[0]!.init!.body as string);
    expect(sent.accepted_replacements).toEqual([{ start: 12, end: 18, replacement: "mass" }]);
  });
});
