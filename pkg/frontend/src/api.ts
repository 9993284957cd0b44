/** Typed client for the report service HTTP/JSON API (see docs/api.md). */

export type DetectionKind = "unsanctioned" | "misspelling";

export interface Detection {
  start: number;
  end: number;
  term: string;
  kind: DetectionKind;
  suggestions: string[];
}

export interface NormalizeResponse {
  version: string;
  detections: Detection[];
  misspellings: Detection[];
}

export interface Scorecard {
  scores: Record<string, number>;
  percent: Record<string, string>;
  inferred: number;
  ties: number[];
}

export type VerdictStatus = "consistent" | "inconsistent" | "unlabeled";

export interface ClassifyResponse {
  version: string;
  scorecard: Scorecard;
  verdict: { status: VerdictStatus; reported: number | null };
}

export interface ReplacementSpan {
  start: number;
  end: number;
  replacement: string;
}

export interface SubmitRequest {
  report_id: string;
  text: string;
  accepted_category: number;
  accepted_replacements: ReplacementSpan[];
}

export interface SubmitResponse {
  version: string;
  stored: string;
  category: number;
  report_count: number;
}

export interface ModelMeta {
  version: string;
  format_version: string;
  lexicon_digest: string;
  report_counts: Record<string, number>;
}

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly body: unknown,
  ) {
    super(`service responded ${status}`);
  }
}

type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ApiClient {
  constructor(
    private readonly baseUrl: string = "",
    private readonly fetchFn: FetchLike = (input, init) => fetch(input, init),
  ) {}

  private async post<T>(path: string, body: unknown): Promise<T> {
    const response = await this.fetchFn(`${this.baseUrl}${path}`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(body),
    });
    const payload = await response.json();
    if (!response.ok) throw new ApiError(response.status, payload);
    return payload as T;
  }

  private async get<T>(path: string): Promise<T> {
    const response = await this.fetchFn(`${this.baseUrl}${path}`);
    const payload = await response.json();
    if (!response.ok) throw new ApiError(response.status, payload);
    return payload as T;
  }

  normalize(text: string): Promise<NormalizeResponse> {
    return this.post<NormalizeResponse>("/normalize", { text });
  }

  classify(text: string): Promise<ClassifyResponse> {
    return this.post<ClassifyResponse>("/classify", { text });
  }

  submit(request: SubmitRequest): Promise<SubmitResponse> {
    return this.post<SubmitResponse>("/submit", request);
  }

  model(): Promise<ModelMeta> {
    return this.get<ModelMeta>("/model");
  }

  async health(): Promise<boolean> {
    try {
      const response = await this.fetchFn(`${this.baseUrl}/health`);
      return response.ok;
    } catch {
      return false;
    }
  }
}
