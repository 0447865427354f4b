/** Thin typed client for the review service. All UI state flows through
 * these calls; nothing is kept client-side that the server has not
 * acknowledged. */

import type {
  AnalysisData,
  AnnotationSetData,
  DocumentDetail,
  DocumentSummary,
  ParagraphData,
  SpanLabelData,
} from "./types.js";

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly payload: unknown,
    message: string,
  ) {
    super(message);
  }
}

type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ApiClient {
  constructor(
    private readonly baseUrl: string,
    private readonly fetchImpl: FetchLike = (input, init) => fetch(input, init),
  ) {}

  private async call<T>(method: string, path: string, body?: unknown): Promise<T> {
    const init: RequestInit = { method };
    if (body !== undefined) {
      init.body = JSON.stringify(body);
      init.headers = { "Content-Type": "application/json" };
    }
    const response = await this.fetchImpl(`${this.baseUrl}${path}`, init);
    const payload = await response.json().catch(() => ({}));
    if (!response.ok) {
      const message =
        typeof payload === "object" && payload !== null && "error" in payload
          ? String((payload as { error: unknown }).error)
          : `${method} ${path} failed with ${response.status}`;
      throw new ApiError(response.status, payload, message);
    }
    return payload as T;
  }

  listDocuments(): Promise<{ documents: DocumentSummary[] }> {
    return this.call("GET", "/documents");
  }

  getDocument(key: string): Promise<DocumentDetail> {
    return this.call("GET", `/documents/${encodeURIComponent(key)}`);
  }

  getParagraph(key: string, pid: string): Promise<ParagraphData> {
    return this.call("GET", `/documents/${encodeURIComponent(key)}/paragraphs/${encodeURIComponent(pid)}`);
  }

  getSet(id: number): Promise<AnnotationSetData> {
    return this.call("GET", `/sets/${id}`);
  }

  transition(id: number, action: "approve" | "reject" | "edit"): Promise<AnnotationSetData> {
    return this.call("POST", `/sets/${id}/${action}`);
  }

  markNullInstantiation(id: number, feName: string, itype: string): Promise<AnnotationSetData> {
    return this.call("POST", `/sets/${id}/null_instantiation`, { fe_name: feName, itype });
  }

  putLayers(id: number, layers: Record<string, SpanLabelData[]>): Promise<AnnotationSetData> {
    return this.call("PUT", `/sets/${id}/layers`, { layers });
  }

  proposeForSentence(sentenceId: number, date = ""): Promise<{ created: AnnotationSetData[] }> {
    return this.call("POST", `/sentences/${sentenceId}/propose`, { date });
  }

  getAnalysis(src: string, tgt: string): Promise<AnalysisData> {
    return this.call("GET", `/analysis?src=${encodeURIComponent(src)}&tgt=${encodeURIComponent(tgt)}`);
  }
}
