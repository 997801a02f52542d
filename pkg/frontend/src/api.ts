// Thin typed client over the curation HTTP API. All methods throw ApiError
// with the HTTP status on non-2xx responses so callers can branch on 409.

import type {
    DocumentReport,
    KgStats,
    RecordPayload,
    ReviewAction,
    VerdictPayload,
} from "./types.js";

export class ApiError extends Error {
    status: number;
    detail: string;

    constructor(status: number, detail: string) {
        super(`API error ${status}: ${detail}`);
        this.status = status;
        this.detail = detail;
    }
}

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ApiClient {
    private baseUrl: string;
    private fetchImpl: FetchLike;

    constructor(baseUrl: string, fetchImpl?: FetchLike) {
        this.baseUrl = baseUrl.replace(/\/$/, "");
        this.fetchImpl = fetchImpl ?? ((input, init) => fetch(input, init));
    }

    private async request<T>(path: string, init?: RequestInit): Promise<T> {
        const response = await this.fetchImpl(`${this.baseUrl}${path}`, init);
        if (!response.ok) {
            let detail = response.statusText;
            try {
                const body = await response.json();
                detail = body.detail ?? detail;
            } catch {
                // non-JSON error body; keep the status text
            }
            throw new ApiError(response.status, detail);
        }
        return (await response.json()) as T;
    }

    getReport(mediaId: string): Promise<DocumentReport> {
        return this.request(`/documents/${encodeURIComponent(mediaId)}/report`);
    }

    getPendingRecords(): Promise<RecordPayload[]> {
        return this.request<{ records: RecordPayload[] }>("/records?state=pending").then(
            body => body.records,
        );
    }

    review(recordId: string, action: ReviewAction, reviewer: string, note?: string): Promise<RecordPayload> {
        return this.request(`/records/${encodeURIComponent(recordId)}/review`, {
            method: "POST",
            headers: { "content-type": "application/json" },
            body: JSON.stringify({ action, reviewer, note: note ?? null }),
        });
    }

    check(subject: string, predicate: string, object: string): Promise<VerdictPayload> {
        return this.request("/check", {
            method: "POST",
            headers: { "content-type": "application/json" },
            body: JSON.stringify({ subject, predicate, object }),
        });
    }

    getStats(): Promise<KgStats> {
        return this.request("/kg/stats");
    }
}
