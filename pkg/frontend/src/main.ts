// Page bootstrap: wires the document view, review queue, and claim check
// form to the API. Configuration is limited to the API base URL
// (?api=http://host:port, defaulting to the local service).

import { ApiClient } from "./api.js";
import { loadDocument } from "./documentView.js";
import { ReviewQueue, type QueueState } from "./queue.js";
import { submitCheck } from "./checkForm.js";

function apiBaseUrl(): string {
    const fromQuery = new URLSearchParams(window.location.search).get("api");
    return fromQuery ?? "http://127.0.0.1:8000";
}

function el<T extends HTMLElement>(id: string): T {
    const node = document.getElementById(id);
    if (!node) throw new Error(`missing element #${id}`);
    return node as T;
}

function renderQueue(state: QueueState): void {
    const stats = el<HTMLElement>("kg-stats");
    stats.textContent = state.stats
        ? `graph: ${state.stats.triples} triples, ${state.stats.nodes} nodes, ` +
          `${state.stats.pending_records} pending`
        : "graph: loading";

    const message = el<HTMLElement>("queue-message");
    message.textContent = state.message ?? "";

    const list = el<HTMLElement>("queue-list");
    list.textContent = "";
    if (state.items.length === 0) {
        const empty = document.createElement("li");
        empty.textContent = "Nothing pending review.";
        list.appendChild(empty);
        return;
    }
    for (const item of state.items) {
        const row = document.createElement("li");
        row.className = "fg-queue-item";
        const record = item.record;
        const text = document.createElement("span");
        text.textContent =
            `[${record.candidate.extractor}] ${record.candidate.raw_subject} ` +
            `/ ${record.candidate.raw_predicate} / ${record.candidate.raw_object} ` +
            `=> ${record.triple.subject} ${record.triple.predicate} ${record.triple.object.value}`;
        row.appendChild(text);
        for (const action of ["approve", "reject"] as const) {
            const button = document.createElement("button");
            button.textContent = action;
            button.disabled = item.busy;
            button.addEventListener("click", () => void queue.act(record.record_id, action));
            row.appendChild(button);
        }
        list.appendChild(row);
    }
}

const api = new ApiClient(apiBaseUrl());
const queue = new ReviewQueue(api);

function wireDocumentForm(): void {
    const form = el<HTMLFormElement>("document-form");
    form.addEventListener("submit", event => {
        event.preventDefault();
        const mediaId = el<HTMLInputElement>("media-id").value.trim();
        if (mediaId) {
            void loadDocument(api, el("document-view"), mediaId);
        }
    });
}

function wireCheckForm(): void {
    const form = el<HTMLFormElement>("check-form");
    form.addEventListener("submit", event => {
        event.preventDefault();
        void (async () => {
            const input = {
                subject: el<HTMLInputElement>("check-subject").value,
                predicate: el<HTMLInputElement>("check-predicate").value,
                object: el<HTMLInputElement>("check-object").value,
            };
            const panel = el<HTMLElement>("check-panel");
            const errors = el<HTMLElement>("check-errors");
            errors.textContent = "";
            try {
                const result = await submitCheck(api, input);
                if ("errors" in result) {
                    errors.textContent = Object.entries(result.errors)
                        .map(([field, message]) => `${field}: ${message}`)
                        .join(", ");
                    return;
                }
                panel.textContent = "";
                panel.className = `fg-panel fg-${result.panel.color}`;
                const headline = document.createElement("strong");
                headline.textContent =
                    `${result.panel.verdict} (veracity ${result.panel.veracity}, ` +
                    `threshold ${result.panel.threshold})`;
                panel.appendChild(headline);
                const rows = document.createElement("ul");
                for (const row of result.panel.evidenceRows) {
                    const li = document.createElement("li");
                    li.textContent = row;
                    rows.appendChild(li);
                }
                panel.appendChild(rows);
            } catch (error) {
                errors.textContent = `check failed: ${String(error)}`;
            }
        })();
    });
}

function wireReviewer(): void {
    el<HTMLInputElement>("reviewer-name").addEventListener("input", event => {
        queue.setReviewer((event.target as HTMLInputElement).value);
    });
}

export function bootstrap(): void {
    wireDocumentForm();
    wireCheckForm();
    wireReviewer();
    queue.onChange(renderQueue);
    void queue.refresh().catch(() => {
        el<HTMLElement>("queue-message").textContent =
            "Could not reach the API; is the service running?";
    });
}

if (typeof document !== "undefined" && document.getElementById("queue-list")) {
    bootstrap();
}
