// Annotated article rendering: highlighted spans with hover evidence.
// Fetch failures always render a retry banner, never a blank page.

import type { ApiClient } from "./api.js";
import { buildSegments, formatApiNumber, tooltipLines } from "./annotate.js";
import { attachTooltip } from "./tooltip.js";
import type { DocumentReport } from "./types.js";

export function renderReport(container: HTMLElement, report: DocumentReport): void {
    container.textContent = "";

    const summary = document.createElement("div");
    summary.className = "fg-summary";
    if (report.empty_document) {
        const notice = document.createElement("div");
        notice.className = "fg-banner fg-banner-notice";
        notice.textContent = "No statements were extracted from this document.";
        container.appendChild(notice);
    } else {
        const counts = Object.entries(report.verdict_counts)
            .map(([verdict, count]) => `${verdict}: ${count}`)
            .join(", ");
        summary.textContent =
            `document accuracy: ${report.aggregate === null ? "n/a" : formatApiNumber(report.aggregate)}` +
            (counts ? ` (${counts})` : "");
        container.appendChild(summary);
    }

    const article = document.createElement("article");
    article.className = "fg-article";
    for (const segment of buildSegments(report)) {
        if (!segment.statement) {
            article.appendChild(document.createTextNode(segment.text));
            continue;
        }
        const statement = segment.statement;
        const mark = document.createElement("mark");
        mark.className = `fg-span fg-${statement.color}`;
        mark.dataset.color = statement.color;
        mark.dataset.recordId = statement.record_id;
        mark.textContent = segment.text;
        attachTooltip(mark, () => tooltipLines(statement));
        article.appendChild(mark);
    }
    container.appendChild(article);
}

export function renderError(container: HTMLElement, mediaId: string, retry: () => void): void {
    container.textContent = "";
    const banner = document.createElement("div");
    banner.className = "fg-banner fg-banner-error";
    banner.textContent = `Could not load the report for ${mediaId}. `;
    const button = document.createElement("button");
    button.textContent = "Retry";
    button.addEventListener("click", retry);
    banner.appendChild(button);
    container.appendChild(banner);
}

export async function loadDocument(
    api: Pick<ApiClient, "getReport">,
    container: HTMLElement,
    mediaId: string,
): Promise<void> {
    try {
        renderReport(container, await api.getReport(mediaId));
    } catch {
        renderError(container, mediaId, () => void loadDocument(api, container, mediaId));
    }
}
