// Pure view-model builders for the annotated article view. No scoring or
// graph logic happens here: colors and numbers are lifted verbatim from the
// API payload so the rendered view cannot drift from the server.

import type { DocumentReport, StatementPayload, VerdictClass, SpanColor } from "./types.js";

// Mirror of the server-side verdict->color table, used only where the API
// response carries no precomputed color (the ad-hoc claim check panel).
export const VERDICT_COLORS: Record<VerdictClass, SpanColor> = {
    confirmed: "green",
    supported: "yellow",
    unknown: "gray",
    contradicted: "red",
};

export interface AnnotatedSegment {
    text: string;
    statement: StatementPayload | null;
}

/**
 * Split the article text into plain and highlighted segments.
 * Statement spans index into `report.text`; overlapping or out-of-range
 * spans are dropped rather than corrupting the article.
 */
export function buildSegments(report: DocumentReport): AnnotatedSegment[] {
    const text = report.text;
    const statements = [...report.statements].sort((a, b) => a.span[0] - b.span[0]);
    const segments: AnnotatedSegment[] = [];
    let cursor = 0;
    for (const statement of statements) {
        const [start, end] = statement.span;
        if (start < cursor || end > text.length || end <= start) {
            continue;
        }
        if (start > cursor) {
            segments.push({ text: text.slice(cursor, start), statement: null });
        }
        segments.push({ text: text.slice(start, end), statement });
        cursor = end;
    }
    if (cursor < text.length) {
        segments.push({ text: text.slice(cursor), statement: null });
    }
    return segments;
}

/**
 * Render a number exactly as the API's JSON encoder wrote it. The server
 * emits shortest-round-trip decimals and keeps a trailing ".0" on integral
 * floats; scores live in [0, 1], so exponent notation never appears.
 */
export function formatApiNumber(value: number): string {
    return Number.isInteger(value) ? value.toFixed(1) : String(value);
}

/** Tooltip lines for a highlighted statement; always names evidence or says so. */
export function tooltipLines(statement: StatementPayload): string[] {
    const verdict = statement.verdict;
    const lines = [
        `verdict: ${verdict.verdict}`,
        `veracity: ${formatApiNumber(verdict.veracity)}`,
        `threshold: ${formatApiNumber(verdict.threshold_used)}`,
    ];
    const evidence = verdict.evidence;
    if (!evidence) {
        lines.push("no evidence");
        return lines;
    }
    if (evidence.type === "path") {
        const hops = evidence.nodes.map(n => n.value).join(" -> ");
        lines.push(`path: ${hops}`);
        lines.push(`proximity: ${formatApiNumber(evidence.proximity)}`);
    } else {
        const label = evidence.type === "exact_match" ? "matches" : "contradicted by";
        const t = evidence.triple;
        lines.push(`${label}: ${t.subject} ${t.predicate} ${t.object.value}`);
        if (evidence.annotation && evidence.annotation.source_refs.length > 0) {
            lines.push(`sources: ${evidence.annotation.source_refs.join("; ")}`);
        } else if (evidence.annotation) {
            lines.push(`media: ${evidence.annotation.media_ids.join(", ")}`);
        }
    }
    return lines;
}

export function colorFor(verdict: VerdictClass): SpanColor {
    return VERDICT_COLORS[verdict];
}
