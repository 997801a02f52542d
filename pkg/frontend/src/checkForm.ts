// Ad-hoc claim check: validation + verdict panel view model.

import type { ApiClient } from "./api.js";
import type { SpanColor, VerdictPayload } from "./types.js";
import { colorFor, formatApiNumber } from "./annotate.js";

export interface CheckInput {
    subject: string;
    predicate: string;
    object: string;
}

export type FieldErrors = Partial<Record<keyof CheckInput, string>>;

export function validateCheckInput(input: CheckInput): FieldErrors {
    const errors: FieldErrors = {};
    for (const field of ["subject", "predicate", "object"] as const) {
        if (!input[field].trim()) {
            errors[field] = "required";
        }
    }
    return errors;
}

export interface VerdictPanel {
    color: SpanColor;
    verdict: string;
    veracity: string;
    threshold: string;
    evidenceRows: string[];
}

export function buildVerdictPanel(verdict: VerdictPayload): VerdictPanel {
    const rows: string[] = [];
    const evidence = verdict.evidence;
    if (!evidence) {
        rows.push("no evidence");
    } else if (evidence.type === "path") {
        evidence.edges.forEach((edge, i) => {
            const arrow = edge.direction === "out" ? "->" : "<-";
            rows.push(
                `${evidence.nodes[i].value} ${arrow} [${edge.triple.predicate}] ${arrow} ${evidence.nodes[i + 1].value}`,
            );
        });
        rows.push(`proximity: ${formatApiNumber(evidence.proximity)}`);
    } else {
        const t = evidence.triple;
        rows.push(`${t.subject} ${t.predicate} ${t.object.value}`);
        if (evidence.annotation) {
            for (const ref of evidence.annotation.source_refs) {
                rows.push(`source: ${ref}`);
            }
        }
    }
    return {
        color: colorFor(verdict.verdict),
        verdict: verdict.verdict,
        veracity: formatApiNumber(verdict.veracity),
        threshold: formatApiNumber(verdict.threshold_used),
        evidenceRows: rows,
    };
}

/** Validate, then call the API; returns field errors without sending a request. */
export async function submitCheck(
    api: Pick<ApiClient, "check">,
    input: CheckInput,
): Promise<{ errors: FieldErrors } | { panel: VerdictPanel }> {
    const errors = validateCheckInput(input);
    if (Object.keys(errors).length > 0) {
        return { errors };
    }
    const verdict = await api.check(
        input.subject.trim(),
        input.predicate.trim(),
        input.object.trim(),
    );
    return { panel: buildVerdictPanel(verdict) };
}
