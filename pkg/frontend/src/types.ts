// Wire types mirroring the curation API payloads. The client never derives
// numbers itself: everything displayed comes straight from these fields.

export type VerdictClass = "confirmed" | "supported" | "contradicted" | "unknown";

export type SpanColor = "green" | "yellow" | "gray" | "red";

export interface TermPayload {
    kind: "iri" | "literal";
    value: string;
}

export interface TriplePayload {
    subject: string;
    predicate: string;
    object: TermPayload;
}

export interface AnnotationPayload {
    subject: string;
    predicate: string;
    object: string;
    media_ids: string[];
    confidence: number;
    asserted_at: string;
    source_refs: string[];
    objectivity?: number;
}

export interface MatchEvidence {
    type: "exact_match" | "negation_match";
    triple: TriplePayload;
    annotation: AnnotationPayload | null;
}

export interface PathEvidence {
    type: "path";
    nodes: TermPayload[];
    edges: { triple: TriplePayload; direction: "in" | "out" }[];
    intermediate_degrees: number[];
    proximity: number;
}

export type Evidence = MatchEvidence | PathEvidence | null;

export interface VerdictPayload {
    verdict: VerdictClass;
    veracity: number;
    threshold_used: number;
    evidence: Evidence;
}

export interface StatementPayload {
    record_id: string;
    span: [number, number];
    sentence: string;
    triple: { subject: string; predicate: string; object: string };
    review_state: string;
    trust_channel: string;
    color: SpanColor;
    verdict: VerdictPayload;
    score?: number | null;
}

export interface DocumentReport {
    media_id: string;
    trust_channel: string;
    text: string;
    statements: StatementPayload[];
    extraction_failures: { sentence_index: number; error: string }[];
    empty_document: boolean;
    aggregate: number | null;
    verdict_counts: Record<string, number>;
    scores: Record<string, number>;
}

export interface RecordPayload {
    record_id: string;
    triple: { subject: string; predicate: string; object: TermPayload };
    candidate: {
        raw_subject: string;
        raw_predicate: string;
        raw_object: string;
        sentence_index: number;
        extractor: string;
        attempt: number;
    };
    media_ids: string[];
    span: [number, number];
    trust_channel: string;
    review_state: string;
    verdict: VerdictPayload | null;
    reviewer: string | null;
    reviewed_at: string | null;
}

export interface KgStats {
    triples: number;
    nodes: number;
    pending_records: number;
}

export type ReviewAction = "approve" | "reject" | "reopen";
