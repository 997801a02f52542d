"""Human-in-the-loop curation: review queue, trusted-graph growth, persistence.

State mutation is serialized through a single writer lock; reads are served
from snapshot copies under the store's shared-read contract. Trusted-source
statements only reach the knowledge graph through an explicit approval, and
every review action lands in an append-only event log so the graph can be
reproduced from the bootstrap state by replay.
"""

from __future__ import annotations

import json
import logging
import threading
from dataclasses import dataclass
from datetime import datetime
from pathlib import Path
from typing import Callable

from .alignment import AlignmentTables
from .errors import (
    CorruptState,
    EmptyDocument,
    IllegalTransition,
    InvalidRequest,
    IoError,
    NotFound,
)
from .extraction import (
    AuditLog,
    ExtractionContext,
    ExtractorConfig,
    SentenceFailure,
    extract_document,
)
from .graph import KnowledgeGraph, StatementAnnotation, read_sidecar, utcnow, write_sidecar
from .media import (
    FileSource,
    MediaDocument,
    TextSource,
    UrlSource,
    assign_media_id,
    document_from_bytes,
    document_from_file,
    document_from_text,
)
from .records import (
    ReviewAction,
    ReviewEvent,
    ReviewState,
    StatementRecord,
    TrustChannel,
    event_from_dict,
    event_to_dict,
    record_from_dict,
    record_to_dict,
)
from .scoring import (
    DEFAULT_WEIGHTS,
    MetricRegistry,
    WeightConfig,
    score_document,
    validate_weights,
)
from .terms import Term, Triple
from .veracity import (
    ProximityConfig,
    VeracityVerdict,
    VerdictClass,
    check_veracity,
    verdict_to_dict,
)

log = logging.getLogger(__name__)

VERDICT_COLORS = {
    VerdictClass.CONFIRMED: "green",
    VerdictClass.SUPPORTED: "yellow",
    VerdictClass.UNKNOWN: "gray",
    VerdictClass.CONTRADICTED: "red",
}

# Legal review transitions: action -> required current state(s) -> next state.
_TRANSITIONS: dict[ReviewAction, tuple[set[ReviewState], ReviewState]] = {
    ReviewAction.APPROVE: ({ReviewState.PENDING}, ReviewState.APPROVED),
    ReviewAction.REJECT: ({ReviewState.PENDING}, ReviewState.REJECTED),
    ReviewAction.REOPEN: ({ReviewState.APPROVED, ReviewState.REJECTED}, ReviewState.PENDING),
}


@dataclass
class DocumentEntry:
    document: MediaDocument
    trust_channel: TrustChannel


Fetcher = Callable[[str], tuple[bytes, str]]  # url -> (body, media_type)


def http_fetcher(url: str) -> tuple[bytes, str]:
    """Default URL fetch adapter (the only networked piece of the pipeline)."""
    import httpx

    from .errors import TransportError

    try:
        response = httpx.get(url, follow_redirects=True, timeout=30.0)
        response.raise_for_status()
    except httpx.HTTPError as exc:
        raise TransportError(f"fetching {url} failed: {exc}") from exc
    content_type = response.headers.get("content-type", "")
    media_type = "html" if "html" in content_type else "text"
    return response.content, media_type


class CurationService:
    """Owns the trusted graph, documents, records, and the review event log."""

    def __init__(
        self,
        kg: KnowledgeGraph | None = None,
        tables: AlignmentTables | None = None,
        weights: WeightConfig | None = None,
        proximity: ProximityConfig | None = None,
        extractor_config: ExtractorConfig | None = None,
        registry: MetricRegistry | None = None,
        clock: Callable[[], datetime] = utcnow,
        fetcher: Fetcher | None = None,
        audit_log_path: Path | str | None = None,
        http_client=None,
    ):
        self.kg = kg or KnowledgeGraph()
        self.tables = tables or AlignmentTables.empty()
        self.weights = weights or DEFAULT_WEIGHTS
        self.proximity = proximity or ProximityConfig()
        self.extractor_config = extractor_config
        self.registry = registry
        self.clock = clock
        self.fetcher = fetcher
        self.audit_log = AuditLog(audit_log_path)
        self.http_client = http_client
        self.documents: dict[str, DocumentEntry] = {}
        self.records: dict[str, StatementRecord] = {}
        self.events: list[ReviewEvent] = []
        self.failures: dict[str, list[SentenceFailure]] = {}
        self._write_lock = threading.RLock()
        if weights is not None:
            validate_weights(weights, registry)

    # -- ingest ---------------------------------------------------------

    def ingest_file(self, path: str, trust_channel: TrustChannel) -> str:
        doc = document_from_file(path, fetched_at=self.clock())
        return self._store_document(doc, trust_channel)

    def ingest_text(self, text: str, trust_channel: TrustChannel) -> str:
        doc = document_from_text(text, fetched_at=self.clock())
        return self._store_document(doc, trust_channel)

    def ingest_url(self, url: str, trust_channel: TrustChannel) -> str:
        # late module lookup so a process-wide fetch adapter can be swapped in
        fetch = self.fetcher if self.fetcher is not None else http_fetcher
        body, media_type = fetch(url)
        doc = document_from_bytes(UrlSource(url), body, media_type, fetched_at=self.clock())
        return self._store_document(doc, trust_channel)

    def ingest(self, source: str, trust_channel: TrustChannel) -> str:
        """Dispatch on the source string: URL or local file path."""
        if source.startswith(("http://", "https://")):
            return self.ingest_url(source, trust_channel)
        return self.ingest_file(source, trust_channel)

    def _store_document(self, doc: MediaDocument, trust_channel: TrustChannel) -> str:
        with self._write_lock:
            if doc.media_id not in self.documents:
                self.documents[doc.media_id] = DocumentEntry(doc, trust_channel)
        return doc.media_id

    # -- extraction -----------------------------------------------------

    def extract(self, media_id: str, mode: str = "rule") -> list[str]:
        """Run extraction over a stored document; verdicts attach to untrusted records."""
        entry = self._document_entry(media_id)
        context = ExtractionContext(
            tables=self.tables,
            remote_config=self.extractor_config,
            audit_log=self.audit_log,
            client=self.http_client,
        )
        failures: list[SentenceFailure] = []
        extracted = extract_document(
            entry.document, mode, entry.trust_channel, context, failures
        )
        record_ids = []
        with self._write_lock:
            self.failures[media_id] = failures
            for record in extracted:
                if record.record_id in self.records:
                    record_ids.append(record.record_id)
                    continue
                if entry.trust_channel is TrustChannel.UNTRUSTED_MEDIA:
                    record.verdict = check_veracity(self.kg, record.triple, self.proximity)
                self.records[record.record_id] = record
                record_ids.append(record.record_id)
        return record_ids

    def submit_document(
        self, source: str | None, trust_channel: TrustChannel, mode: str = "rule",
        inline_text: str | None = None,
    ) -> tuple[str, list[str]]:
        """Full intake: ingest, segment, extract, filter, align, (score)."""
        if inline_text is not None:
            media_id = self.ingest_text(inline_text, trust_channel)
        elif source:
            media_id = self.ingest(source, trust_channel)
        else:
            raise InvalidRequest("either a source or inline text is required")
        return media_id, self.extract(media_id, mode)

    def _document_entry(self, media_id: str) -> DocumentEntry:
        entry = self.documents.get(media_id)
        if entry is None:
            raise NotFound(f"unknown media id: {media_id}")
        return entry

    # -- review ---------------------------------------------------------

    def review(
        self, record_id: str, action: ReviewAction, reviewer: str, note: str | None = None
    ) -> StatementRecord:
        """Apply one review action; approval of trusted records grows the graph."""
        if not reviewer or not reviewer.strip():
            raise InvalidRequest("reviewer identity is required")
        with self._write_lock:
            record = self.records.get(record_id)
            if record is None:
                raise NotFound(f"unknown record id: {record_id}")
            allowed, _ = _TRANSITIONS[action]
            if record.review_state not in allowed:
                raise IllegalTransition(
                    f"cannot {action.value} a record in state {record.review_state.value}"
                )
            timestamp = self.clock()
            event = ReviewEvent(record_id, action, reviewer, timestamp, note)
            self._apply_review(record, event)
            self.events.append(event)
            return record.copy()

    def _apply_review(self, record: StatementRecord, event: ReviewEvent) -> None:
        _, next_state = _TRANSITIONS[event.action]
        record.review_state = next_state
        if event.action is ReviewAction.REOPEN:
            record.reviewer = None
            record.reviewed_at = None
        else:
            record.reviewer = event.reviewer
            record.reviewed_at = event.timestamp
        if (
            event.action is ReviewAction.APPROVE
            and record.trust_channel is TrustChannel.TRUSTED_SOURCE
        ):
            self.kg.insert(
                record.triple,
                StatementAnnotation(
                    media_ids=record.media_ids,
                    confidence=1.0,
                    asserted_at=event.timestamp,
                ),
            )

    def pending_records(self) -> list[StatementRecord]:
        return [r.copy() for r in self.records.values() if r.review_state is ReviewState.PENDING]

    def records_in_state(self, state: ReviewState | None) -> list[StatementRecord]:
        if state is None:
            return [r.copy() for r in self.records.values()]
        return [r.copy() for r in self.records.values() if r.review_state is state]

    def record(self, record_id: str) -> StatementRecord:
        record = self.records.get(record_id)
        if record is None:
            raise NotFound(f"unknown record id: {record_id}")
        return record.copy()

    # -- checking & reporting --------------------------------------------

    def resolve_term(self, text: str) -> Term:
        """Interpret a user-supplied term: <iri>, prefixed name, IRI, or raw phrase."""
        from .alignment import looks_like_iri, phrase_to_iri

        stripped = text.strip()
        if not stripped:
            raise InvalidRequest("empty term")
        if stripped.startswith("<") and stripped.endswith(">"):
            return Term.iri(stripped[1:-1])
        if looks_like_iri(stripped):
            return Term.iri(stripped)
        prefix, sep, local = stripped.partition(":")
        if sep and " " not in stripped and prefix in self.kg.prefix_table:
            return Term.iri(self.kg.prefix_table[prefix] + local)
        return Term.iri(phrase_to_iri(stripped, self.tables))

    def check(self, subject: str, predicate: str, obj: str) -> VeracityVerdict:
        claim = Triple(
            self.resolve_term(subject), self.resolve_term(predicate), self.resolve_term(obj)
        )
        return check_veracity(self.kg, claim, self.proximity)

    def _verdict_for(self, record: StatementRecord) -> VeracityVerdict:
        if record.verdict is not None:
            return record.verdict
        return check_veracity(self.kg, record.triple, self.proximity)

    def get_document_report(self, media_id: str) -> dict:
        """Display-ready report: spans, verdict colors, evidence, scores."""
        entry = self._document_entry(media_id)
        doc_records = [
            r for r in self.records.values() if media_id in r.media_ids
        ]
        scored = []
        for record in sorted(doc_records, key=lambda r: (r.span, r.record_id)):
            copy = record.copy()
            copy.verdict = self._verdict_for(record)
            scored.append(copy)
        statements = []
        for record in scored:
            start, end = record.span
            statements.append(
                {
                    "record_id": record.record_id,
                    "span": [start, end],
                    "sentence": entry.document.text[start:end],
                    "triple": {
                        "subject": record.triple.subject.value,
                        "predicate": record.triple.predicate.value,
                        "object": record.triple.object.value,
                    },
                    "review_state": record.review_state.value,
                    "trust_channel": record.trust_channel.value,
                    "color": VERDICT_COLORS[record.verdict.verdict],
                    "verdict": verdict_to_dict(record.verdict),
                }
            )
        report: dict = {
            "media_id": media_id,
            "trust_channel": entry.trust_channel.value,
            "text": entry.document.text,
            "statements": statements,
            "extraction_failures": [
                {"sentence_index": f.sentence_index, "error": f.error}
                for f in self.failures.get(media_id, [])
            ],
        }
        try:
            document_score = score_document(scored, self.weights, self.registry)
        except EmptyDocument:
            report.update(
                {"empty_document": True, "aggregate": None, "verdict_counts": {}, "scores": {}}
            )
            return report
        report.update(
            {
                "empty_document": False,
                "aggregate": document_score.aggregate,
                "verdict_counts": document_score.verdict_counts,
                "scores": {rid: score.value for rid, score in document_score.entries},
            }
        )
        for statement in report["statements"]:
            statement["score"] = report["scores"].get(statement["record_id"])
        return report

    # -- graph bootstrap & export ----------------------------------------

    def bootstrap_import(self, ttl_path: Path | str, sidecar_path: Path | str | None = None) -> int:
        """Load pre-approved ground truth files; sidecar-less triples get confidence 1.0."""
        ttl_path = Path(ttl_path)
        try:
            text = ttl_path.read_text(encoding="utf-8")
        except OSError as exc:
            raise IoError(str(exc)) from exc
        sidecar_entries = read_sidecar(sidecar_path) if sidecar_path is not None else []
        return self.bootstrap_import_text(text, sidecar_entries, source_name=ttl_path.name)

    def bootstrap_import_text(
        self,
        turtle_text: str,
        sidecar_entries: list[tuple[Triple, StatementAnnotation]] = (),
        source_name: str = "import.ttl",
    ) -> int:
        """Text-based bootstrap; the media id is the digest of the Turtle content."""
        with self._write_lock:
            added = self.kg.load_turtle(turtle_text)
            annotated: set[Triple] = set()
            for triple, annotation in sidecar_entries:
                self.kg.insert(triple, annotation)
                annotated.add(triple)
            source_id = assign_media_id(TextSource(turtle_text))
            default = StatementAnnotation(
                media_ids=(source_id,),
                confidence=1.0,
                asserted_at=self.clock(),
                source_refs=(source_name,),
            )
            for triple in self.kg.triples:
                if triple not in annotated and self.kg.annotation(triple) is None:
                    self.kg.insert(triple, default)
        return added

    def export_turtle(self) -> str:
        return self.kg.to_turtle()

    def stats(self) -> dict:
        return {
            "triples": len(self.kg),
            "nodes": self.kg.node_count(),
            "pending_records": sum(
                1 for r in self.records.values() if r.review_state is ReviewState.PENDING
            ),
        }

    # -- persistence ------------------------------------------------------

    def persist(self, state_dir: Path | str) -> None:
        """Write the full state as flat files (Turtle + JSON lines)."""
        state = Path(state_dir)
        try:
            state.mkdir(parents=True, exist_ok=True)
            (state / "kg.ttl").write_text(self.kg.to_turtle(), encoding="utf-8")
            write_sidecar(self.kg, state / "kg_annotations.jsonl")
            _write_jsonl(
                state / "documents.jsonl",
                (_document_to_dict(e) for e in self.documents.values()),
            )
            _write_jsonl(
                state / "records.jsonl", (record_to_dict(r) for r in self.records.values())
            )
            _write_jsonl(state / "events.jsonl", (event_to_dict(e) for e in self.events))
        except OSError as exc:
            raise IoError(str(exc)) from exc

    def restore(self, state_dir: Path | str) -> None:
        """Load persisted state; an empty or missing directory yields fresh state."""
        state = Path(state_dir)
        if not state.exists():
            return
        with self._write_lock:
            ttl = state / "kg.ttl"
            if ttl.exists():
                try:
                    self.kg.load_turtle(ttl.read_text(encoding="utf-8"))
                except OSError as exc:
                    raise IoError(str(exc)) from exc
            sidecar = state / "kg_annotations.jsonl"
            if sidecar.exists():
                for triple, annotation in read_sidecar(sidecar):
                    self.kg.insert(triple, annotation)
            for data in _read_jsonl(state / "documents.jsonl"):
                entry = _document_from_dict(data)
                self.documents[entry.document.media_id] = entry
            for data in _read_jsonl(state / "records.jsonl"):
                record = record_from_dict(data)
                self.records[record.record_id] = record
            for data in _read_jsonl(state / "events.jsonl"):
                self.events.append(event_from_dict(data))

    def structurally_equal(self, other: "CurationService") -> bool:
        return (
            self.kg.structurally_equal(other.kg)
            and {m: _document_to_dict(e) for m, e in self.documents.items()}
            == {m: _document_to_dict(e) for m, e in other.documents.items()}
            and {r: record_to_dict(rec) for r, rec in self.records.items()}
            == {r: record_to_dict(rec) for r, rec in other.records.items()}
            and [event_to_dict(e) for e in self.events]
            == [event_to_dict(e) for e in other.events]
        )


def replay_events(
    service: CurationService, events: list[ReviewEvent]
) -> None:
    """Re-apply an event log onto a service holding bootstrap KG + Pending records.

    Replaying the persisted events from the bootstrap state reproduces the
    exact graph and record set, including review timestamps (events carry
    them).
    """
    for event in events:
        record = service.records.get(event.record_id)
        if record is None:
            raise NotFound(f"event references unknown record {event.record_id}")
        service._apply_review(record, event)
        service.events.append(event)


# -- file helpers --------------------------------------------------------------


def _write_jsonl(path: Path, rows) -> None:
    lines = [json.dumps(row, ensure_ascii=False, sort_keys=True) for row in rows]
    path.write_text("\n".join(lines) + ("\n" if lines else ""), encoding="utf-8")


def _read_jsonl(path: Path) -> list[dict]:
    if not path.exists():
        return []
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise IoError(str(exc)) from exc
    rows = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        try:
            row = json.loads(line)
        except json.JSONDecodeError as exc:
            raise CorruptState(str(path), lineno, str(exc)) from exc
        if not isinstance(row, dict):
            raise CorruptState(str(path), lineno, "expected a JSON object")
        rows.append(row)
    return rows


def _document_to_dict(entry: DocumentEntry) -> dict:
    doc = entry.document
    source: dict
    if isinstance(doc.source, UrlSource):
        source = {"kind": "url", "value": doc.source.url}
    elif isinstance(doc.source, FileSource):
        source = {"kind": "file", "value": doc.source.path}
    else:
        source = {"kind": "text", "value": doc.source.text}
    return {
        "media_id": doc.media_id,
        "source": source,
        "media_type": doc.media_type,
        "raw": doc.raw.decode("utf-8", errors="replace"),
        "text": doc.text,
        "fetched_at": doc.fetched_at.isoformat(),
        "trust_channel": entry.trust_channel.value,
    }


def _document_from_dict(data: dict) -> DocumentEntry:
    kind = data["source"]["kind"]
    value = data["source"]["value"]
    if kind == "url":
        source = UrlSource(value)
    elif kind == "file":
        source = FileSource(value)
    else:
        source = TextSource(value)
    doc = MediaDocument(
        media_id=data["media_id"],
        source=source,
        media_type=data["media_type"],
        raw=data["raw"].encode("utf-8"),
        text=data["text"],
        fetched_at=datetime.fromisoformat(data["fetched_at"]),
    )
    return DocumentEntry(doc, TrustChannel(data["trust_channel"]))
