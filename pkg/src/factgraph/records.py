"""Statement records and review events: the curated unit of extracted knowledge."""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, replace
from datetime import datetime
from enum import Enum

from .terms import Term, TermKind, Triple


class ReviewState(Enum):
    PENDING = "pending"
    APPROVED = "approved"
    REJECTED = "rejected"


class TrustChannel(Enum):
    TRUSTED_SOURCE = "trusted"
    UNTRUSTED_MEDIA = "untrusted"


class ReviewAction(Enum):
    APPROVE = "approve"
    REJECT = "reject"
    REOPEN = "reopen"


RULE_BASED = "rule_based"


def remote_extractor_id(model: str) -> str:
    return f"remote:{model}"


@dataclass(frozen=True, slots=True)
class CandidateTriple:
    """Raw extractor output before alignment; all three fields non-empty."""

    raw_subject: str
    raw_predicate: str
    raw_object: str
    sentence_index: int
    extractor: str = RULE_BASED
    attempt: int = 0

    def __post_init__(self) -> None:
        for name in ("raw_subject", "raw_predicate", "raw_object"):
            if not getattr(self, name).strip():
                raise ValueError(f"candidate {name} must be non-empty")


def record_id_for(media_id: str, candidate: CandidateTriple) -> str:
    """Deterministic record id so replays and parallel sessions agree."""
    key = "\x1f".join(
        (
            media_id,
            str(candidate.sentence_index),
            candidate.extractor,
            candidate.raw_subject,
            candidate.raw_predicate,
            candidate.raw_object,
        )
    )
    return hashlib.sha256(key.encode("utf-8")).hexdigest()[:16]


@dataclass(slots=True)
class StatementRecord:
    record_id: str
    triple: Triple
    candidate: CandidateTriple
    media_ids: tuple[str, ...]
    span: tuple[int, int]
    trust_channel: TrustChannel
    review_state: ReviewState = ReviewState.PENDING
    verdict: object | None = None  # VeracityVerdict, kept loose to avoid cycles
    reviewer: str | None = None
    reviewed_at: datetime | None = None

    def copy(self) -> "StatementRecord":
        return replace(self)


@dataclass(frozen=True, slots=True)
class ReviewEvent:
    record_id: str
    action: ReviewAction
    reviewer: str
    timestamp: datetime
    note: str | None = None


# -- JSON-lines encoding ------------------------------------------------------


def _term_dict(term: Term) -> dict:
    return {"kind": term.kind.value, "value": term.value}


def _term_from(data: dict) -> Term:
    return Term(TermKind(data["kind"]), data["value"])


def triple_to_dict(triple: Triple) -> dict:
    return {
        "subject": triple.subject.value,
        "predicate": triple.predicate.value,
        "object": _term_dict(triple.object),
    }


def triple_from_dict(data: dict) -> Triple:
    return Triple(
        Term.iri(data["subject"]), Term.iri(data["predicate"]), _term_from(data["object"])
    )


def record_to_dict(record: StatementRecord) -> dict:
    from .veracity import verdict_to_dict  # local import to avoid a cycle

    return {
        "record_id": record.record_id,
        "triple": triple_to_dict(record.triple),
        "candidate": {
            "raw_subject": record.candidate.raw_subject,
            "raw_predicate": record.candidate.raw_predicate,
            "raw_object": record.candidate.raw_object,
            "sentence_index": record.candidate.sentence_index,
            "extractor": record.candidate.extractor,
            "attempt": record.candidate.attempt,
        },
        "media_ids": list(record.media_ids),
        "span": list(record.span),
        "trust_channel": record.trust_channel.value,
        "review_state": record.review_state.value,
        "verdict": verdict_to_dict(record.verdict) if record.verdict else None,
        "reviewer": record.reviewer,
        "reviewed_at": record.reviewed_at.isoformat() if record.reviewed_at else None,
    }


def record_from_dict(data: dict) -> StatementRecord:
    from .veracity import verdict_from_dict

    candidate = CandidateTriple(
        raw_subject=data["candidate"]["raw_subject"],
        raw_predicate=data["candidate"]["raw_predicate"],
        raw_object=data["candidate"]["raw_object"],
        sentence_index=data["candidate"]["sentence_index"],
        extractor=data["candidate"]["extractor"],
        attempt=data["candidate"].get("attempt", 0),
    )
    verdict_data = data.get("verdict")
    return StatementRecord(
        record_id=data["record_id"],
        triple=triple_from_dict(data["triple"]),
        candidate=candidate,
        media_ids=tuple(data["media_ids"]),
        span=(data["span"][0], data["span"][1]),
        trust_channel=TrustChannel(data["trust_channel"]),
        review_state=ReviewState(data["review_state"]),
        verdict=verdict_from_dict(verdict_data) if verdict_data else None,
        reviewer=data.get("reviewer"),
        reviewed_at=(
            datetime.fromisoformat(data["reviewed_at"]) if data.get("reviewed_at") else None
        ),
    )


def event_to_dict(event: ReviewEvent) -> dict:
    return {
        "record_id": event.record_id,
        "action": event.action.value,
        "reviewer": event.reviewer,
        "timestamp": event.timestamp.isoformat(),
        "note": event.note,
    }


def event_from_dict(data: dict) -> ReviewEvent:
    return ReviewEvent(
        record_id=data["record_id"],
        action=ReviewAction(data["action"]),
        reviewer=data["reviewer"],
        timestamp=datetime.fromisoformat(data["timestamp"]),
        note=data.get("note"),
    )
