"""Embedded trusted triple store with annotations, indexes, and degree queries.

Concurrency contract: any number of concurrent readers OR one writer.
Mutations are serialized by an internal lock; iterating query results
while another thread mutates the store is forbidden.
"""

from __future__ import annotations

import json
import threading
from dataclasses import dataclass, field
from datetime import datetime, timezone
from enum import Enum
from pathlib import Path

from .errors import CorruptState, InvalidAnnotation, IoError
from .terms import Term, TermKind, Triple
from .turtle import parse_turtle, serialize_turtle


class Direction(Enum):
    IN = "in"
    OUT = "out"
    BOTH = "both"


class InsertResult(Enum):
    INSERTED = "inserted"
    MERGED = "merged"


@dataclass(frozen=True, slots=True)
class StatementAnnotation:
    """Statement-level metadata: provenance media ids, confidence, timing."""

    media_ids: tuple[str, ...]
    confidence: float
    asserted_at: datetime
    objectivity: float | None = None
    source_refs: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        if not self.media_ids:
            raise InvalidAnnotation("annotation must carry at least one media id")
        if not 0.0 <= self.confidence <= 1.0:
            raise InvalidAnnotation(f"confidence {self.confidence} outside [0, 1]")
        if self.objectivity is not None and not 0.0 <= self.objectivity <= 1.0:
            raise InvalidAnnotation(f"objectivity {self.objectivity} outside [0, 1]")

    def merge(self, other: "StatementAnnotation") -> "StatementAnnotation":
        """Union media ids and source refs, keep max confidence and newest timestamp."""
        media = tuple(sorted(set(self.media_ids) | set(other.media_ids)))
        refs = tuple(dict.fromkeys((*self.source_refs, *other.source_refs)))
        objectivities = [o for o in (self.objectivity, other.objectivity) if o is not None]
        return StatementAnnotation(
            media_ids=media,
            confidence=max(self.confidence, other.confidence),
            asserted_at=max(self.asserted_at, other.asserted_at),
            objectivity=max(objectivities) if objectivities else None,
            source_refs=refs,
        )


@dataclass(frozen=True, slots=True)
class Neighbor:
    edge: Triple
    other_node: Term
    direction: Direction


@dataclass
class KnowledgeGraph:
    """Indexed trusted triple set.

    Indexes (subject, predicate, object, and per-node incoming/outgoing
    edge sets) are updated atomically with the triple set under the
    writer lock, so index coherence holds after any insert sequence.
    """

    prefix_table: dict[str, str] = field(default_factory=dict)

    def __post_init__(self) -> None:
        self._triples: set[Triple] = set()
        self._annotations: dict[Triple, StatementAnnotation] = {}
        self._by_subject: dict[Term, set[Triple]] = {}
        self._by_predicate: dict[Term, set[Triple]] = {}
        self._by_object: dict[Term, set[Triple]] = {}
        self._incoming: dict[Term, set[Triple]] = {}
        self._outgoing: dict[Term, set[Triple]] = {}
        self._negation: dict[str, str] = {}
        self._write_lock = threading.Lock()

    # -- queries --------------------------------------------------------

    def __len__(self) -> int:
        return len(self._triples)

    @property
    def triples(self) -> frozenset[Triple]:
        return frozenset(self._triples)

    def contains(self, triple: Triple) -> bool:
        return triple in self._triples

    def annotation(self, triple: Triple) -> StatementAnnotation | None:
        return self._annotations.get(triple)

    @property
    def annotations(self) -> dict[Triple, StatementAnnotation]:
        return dict(self._annotations)

    def nodes(self) -> set[Term]:
        return set(self._incoming) | set(self._outgoing)

    def node_count(self) -> int:
        return len(self.nodes())

    def degree(self, node: Term, direction: Direction = Direction.BOTH) -> int:
        """Incident-edge count; nodes absent from the graph have degree 0."""
        incoming = len(self._incoming.get(node, ()))
        outgoing = len(self._outgoing.get(node, ()))
        if direction is Direction.IN:
            return incoming
        if direction is Direction.OUT:
            return outgoing
        return incoming + outgoing

    def neighbors(self, node: Term) -> list[Neighbor]:
        """All incident edges with the opposite endpoint, deterministically sorted."""
        out = [
            Neighbor(edge, edge.object, Direction.OUT)
            for edge in self._outgoing.get(node, ())
        ]
        inc = [
            Neighbor(edge, edge.subject, Direction.IN)
            for edge in self._incoming.get(node, ())
        ]
        return sorted(out + inc, key=lambda n: (*n.edge.sort_key(), n.direction.value))

    def subjects_of(self, predicate: Term) -> set[Triple]:
        return set(self._by_predicate.get(predicate, ()))

    def edges_between(self, subject: Term, obj: Term) -> list[Triple]:
        matches = self._by_subject.get(subject, set()) & self._by_object.get(obj, set())
        return sorted(matches, key=Triple.sort_key)

    # -- negation map ---------------------------------------------------

    @property
    def negation_map(self) -> dict[str, str]:
        return dict(self._negation)

    def set_negation_map(self, mapping: dict[str, str]) -> None:
        """Install a symmetric predicate-negation map (p -> q implies q -> p)."""
        symmetric: dict[str, str] = {}
        for p, q in mapping.items():
            for a, b in ((p, q), (q, p)):
                if a in symmetric and symmetric[a] != b:
                    raise InvalidAnnotation(
                        f"conflicting negation entries for {a}: {symmetric[a]} vs {b}"
                    )
                symmetric[a] = b
        with self._write_lock:
            self._negation = symmetric

    def negation_of(self, predicate: Term) -> Term | None:
        negated = self._negation.get(predicate.value)
        return Term.iri(negated) if negated else None

    # -- mutation -------------------------------------------------------

    def insert(self, triple: Triple, annotation: StatementAnnotation) -> InsertResult:
        """Add a triple, merging annotations when it already exists."""
        with self._write_lock:
            if triple in self._triples:
                existing = self._annotations.get(triple)
                self._annotations[triple] = (
                    existing.merge(annotation) if existing else annotation
                )
                return InsertResult.MERGED
            self._triples.add(triple)
            self._annotations[triple] = annotation
            self._index(triple)
            return InsertResult.INSERTED

    def add_triple(self, triple: Triple) -> bool:
        """Add a bare triple (no annotation); returns False if already present."""
        with self._write_lock:
            if triple in self._triples:
                return False
            self._triples.add(triple)
            self._index(triple)
            return True

    def _index(self, triple: Triple) -> None:
        self._by_subject.setdefault(triple.subject, set()).add(triple)
        self._by_predicate.setdefault(triple.predicate, set()).add(triple)
        self._by_object.setdefault(triple.object, set()).add(triple)
        self._outgoing.setdefault(triple.subject, set()).add(triple)
        self._incoming.setdefault(triple.object, set()).add(triple)

    # -- serialization --------------------------------------------------

    def to_turtle(self) -> str:
        return serialize_turtle(self._triples, self.prefix_table)

    @classmethod
    def from_turtle(
        cls, text: str, prefix_table: dict[str, str] | None = None
    ) -> "KnowledgeGraph":
        triples, prefixes = parse_turtle(text, prefix_table)
        graph = cls(prefix_table=prefixes)
        for t in triples:
            graph.add_triple(t)
        return graph

    def load_turtle(self, text: str) -> int:
        """Merge a Turtle document into this graph; returns count of new triples."""
        triples, prefixes = parse_turtle(text, self.prefix_table)
        added = 0
        for t in triples:
            if self.add_triple(t):
                added += 1
        self.prefix_table.update(prefixes)
        return added

    def structurally_equal(self, other: "KnowledgeGraph") -> bool:
        return (
            self._triples == other._triples and self._annotations == other._annotations
        )


# -- annotation sidecar (JSON lines) -----------------------------------------


def _term_to_sidecar(term: Term) -> str:
    # IRIs are bare; literals carry their quotes so the kind survives.
    if term.kind is TermKind.LITERAL:
        return json.dumps(term.value, ensure_ascii=False)
    return term.value


def _term_from_sidecar(text: str) -> Term:
    if text.startswith('"'):
        return Term.literal(json.loads(text))
    return Term.iri(text)


def annotation_to_dict(triple: Triple, ann: StatementAnnotation) -> dict:
    record = {
        "subject": triple.subject.value,
        "predicate": triple.predicate.value,
        "object": _term_to_sidecar(triple.object),
        "media_ids": list(ann.media_ids),
        "confidence": ann.confidence,
        "asserted_at": ann.asserted_at.isoformat(),
        "source_refs": list(ann.source_refs),
    }
    if ann.objectivity is not None:
        record["objectivity"] = ann.objectivity
    return record


def annotation_from_dict(record: dict) -> tuple[Triple, StatementAnnotation]:
    triple = Triple(
        Term.iri(record["subject"]),
        Term.iri(record["predicate"]),
        _term_from_sidecar(record["object"]),
    )
    ann = StatementAnnotation(
        media_ids=tuple(record["media_ids"]),
        confidence=float(record["confidence"]),
        asserted_at=datetime.fromisoformat(record["asserted_at"]),
        objectivity=record.get("objectivity"),
        source_refs=tuple(record.get("source_refs", ())),
    )
    return triple, ann


def write_sidecar(graph: KnowledgeGraph, path: Path | str) -> None:
    lines = [
        json.dumps(annotation_to_dict(t, a), ensure_ascii=False, sort_keys=True)
        for t, a in sorted(graph.annotations.items(), key=lambda kv: kv[0].sort_key())
    ]
    try:
        Path(path).write_text("\n".join(lines) + ("\n" if lines else ""), encoding="utf-8")
    except OSError as exc:
        raise IoError(str(exc)) from exc


def read_sidecar(path: Path | str) -> list[tuple[Triple, StatementAnnotation]]:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise IoError(str(exc)) from exc
    entries = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        try:
            entries.append(annotation_from_dict(json.loads(line)))
        except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
            raise CorruptState(str(path), lineno, str(exc)) from exc
    return entries


def utcnow() -> datetime:
    return datetime.now(timezone.utc)


__all__ = [
    "Direction",
    "InsertResult",
    "KnowledgeGraph",
    "Neighbor",
    "StatementAnnotation",
    "annotation_from_dict",
    "annotation_to_dict",
    "read_sidecar",
    "utcnow",
    "write_sidecar",
]
