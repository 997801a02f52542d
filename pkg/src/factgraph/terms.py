"""Graph terms: IRIs, literals, and the subject-predicate-object triple."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

RDF_TYPE = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type"

_WHITESPACE = set(" \t\r\n\f\v")


class TermKind(Enum):
    IRI = "iri"
    LITERAL = "literal"


@dataclass(frozen=True, slots=True)
class Term:
    """A node or edge label: an absolute IRI or a literal with its exact text."""

    kind: TermKind
    value: str

    def __post_init__(self) -> None:
        if self.kind is TermKind.IRI:
            if not self.value:
                raise ValueError("IRI term must be non-empty")
            if any(c in _WHITESPACE for c in self.value):
                raise ValueError(f"IRI term must not contain whitespace: {self.value!r}")

    @staticmethod
    def iri(value: str) -> "Term":
        return Term(TermKind.IRI, value)

    @staticmethod
    def literal(value: str) -> "Term":
        return Term(TermKind.LITERAL, value)

    @property
    def is_iri(self) -> bool:
        return self.kind is TermKind.IRI

    def sort_key(self) -> tuple[str, str]:
        return (self.kind.value, self.value)

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True, slots=True)
class Triple:
    """One unit of knowledge; equality is structural over the three terms."""

    subject: Term
    predicate: Term
    object: Term

    def __post_init__(self) -> None:
        if not self.subject.is_iri:
            raise ValueError("triple subject must be an IRI term")
        if not self.predicate.is_iri:
            raise ValueError("triple predicate must be an IRI term")

    def sort_key(self) -> tuple[str, str, str, str]:
        return (self.subject.value, self.predicate.value, *self.object.sort_key())

    def __str__(self) -> str:
        return f"({self.subject} {self.predicate} {self.object})"


def triple(subject: str, predicate: str, obj: str | Term) -> Triple:
    """Convenience constructor from plain IRI strings (object may be a Term)."""
    o = obj if isinstance(obj, Term) else Term.iri(obj)
    return Triple(Term.iri(subject), Term.iri(predicate), o)
