"""Normalize raw extracted phrases into canonical graph terms.

Tables are immutable after load; lookups are safe for unrestricted
concurrent use. Canonical and surface phrases are stored lemma-normalized
so that normalization is idempotent by construction.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from pathlib import Path

from .errors import AmbiguousSynonym, IoError, TableParseError
from .terms import Term, Triple

DEFAULT_NAMESPACE = "http://example.org/kg/"

_TOKEN = re.compile(r"[a-z0-9]+")
_IRI_LIKE = re.compile(r"^[A-Za-z][A-Za-z0-9+.\-]*://\S+$")


def slugify(phrase: str) -> str:
    """Lowercase, non-alphanumerics to underscores, repeats collapsed."""
    slug = re.sub(r"[^a-z0-9]+", "_", phrase.casefold()).strip("_")
    return slug or "_"


def looks_like_iri(text: str) -> bool:
    return bool(_IRI_LIKE.match(text.strip()))


@dataclass(frozen=True)
class AlignmentTables:
    lemma_table: dict[str, str] = field(default_factory=dict)
    surface_to_canonical: dict[str, str] = field(default_factory=dict)
    predicate_table: dict[str, str] = field(default_factory=dict)
    ontology_map: dict[str, str] = field(default_factory=dict)
    default_namespace: str = DEFAULT_NAMESPACE

    @classmethod
    def empty(cls, default_namespace: str = DEFAULT_NAMESPACE) -> "AlignmentTables":
        return cls(default_namespace=default_namespace)

    @property
    def synonym_count(self) -> int:
        return len(self.surface_to_canonical)


def _lemmatize_tokens(tokens: list[str], lemma_table: dict[str, str]) -> list[str]:
    return [lemma_table.get(t, t) for t in tokens]


def _lemma_phrase(phrase: str, lemma_table: dict[str, str]) -> str:
    return " ".join(_lemmatize_tokens(_TOKEN.findall(phrase.casefold()), lemma_table))


def normalize_phrase(raw: str, tables: AlignmentTables) -> str:
    """Case-fold, lemmatize per token, then substitute synonym surface forms.

    Synonym matching is longest-match over token subsequences, scanning left
    to right; ties on length break on the lexicographically smaller canonical.
    Idempotent: canonicals are stored lemma-normalized and are never
    themselves surface forms (enforced at load).
    """
    tokens = _lemmatize_tokens(_TOKEN.findall(raw.casefold()), tables.lemma_table)
    if not tables.surface_to_canonical:
        return " ".join(tokens)

    # Surface keys are unique (disjointness is enforced at load), so a
    # position+length pair selects at most one canonical.
    surfaces_by_length: dict[int, dict[str, str]] = {}
    for surface, canonical in tables.surface_to_canonical.items():
        length = surface.count(" ") + 1
        surfaces_by_length.setdefault(length, {})[surface] = canonical
    max_len = max(surfaces_by_length)

    out: list[str] = []
    i = 0
    while i < len(tokens):
        matched = False
        for length in range(min(max_len, len(tokens) - i), 0, -1):
            candidate = " ".join(tokens[i : i + length])
            canonical = surfaces_by_length.get(length, {}).get(candidate)
            if canonical is not None:
                out.append(canonical)
                i += length
                matched = True
                break
        if not matched:
            out.append(tokens[i])
            i += 1
    return " ".join(out)


def phrase_to_iri(raw: str, tables: AlignmentTables) -> str:
    if looks_like_iri(raw):
        return raw.strip()
    canonical = normalize_phrase(raw, tables)
    mapped = tables.ontology_map.get(canonical)
    if mapped is not None:
        return mapped
    return tables.default_namespace + slugify(canonical)


def predicate_to_iri(raw: str, tables: AlignmentTables) -> str:
    if looks_like_iri(raw):
        return raw.strip()
    surface = " ".join(raw.casefold().split())
    mapped = tables.predicate_table.get(surface)
    if mapped is not None:
        return mapped
    return tables.default_namespace + slugify(normalize_phrase(raw, tables))


def align_triple(candidate, tables: AlignmentTables) -> Triple:
    """Map a filtered candidate onto canonical IRIs (total: fallbacks always apply)."""
    return Triple(
        Term.iri(phrase_to_iri(candidate.raw_subject, tables)),
        Term.iri(predicate_to_iri(candidate.raw_predicate, tables)),
        Term.iri(phrase_to_iri(candidate.raw_object, tables)),
    )


def _require_mapping(data: dict, key: str) -> dict:
    value = data.get(key, {})
    if not isinstance(value, dict):
        raise TableParseError(f"table section {key!r} must be an object")
    return value


def tables_from_dict(data: dict) -> AlignmentTables:
    lemmas = {
        str(k).casefold(): str(v).casefold()
        for k, v in _require_mapping(data, "lemmas").items()
    }

    surface_to_canonical: dict[str, str] = {}
    claimed: dict[str, str] = {}
    canonicals: set[str] = set()
    synonyms = _require_mapping(data, "synonyms")
    for canonical_raw, surfaces in synonyms.items():
        if not isinstance(surfaces, (list, tuple)):
            raise TableParseError(
                f"synonym entry {canonical_raw!r} must map to a list of surface forms"
            )
        canonical = _lemma_phrase(str(canonical_raw), lemmas)
        canonicals.add(canonical)
        for surface_raw in surfaces:
            surface = _lemma_phrase(str(surface_raw), lemmas)
            if surface in claimed and claimed[surface] != canonical:
                raise AmbiguousSynonym(surface, [claimed[surface], canonical])
            claimed[surface] = canonical
            surface_to_canonical[surface] = canonical
    loops = canonicals & set(surface_to_canonical)
    if loops:
        raise TableParseError(
            f"canonical phrases may not also be surface forms: {sorted(loops)}"
        )

    predicates = {
        " ".join(str(k).casefold().split()): str(v)
        for k, v in _require_mapping(data, "predicates").items()
    }
    ontology = {
        _lemma_phrase(str(k), lemmas): str(v)
        for k, v in _require_mapping(data, "ontology").items()
    }
    namespace = data.get("default_namespace", DEFAULT_NAMESPACE)
    if not isinstance(namespace, str) or not namespace:
        raise TableParseError("default_namespace must be a non-empty string")
    return AlignmentTables(
        lemma_table=lemmas,
        surface_to_canonical=surface_to_canonical,
        predicate_table=predicates,
        ontology_map=ontology,
        default_namespace=namespace,
    )


def load_tables(path: Path | str) -> AlignmentTables:
    """Load a JSON table file; an empty file yields empty tables."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise IoError(str(exc)) from exc
    if not text.strip():
        return AlignmentTables.empty()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise TableParseError(f"invalid JSON in {path}: {exc}") from exc
    if not isinstance(data, dict):
        raise TableParseError("table file must contain a JSON object")
    return tables_from_dict(data)
