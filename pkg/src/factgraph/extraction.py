"""Turn sentences into candidate triples, then filter non-reproducible output.

Two extractors share one interface: a deterministic rule-based verb-lexicon
splitter (offline default) and a remote chat-completion client. Both feed the
hallucination filter, which only keeps candidates whose subject and object
tokens actually occur in the source sentence. Remote responses are written
verbatim to an audit log before any parsing.
"""

from __future__ import annotations

import json
import logging
import os
import re
from dataclasses import dataclass, field
from enum import Enum
from importlib import resources
from pathlib import Path

import httpx

from .alignment import AlignmentTables, align_triple
from .errors import AuthError, ExtractionFailed, TransportError
from .graph import utcnow
from .media import MediaDocument, Sentence, segment_sentences
from .records import (
    RULE_BASED,
    CandidateTriple,
    ReviewState,
    StatementRecord,
    TrustChannel,
    record_id_for,
    remote_extractor_id,
)

log = logging.getLogger(__name__)

# Verb phrases recognized by the rule-based extractor, longest first at a
# given position. Multi-word entries must precede their single-word suffixes.
DEFAULT_VERB_LEXICON: tuple[str, ...] = (
    "does not cause",
    "do not cause",
    "leads to",
    "lead to",
    "results in",
    "causes",
    "cause",
    "caused",
    "increases",
    "increase",
    "increased",
    "decreases",
    "decrease",
    "reduces",
    "reduce",
    "reduced",
    "raises",
    "raise",
    "rises",
    "rise",
    "warms",
    "warm",
    "accelerates",
    "threatens",
    "melts",
    "drives",
)

_WORD = re.compile(r"[\w']+", re.UNICODE)

STOPWORDS = frozenset(
    "a an and are as at be been by for from has have in is it its of on or "
    "s that the their this to was were will with".split()
)


def base_form(token: str) -> str:
    """Light, deterministic base-form reduction used by the hallucination filter."""
    token = token.casefold()
    if token.endswith("'s"):
        token = token[:-2]
    if token.endswith("ies") and len(token) > 4:
        return token[:-3] + "y"
    if token.endswith("s") and not token.endswith("ss") and len(token) > 3:
        return token[:-1]
    return token


def content_tokens(phrase: str) -> set[str]:
    return {base_form(t) for t in _WORD.findall(phrase) if t.casefold() not in STOPWORDS}


class RejectReason(Enum):
    SUBJECT_NOT_IN_SOURCE = "subject_not_in_source"
    OBJECT_NOT_IN_SOURCE = "object_not_in_source"


def filter_hallucinations(
    candidates: list[CandidateTriple], sentence: str
) -> tuple[list[CandidateTriple], list[tuple[CandidateTriple, RejectReason]]]:
    """Keep a candidate only if its subject and object tokens occur in the sentence.

    Comparison is after case-folding and base-form reduction on both sides.
    The predicate is exempt: alignment may legitimately rephrase it.
    """
    sentence_tokens = {base_form(t) for t in _WORD.findall(sentence)}
    kept: list[CandidateTriple] = []
    rejected: list[tuple[CandidateTriple, RejectReason]] = []
    for candidate in candidates:
        if not content_tokens(candidate.raw_subject) <= sentence_tokens:
            rejected.append((candidate, RejectReason.SUBJECT_NOT_IN_SOURCE))
        elif not content_tokens(candidate.raw_object) <= sentence_tokens:
            rejected.append((candidate, RejectReason.OBJECT_NOT_IN_SOURCE))
        else:
            kept.append(candidate)
    return kept, rejected


# -- rule-based extractor -----------------------------------------------------


def extract_rule_based(
    sentence: Sentence, lexicon: tuple[str, ...] = DEFAULT_VERB_LEXICON
) -> list[CandidateTriple]:
    """Split on the leftmost verb-phrase match that leaves both sides non-empty.

    A match flush against the sentence start or end cannot be an SVO pivot
    (no subject or no object), so scanning continues; no usable match means
    no claim.
    """
    words = [(m.group(0), m.start(), m.end()) for m in _WORD.finditer(sentence.text)]
    lowered = [w[0].casefold() for w in words]
    phrases = sorted((tuple(p.split()) for p in lexicon), key=lambda p: (-len(p), p))
    for i in range(len(words)):
        for phrase in phrases:
            if tuple(lowered[i : i + len(phrase)]) != phrase:
                continue
            subject = sentence.text[: words[i][1]].strip(" \t,;:").strip()
            tail_start = words[i + len(phrase) - 1][2]
            obj = sentence.text[tail_start:].strip().rstrip(".!?").strip(" \t,;:")
            if not subject or not obj:
                break  # pivot at a sentence edge; try later positions
            return [
                CandidateTriple(
                    raw_subject=subject,
                    raw_predicate=" ".join(phrase),
                    raw_object=obj,
                    sentence_index=sentence.index,
                    extractor=RULE_BASED,
                )
            ]
    return []


# -- remote extractor ---------------------------------------------------------


@dataclass(frozen=True)
class ExtractorConfig:
    endpoint_url: str
    model: str
    api_key_env_var: str
    temperature: float = 0.0
    max_retries: int = 2
    prompt_template: str = ""

    def __post_init__(self) -> None:
        if self.max_retries < 0:
            raise ValueError("max_retries must be >= 0")
        if self.temperature < 0:
            raise ValueError("temperature must be >= 0")

    def prompt_for(self, sentence: str) -> str:
        template = self.prompt_template or default_prompt_template()
        return template.format(sentence=sentence)


def default_prompt_template() -> str:
    return (
        resources.files("factgraph") / "assets" / "extraction_prompt_v1.txt"
    ).read_text(encoding="utf-8")


class AuditLog:
    """Append-only JSON-lines log of raw extractor exchanges."""

    def __init__(self, path: Path | str | None):
        self.path = Path(path) if path else None

    def append(self, media_id: str, sentence_index: int, prompt: str, raw_response: str) -> None:
        if self.path is None:
            return
        entry = {
            "media_id": media_id,
            "sentence_index": sentence_index,
            "prompt": prompt,
            "raw_response": raw_response,
            "timestamp": utcnow().isoformat(),
        }
        self.path.parent.mkdir(parents=True, exist_ok=True)
        with self.path.open("a", encoding="utf-8") as fh:
            fh.write(json.dumps(entry, ensure_ascii=False) + "\n")


def _find_json_array(text: str) -> list | None:
    """The response content itself, or its first balanced [...] block, as JSON."""
    stripped = text.strip()
    if stripped.startswith("```"):
        stripped = re.sub(r"^```[a-zA-Z]*\s*|\s*```$", "", stripped).strip()
    try:
        parsed = json.loads(stripped)
        if isinstance(parsed, list):
            return parsed
    except json.JSONDecodeError:
        pass
    start = stripped.find("[")
    while start != -1:
        depth = 0
        for i in range(start, len(stripped)):
            if stripped[i] == "[":
                depth += 1
            elif stripped[i] == "]":
                depth -= 1
                if depth == 0:
                    try:
                        parsed = json.loads(stripped[start : i + 1])
                    except json.JSONDecodeError:
                        break
                    if isinstance(parsed, list):
                        return parsed
                    break
        start = stripped.find("[", start + 1)
    return None


def _candidates_from_payload(
    payload: list, sentence_index: int, extractor: str, attempt: int
) -> list[CandidateTriple]:
    candidates = []
    for item in payload:
        if not isinstance(item, dict):
            raise ValueError(f"array element is not an object: {item!r}")
        try:
            candidate = CandidateTriple(
                raw_subject=str(item["subject"]).strip(),
                raw_predicate=str(item["predicate"]).strip(),
                raw_object=str(item["object"]).strip(),
                sentence_index=sentence_index,
                extractor=extractor,
                attempt=attempt,
            )
        except (KeyError, ValueError) as exc:
            raise ValueError(f"bad triple object {item!r}: {exc}") from exc
        candidates.append(candidate)
    return candidates


def extract_remote(
    sentence: Sentence,
    config: ExtractorConfig,
    *,
    media_id: str = "",
    audit_log: AuditLog | None = None,
    client: httpx.Client | None = None,
) -> list[CandidateTriple]:
    """Ask a chat-completion endpoint for triples; retry malformed responses.

    Wire format: POST {model, messages, temperature}; the first choice's
    message content must contain a JSON array of {subject, predicate, object}.
    """
    api_key = os.environ.get(config.api_key_env_var, "")
    if not api_key:
        raise AuthError(f"environment variable {config.api_key_env_var} is not set")
    audit = audit_log or AuditLog(None)
    prompt = config.prompt_for(sentence.text)
    body = {
        "model": config.model,
        "messages": [{"role": "user", "content": prompt}],
        "temperature": config.temperature,
    }
    headers = {"Authorization": f"Bearer {api_key}"}
    owned = client is None
    http = client or httpx.Client(timeout=30.0)
    extractor = remote_extractor_id(config.model)
    last_error = "no attempts made"
    try:
        for attempt in range(config.max_retries + 1):
            try:
                response = http.post(config.endpoint_url, json=body, headers=headers)
            except httpx.HTTPError as exc:
                raise TransportError(f"extractor endpoint unreachable: {exc}") from exc
            if response.status_code in (401, 403):
                raise AuthError(f"extractor endpoint rejected credentials ({response.status_code})")
            if response.status_code >= 500 or response.status_code == 429:
                raise TransportError(f"extractor endpoint returned {response.status_code}")
            audit.append(media_id, sentence.index, prompt, response.text)
            try:
                content = response.json()["choices"][0]["message"]["content"]
            except (json.JSONDecodeError, KeyError, IndexError, TypeError):
                last_error = f"attempt {attempt}: response missing message content"
                continue
            payload = _find_json_array(content)
            if payload is None:
                last_error = f"attempt {attempt}: no JSON array in response content"
                continue
            try:
                return _candidates_from_payload(payload, sentence.index, extractor, attempt)
            except ValueError as exc:
                last_error = f"attempt {attempt}: {exc}"
                continue
        raise ExtractionFailed(last_error)
    finally:
        if owned:
            http.close()


# -- whole-document pipeline --------------------------------------------------


@dataclass(frozen=True, slots=True)
class SentenceFailure:
    sentence_index: int
    error: str


@dataclass
class ExtractionContext:
    """Everything extract_document needs beyond the document itself."""

    tables: AlignmentTables = field(default_factory=AlignmentTables.empty)
    lexicon: tuple[str, ...] = DEFAULT_VERB_LEXICON
    remote_config: ExtractorConfig | None = None
    audit_log: AuditLog | None = None
    client: httpx.Client | None = None


def extract_document(
    doc: MediaDocument,
    mode: str,
    trust_channel: TrustChannel,
    context: ExtractionContext | None = None,
    failures: list[SentenceFailure] | None = None,
) -> list[StatementRecord]:
    """Segment, extract, filter, and align a whole document into Pending records.

    A sentence whose extraction fails is recorded in ``failures`` and does not
    abort the rest of the document. AuthError/TransportError are endpoint-global
    and propagate immediately.
    """
    context = context or ExtractionContext()
    if mode == "remote" and context.remote_config is None:
        raise ExtractionFailed("remote extraction requested but no extractor configured")
    records: list[StatementRecord] = []
    seen_ids: set[str] = set()
    for sentence in segment_sentences(doc.text):
        try:
            candidates = _extract_sentence(sentence, mode, doc.media_id, context)
        except ExtractionFailed as exc:
            log.warning("sentence %d extraction failed: %s", sentence.index, exc)
            if failures is not None:
                failures.append(SentenceFailure(sentence.index, str(exc)))
            continue
        kept, rejected = filter_hallucinations(candidates, sentence.text)
        for candidate, reason in rejected:
            log.info(
                "rejected candidate %r / %r: %s",
                candidate.raw_subject,
                candidate.raw_object,
                reason.value,
            )
        for candidate in kept:
            record_id = record_id_for(doc.media_id, candidate)
            if record_id in seen_ids:
                continue
            seen_ids.add(record_id)
            records.append(
                StatementRecord(
                    record_id=record_id,
                    triple=align_triple(candidate, context.tables),
                    candidate=candidate,
                    media_ids=(doc.media_id,),
                    span=sentence.span,
                    trust_channel=trust_channel,
                    review_state=ReviewState.PENDING,
                )
            )
    return records


def _extract_sentence(
    sentence: Sentence, mode: str, media_id: str, context: ExtractionContext
) -> list[CandidateTriple]:
    if mode == "rule":
        return extract_rule_based(sentence, context.lexicon)
    if mode == "remote":
        return extract_remote(
            sentence,
            context.remote_config,
            media_id=media_id,
            audit_log=context.audit_log,
            client=context.client,
        )
    raise ValueError(f"unknown extraction mode: {mode!r}")
