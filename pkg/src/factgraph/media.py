"""Media intake: stable media ids, text extraction, sentence segmentation.

Everything here is a pure function of its inputs; no network access.
URL fetching lives in the service layer.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from datetime import datetime
from html.parser import HTMLParser
from pathlib import Path
from urllib.parse import urlsplit, urlunsplit

from .errors import DecodeError, EmptySource, UnsupportedMediaType
from .graph import utcnow

MEDIA_ID_LENGTH = 16

_SUFFIX_TYPES = {".html": "html", ".htm": "html", ".txt": "text"}


@dataclass(frozen=True, slots=True)
class UrlSource:
    url: str


@dataclass(frozen=True, slots=True)
class FileSource:
    path: str


@dataclass(frozen=True, slots=True)
class TextSource:
    text: str


Source = UrlSource | FileSource | TextSource


@dataclass(frozen=True, slots=True)
class Sentence:
    index: int
    text: str
    span: tuple[int, int]


@dataclass(frozen=True, slots=True)
class MediaDocument:
    media_id: str
    source: Source
    media_type: str  # "html" | "text"
    raw: bytes
    text: str
    fetched_at: datetime


def canonicalize_url(url: str) -> str:
    """Lowercase scheme and host, strip one trailing slash, drop the fragment."""
    parts = urlsplit(url)
    path = parts.path
    if path.endswith("/"):
        path = path[:-1]
    return urlunsplit((parts.scheme.lower(), parts.netloc.lower(), path, parts.query, ""))


def _digest(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()[:MEDIA_ID_LENGTH]


def assign_media_id(source: Source) -> str:
    """Deterministic 16-hex id: canonical URL for web media, content digest otherwise."""
    if isinstance(source, UrlSource):
        if not source.url.strip():
            raise EmptySource("empty URL")
        return _digest(canonicalize_url(source.url).encode("utf-8"))
    if isinstance(source, TextSource):
        if not source.text:
            raise EmptySource("empty inline text")
        return _digest(source.text.encode("utf-8"))
    if isinstance(source, FileSource):
        if not source.path:
            raise EmptySource("empty file path")
        return _digest(_read_bytes(source.path))
    raise TypeError(f"unsupported source: {source!r}")


def _read_bytes(path: str) -> bytes:
    data = Path(path).read_bytes()
    if not data:
        raise EmptySource(f"empty file: {path}")
    return data


def media_type_for_path(path: str) -> str:
    suffix = Path(path).suffix.lower()
    if suffix in _SUFFIX_TYPES:
        return _SUFFIX_TYPES[suffix]
    raise UnsupportedMediaType(suffix.lstrip(".") or "unknown")


_DROPPED_ELEMENTS = {"script", "style", "nav", "header", "footer"}
_BLOCK_ELEMENTS = {
    "p", "div", "br", "li", "ul", "ol", "h1", "h2", "h3", "h4", "h5", "h6",
    "tr", "table", "section", "article", "blockquote", "title",
}


class _TextExtractor(HTMLParser):
    """Collects body text, skipping boilerplate containers entirely."""

    def __init__(self) -> None:
        super().__init__(convert_charrefs=True)
        self._dropped_depth = 0
        self.parts: list[str] = []

    def handle_starttag(self, tag, attrs):
        if tag in _DROPPED_ELEMENTS:
            self._dropped_depth += 1
        elif tag in _BLOCK_ELEMENTS and self._dropped_depth == 0:
            self.parts.append("\n\n")

    def handle_endtag(self, tag):
        if tag in _DROPPED_ELEMENTS:
            self._dropped_depth = max(0, self._dropped_depth - 1)
        elif tag in _BLOCK_ELEMENTS and self._dropped_depth == 0:
            self.parts.append("\n\n")

    def handle_data(self, data):
        if self._dropped_depth == 0:
            self.parts.append(data)


def normalize_whitespace(text: str) -> str:
    """Collapse runs of spaces; blank-line paragraph boundaries become one newline."""
    paragraphs = []
    for block in text.replace("\r\n", "\n").replace("\r", "\n").split("\n\n"):
        collapsed = " ".join(block.split())
        if collapsed:
            paragraphs.append(collapsed)
    return "\n".join(paragraphs)


def html_to_text(html: str) -> str:
    extractor = _TextExtractor()
    extractor.feed(html)
    extractor.close()
    return normalize_whitespace("".join(extractor.parts))


def extract_text(raw: bytes, media_type: str) -> str:
    try:
        decoded = raw.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise DecodeError(f"invalid UTF-8 at byte {exc.start}") from exc
    if media_type == "html":
        return html_to_text(decoded)
    if media_type == "text":
        return normalize_whitespace(decoded)
    raise UnsupportedMediaType(media_type)


def document_from_bytes(
    source: Source,
    raw: bytes,
    media_type: str,
    fetched_at: datetime | None = None,
) -> MediaDocument:
    text = extract_text(raw, media_type)
    if not text:
        raise EmptySource("no text content after extraction")
    return MediaDocument(
        media_id=assign_media_id(source),
        source=source,
        media_type=media_type,
        raw=raw,
        text=text,
        fetched_at=fetched_at or utcnow(),
    )


def document_from_file(path: str, fetched_at: datetime | None = None) -> MediaDocument:
    media_type = media_type_for_path(path)
    return document_from_bytes(FileSource(path), _read_bytes(path), media_type, fetched_at)


def document_from_text(text: str, fetched_at: datetime | None = None) -> MediaDocument:
    if not text.strip():
        raise EmptySource("empty inline text")
    return document_from_bytes(
        TextSource(text), text.encode("utf-8"), "text", fetched_at
    )


# -- sentence segmentation ----------------------------------------------------

# Tokens (lowercased, including the dot) that never end a sentence.
ABBREVIATIONS = {
    "al.", "approx.", "cf.", "dr.", "e.g.", "eq.", "etc.", "fig.", "figs.",
    "i.e.", "mr.", "mrs.", "ms.", "no.", "prof.", "vs.",
}


def _is_abbreviation(text: str, dot_index: int) -> bool:
    k = dot_index - 1
    while k >= 0 and (text[k].isalnum() or text[k] == "."):
        k -= 1
    token = text[k + 1 : dot_index + 1].lower()
    if token in ABBREVIATIONS:
        return True
    # single-letter initials such as "J. Smith"
    return len(token) == 2 and token[0].isalpha()


def segment_sentences(text: str) -> list[Sentence]:
    """Split on ``. ! ?`` followed by whitespace and a capital letter.

    Spans index into ``text`` and slice back to exactly the sentence.
    """
    sentences: list[Sentence] = []
    n = len(text)
    start = 0
    while start < n and text[start].isspace():
        start += 1
    j = start
    while j < n:
        ch = text[j]
        if ch in ".!?":
            k = j + 1
            while k < n and text[k].isspace():
                k += 1
            boundary = k > j + 1 and k < n and text[k].isupper()
            if boundary and ch == "." and _is_abbreviation(text, j):
                boundary = False
            if boundary:
                sentences.append(Sentence(len(sentences), text[start : j + 1], (start, j + 1)))
                start = k
                j = k
                continue
        j += 1
    # trailing sentence: everything left, trimmed of surrounding whitespace
    tail = text[start:].rstrip()
    if tail:
        end = start + len(tail)
        sentences.append(Sentence(len(sentences), text[start:end], (start, end)))
    return sentences
