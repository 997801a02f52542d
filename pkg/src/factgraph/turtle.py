"""Turtle subset reader/writer for ground-truth files.

Supported grammar: ``@prefix`` declarations, absolute IRIs in angle
brackets, prefixed names, quoted string literals (single line, with
``\\"`` ``\\\\`` ``\\n`` ``\\t`` ``\\r`` ``\\uXXXX`` escapes), bare numeric
literals, the ``a`` keyword (expands to rdf:type), ``#`` comments, and
``.``-terminated single triples. Blank nodes, collections, predicate/object
lists, and multi-line literals are rejected with a position-carrying error.
"""

from __future__ import annotations

from .errors import TurtleSyntaxError, UnknownPrefixError
from .terms import RDF_TYPE, Term, TermKind, Triple

_PN_CHARS = set("abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789_-")
_ESCAPES = {'"': '"', "\\": "\\", "n": "\n", "t": "\t", "r": "\r"}
_UNESCAPES = {"\n": "\\n", "\t": "\\t", "\r": "\\r", '"': '\\"', "\\": "\\\\"}


class _Scanner:
    """Character cursor with 1-based line/column tracking."""

    def __init__(self, text: str):
        self.text = text
        self.pos = 0
        self.line = 1
        self.column = 1

    def eof(self) -> bool:
        return self.pos >= len(self.text)

    def peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def advance(self) -> str:
        ch = self.text[self.pos]
        self.pos += 1
        if ch == "\n":
            self.line += 1
            self.column = 1
        else:
            self.column += 1
        return ch

    def skip_ws_and_comments(self) -> None:
        while not self.eof():
            ch = self.peek()
            if ch in " \t\r\n":
                self.advance()
            elif ch == "#":
                while not self.eof() and self.peek() != "\n":
                    self.advance()
            else:
                return

    def error(self, message: str) -> TurtleSyntaxError:
        return TurtleSyntaxError(message, self.line, self.column)


def _read_iriref(sc: _Scanner) -> str:
    line, col = sc.line, sc.column
    sc.advance()  # consume '<'
    out = []
    while True:
        if sc.eof():
            raise TurtleSyntaxError("unterminated IRI", line, col)
        ch = sc.advance()
        if ch == ">":
            break
        if ch in " \t\r\n":
            raise TurtleSyntaxError("whitespace inside IRI", line, col)
        out.append(ch)
    iri = "".join(out)
    if not iri:
        raise TurtleSyntaxError("empty IRI", line, col)
    return iri


def _read_string(sc: _Scanner) -> str:
    line, col = sc.line, sc.column
    sc.advance()  # consume '"'
    out = []
    while True:
        if sc.eof():
            raise TurtleSyntaxError("unterminated string literal", line, col)
        ch = sc.advance()
        if ch == '"':
            return "".join(out)
        if ch == "\n":
            raise TurtleSyntaxError("multi-line literals are not supported", line, col)
        if ch == "\\":
            if sc.eof():
                raise TurtleSyntaxError("dangling escape in string literal", line, col)
            esc = sc.advance()
            if esc in _ESCAPES:
                out.append(_ESCAPES[esc])
            elif esc == "u":
                digits = "".join(sc.advance() for _ in range(4) if not sc.eof())
                try:
                    out.append(chr(int(digits, 16)))
                except ValueError:
                    raise TurtleSyntaxError(f"bad \\u escape: {digits!r}", line, col) from None
            else:
                raise TurtleSyntaxError(f"unknown escape \\{esc}", line, col)
        else:
            out.append(ch)


def _read_name(sc: _Scanner) -> str:
    """Read a prefixed-name token; a trailing '.' belongs to the statement."""
    out = []
    while not sc.eof():
        ch = sc.peek()
        if ch in _PN_CHARS or ch == ":":
            out.append(sc.advance())
        elif ch == ".":
            nxt = sc.text[sc.pos + 1] if sc.pos + 1 < len(sc.text) else ""
            if nxt in _PN_CHARS:
                out.append(sc.advance())
            else:
                break
        else:
            break
    return "".join(out)


def _read_number(sc: _Scanner) -> str:
    out = []
    if sc.peek() in "+-":
        out.append(sc.advance())
    while not sc.eof() and (sc.peek().isdigit() or sc.peek() == "."):
        if sc.peek() == ".":
            nxt = sc.text[sc.pos + 1] if sc.pos + 1 < len(sc.text) else ""
            if not nxt.isdigit():
                break
        out.append(sc.advance())
    return "".join(out)


def _expand(name: str, prefixes: dict[str, str], line: int, col: int) -> str:
    prefix, _, local = name.partition(":")
    if prefix not in prefixes:
        raise UnknownPrefixError(prefix, line, col)
    return prefixes[prefix] + local


def _read_term(sc: _Scanner, prefixes: dict[str, str], position: str) -> Term:
    sc.skip_ws_and_comments()
    if sc.eof():
        raise sc.error(f"expected {position}, found end of input")
    line, col = sc.line, sc.column
    ch = sc.peek()
    if ch == "<":
        return Term.iri(_read_iriref(sc))
    if ch == '"':
        if position != "object":
            raise sc.error(f"literal not allowed as {position}")
        return Term.literal(_read_string(sc))
    if ch in "_([":
        raise sc.error("blank nodes and collections are not supported")
    if ch.isdigit() or (ch in "+-"):
        if position != "object":
            raise sc.error(f"numeric literal not allowed as {position}")
        num = _read_number(sc)
        if not num or num in "+-":
            raise TurtleSyntaxError("malformed numeric literal", line, col)
        return Term.literal(num)
    name = _read_name(sc)
    if not name:
        raise TurtleSyntaxError(f"unexpected character {ch!r}", line, col)
    if name == "a":
        if position != "predicate":
            raise TurtleSyntaxError("'a' keyword is only valid as predicate", line, col)
        return Term.iri(RDF_TYPE)
    if ":" not in name:
        raise TurtleSyntaxError(f"expected prefixed name or IRI, got {name!r}", line, col)
    return Term.iri(_expand(name, prefixes, line, col))


def _read_prefix_directive(sc: _Scanner, prefixes: dict[str, str]) -> None:
    line, col = sc.line, sc.column
    word = []
    while not sc.eof() and (sc.peek().isalpha() or sc.peek() == "@"):
        word.append(sc.advance())
    directive = "".join(word)
    if directive != "@prefix":
        raise TurtleSyntaxError(f"unsupported directive {directive!r}", line, col)
    sc.skip_ws_and_comments()
    name = _read_name(sc)
    if not name.endswith(":"):
        raise sc.error("expected prefix name ending in ':'")
    prefix = name[:-1]
    sc.skip_ws_and_comments()
    if sc.peek() != "<":
        raise sc.error("expected IRI in @prefix directive")
    base = _read_iriref(sc)
    sc.skip_ws_and_comments()
    if sc.eof() or sc.advance() != ".":
        raise sc.error("expected '.' after @prefix directive")
    prefixes[prefix] = base


def parse_turtle(
    text: str, prefix_table: dict[str, str] | None = None
) -> tuple[set[Triple], dict[str, str]]:
    """Parse a Turtle-subset document into a triple set.

    Prefixed names are expanded to absolute IRIs; duplicate statements
    collapse. Returns the triples together with the effective prefix table
    (the passed-in table, if any, extended by ``@prefix`` declarations).

    Raises :class:`TurtleSyntaxError` (with line/column) on malformed input
    and :class:`UnknownPrefixError` for unresolvable prefixed names.
    """
    prefixes = dict(prefix_table) if prefix_table else {}
    triples: set[Triple] = set()
    sc = _Scanner(text)
    while True:
        sc.skip_ws_and_comments()
        if sc.eof():
            break
        if sc.peek() == "@":
            _read_prefix_directive(sc, prefixes)
            continue
        subject = _read_term(sc, prefixes, "subject")
        predicate = _read_term(sc, prefixes, "predicate")
        obj = _read_term(sc, prefixes, "object")
        sc.skip_ws_and_comments()
        if sc.eof():
            raise sc.error("expected '.' to terminate statement")
        ch = sc.advance()
        if ch != ".":
            if ch in ";,":
                raise sc.error("predicate/object lists are not supported")
            raise sc.error(f"expected '.' to terminate statement, got {ch!r}")
        triples.add(Triple(subject, predicate, obj))
    return triples, prefixes


def _abbreviate(iri: str, prefixes: dict[str, str]) -> str | None:
    """Longest-base prefix abbreviation, or None if no prefix applies."""
    best: tuple[int, str, str] | None = None  # (base length, prefix, local)
    for prefix, base in prefixes.items():
        if not iri.startswith(base):
            continue
        local = iri[len(base):]
        if not all(c in _PN_CHARS for c in local):
            continue
        if (
            best is None
            or len(base) > best[0]
            or (len(base) == best[0] and prefix < best[1])
        ):
            best = (len(base), prefix, local)
    if best is None:
        return None
    return f"{best[1]}:{best[2]}"


def _render_term(term: Term, prefixes: dict[str, str]) -> str:
    if term.kind is TermKind.LITERAL:
        escaped = "".join(_UNESCAPES.get(c, c) for c in term.value)
        return f'"{escaped}"'
    abbreviated = _abbreviate(term.value, prefixes)
    return abbreviated if abbreviated is not None else f"<{term.value}>"


def serialize_turtle(triples, prefix_table: dict[str, str] | None = None) -> str:
    """Serialize triples deterministically (sorted by subject, predicate, object).

    ``parse_turtle(serialize_turtle(ts, p))`` yields exactly ``ts``.
    """
    prefixes = dict(prefix_table) if prefix_table else {}
    lines = [f"@prefix {p}: <{base}> ." for p, base in sorted(prefixes.items())]
    statements = [
        f"{_render_term(t.subject, prefixes)} {_render_term(t.predicate, prefixes)} "
        f"{_render_term(t.object, prefixes)} ."
        for t in sorted(triples, key=Triple.sort_key)
    ]
    if lines and statements:
        lines.append("")
    lines.extend(statements)
    return "\n".join(lines) + ("\n" if lines else "")
