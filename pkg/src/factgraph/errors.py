"""Exception taxonomy shared across the package.

Two broad families matter operationally: input/validation problems
(CLI exit code 1, HTTP 400/404/409) and runtime failures such as
transport or persistence errors (CLI exit code 2, HTTP 5xx).
"""

from __future__ import annotations


class FactGraphError(Exception):
    """Base class for all domain errors."""


class InputError(FactGraphError):
    """The caller supplied something invalid; retrying unchanged will not help."""


class RuntimeFailure(FactGraphError):
    """The environment failed (network, disk, remote endpoint)."""


# --- kg-store ---------------------------------------------------------------

class TurtleSyntaxError(InputError):
    """Malformed Turtle input, with 1-based line/column of the offending token."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column


class UnknownPrefixError(TurtleSyntaxError):
    def __init__(self, prefix: str, line: int, column: int):
        super().__init__(f"unknown prefix '{prefix}:'", line, column)
        self.prefix = prefix


class InvalidAnnotation(InputError):
    pass


# --- media-ingest -----------------------------------------------------------

class EmptySource(InputError):
    pass


class UnsupportedMediaType(InputError):
    def __init__(self, media_type: str):
        super().__init__(f"unsupported media type: {media_type}")
        self.media_type = media_type


class DecodeError(InputError):
    pass


# --- statement-extraction ---------------------------------------------------

class ExtractionFailed(RuntimeFailure):
    def __init__(self, reason: str):
        super().__init__(reason)
        self.reason = reason


class AuthError(RuntimeFailure):
    pass


class TransportError(RuntimeFailure):
    pass


# --- alignment --------------------------------------------------------------

class TableParseError(InputError):
    pass


class AmbiguousSynonym(TableParseError):
    def __init__(self, surface: str, canonicals: list[str]):
        super().__init__(
            f"surface form {surface!r} mapped under multiple canonicals: {sorted(canonicals)}"
        )
        self.surface = surface
        self.canonicals = sorted(canonicals)


# --- veracity-engine --------------------------------------------------------

class DegenerateClaim(InputError):
    pass


# --- scoring ----------------------------------------------------------------

class WeightSumError(InputError):
    pass


class VeracityWeightError(InputError):
    pass


class UnknownMetric(InputError):
    pass


class MissingMetric(InputError):
    pass


class DuplicateMetric(InputError):
    pass


class EmptyDocument(InputError):
    pass


# --- curation-service -------------------------------------------------------

class NotFound(InputError):
    pass


class IllegalTransition(InputError):
    pass


class InvalidRequest(InputError):
    pass


class IoError(RuntimeFailure):
    pass


class CorruptState(RuntimeFailure):
    def __init__(self, file: str, line: int, detail: str = ""):
        msg = f"corrupt state in {file}, line {line}"
        if detail:
            msg += f": {detail}"
        super().__init__(msg)
        self.file = file
        self.line = line


class BindError(RuntimeFailure):
    pass
