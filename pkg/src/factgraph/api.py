"""JSON HTTP surface over the curation service.

Every CLI action has an HTTP equivalent producing identical state
transitions. Domain errors map to 400 (validation), 404 (unknown ids),
409 (illegal review transitions), and 502 (remote extractor failure).
"""

from __future__ import annotations

import json

from fastapi import FastAPI, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse, PlainTextResponse
from pydantic import BaseModel, Field

from .curation import CurationService
from .graph import annotation_from_dict
from .errors import (
    AuthError,
    ExtractionFailed,
    FactGraphError,
    IllegalTransition,
    InputError,
    InvalidRequest,
    NotFound,
    TransportError,
)
from .records import ReviewAction, ReviewState, TrustChannel, record_to_dict
from .veracity import verdict_to_dict


class SubmitDocumentRequest(BaseModel):
    url: str | None = None
    text: str | None = None
    trust_channel: str = Field(pattern="^(trusted|untrusted)$")
    mode: str = Field(default="rule", pattern="^(rule|remote)$")


class ReviewRequest(BaseModel):
    action: str = Field(pattern="^(approve|reject|reopen)$")
    reviewer: str
    note: str | None = None


class CheckRequest(BaseModel):
    subject: str
    predicate: str
    object: str


class ImportRequest(BaseModel):
    turtle: str
    sidecar: str | None = None  # JSON-lines annotation sidecar body
    name: str = "import.ttl"


def _status_for(exc: FactGraphError) -> int:
    if isinstance(exc, NotFound):
        return 404
    if isinstance(exc, IllegalTransition):
        return 409
    if isinstance(exc, (ExtractionFailed, AuthError, TransportError)):
        return 502
    if isinstance(exc, InputError):
        return 400
    return 500


def create_app(service: CurationService, ui_origin: str = "*") -> FastAPI:
    app = FastAPI(title="factgraph", version="0.1.0")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=[ui_origin] if ui_origin != "*" else ["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )
    app.state.service = service

    @app.exception_handler(FactGraphError)
    async def domain_error_handler(_request: Request, exc: FactGraphError):
        return JSONResponse(
            status_code=_status_for(exc),
            content={"error": type(exc).__name__, "detail": str(exc)},
        )

    @app.get("/healthz")
    def healthz():
        return {"status": "ok"}

    @app.post("/documents")
    def submit_document(body: SubmitDocumentRequest):
        media_id, record_ids = service.submit_document(
            source=body.url,
            trust_channel=TrustChannel(body.trust_channel),
            mode=body.mode,
            inline_text=body.text,
        )
        return {"media_id": media_id, "record_ids": record_ids}

    @app.get("/documents/{media_id}/report")
    def document_report(media_id: str):
        return service.get_document_report(media_id)

    @app.get("/records")
    def list_records(state: str | None = None):
        wanted = None
        if state:
            try:
                wanted = ReviewState(state.lower())
            except ValueError:
                raise InvalidRequest(f"unknown review state: {state!r}") from None
        return {"records": [record_to_dict(r) for r in service.records_in_state(wanted)]}

    @app.post("/records/{record_id}/review")
    def review_record(record_id: str, body: ReviewRequest):
        record = service.review(
            record_id, ReviewAction(body.action), body.reviewer, body.note
        )
        return record_to_dict(record)

    @app.post("/check")
    def check_claim(body: CheckRequest):
        verdict = service.check(body.subject, body.predicate, body.object)
        return verdict_to_dict(verdict)

    @app.post("/kg/import")
    def kg_import(body: ImportRequest):
        entries = []
        if body.sidecar:
            for lineno, line in enumerate(body.sidecar.splitlines(), start=1):
                if not line.strip():
                    continue
                try:
                    entries.append(annotation_from_dict(json.loads(line)))
                except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
                    raise InvalidRequest(f"bad sidecar line {lineno}: {exc}") from None
        added = service.bootstrap_import_text(body.turtle, entries, source_name=body.name)
        return {"added": added, **service.stats()}

    @app.get("/kg/stats")
    def kg_stats():
        return service.stats()

    @app.get("/kg/export")
    def kg_export():
        return PlainTextResponse(service.export_turtle(), media_type="text/turtle")

    return app
