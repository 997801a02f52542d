import math

import pytest
from fastapi.testclient import TestClient

from factgraph.api import create_app
from factgraph.curation import CurationService
from factgraph.records import TrustChannel
from factgraph.turtle import parse_turtle

from .conftest import FIXTURES, NS, fixed_clock

TAU_VIA_GW = 1.0 / (1.0 + math.log(2.0))


@pytest.fixture
def service(fixture_tables):
    service = CurationService(tables=fixture_tables, clock=fixed_clock)
    service.kg.set_negation_map({NS + "does_not_cause": NS + "causes"})
    service.bootstrap_import(
        FIXTURES / "ground_truth.ttl", FIXTURES / "ground_truth_annotations.jsonl"
    )
    return service


@pytest.fixture
def client(service):
    return TestClient(create_app(service), raise_server_exceptions=False)


def test_healthz(client):
    response = client.get("/healthz")
    assert response.status_code == 200
    assert response.json() == {"status": "ok"}


def test_check_member_triple_confirmed(client):
    response = client.post(
        "/check",
        json={"subject": ":co2_concentration", "predicate": ":causes", "object": ":global_warming"},
    )
    assert response.status_code == 200
    body = response.json()
    assert body["verdict"] == "confirmed"
    assert body["veracity"] == 1.0
    assert body["evidence"]["type"] == "exact_match"


def test_check_path_supported_with_evidence(client):
    response = client.post(
        "/check",
        json={
            "subject": ":co2_concentration",
            "predicate": ":causes",
            "object": ":sea_level_rise",
        },
    )
    body = response.json()
    assert body["verdict"] == "supported"
    assert abs(body["veracity"] - TAU_VIA_GW) < 1e-9
    assert [n["value"] for n in body["evidence"]["nodes"]] == [
        NS + "co2_concentration",
        NS + "global_warming",
        NS + "sea_level_rise",
    ]


def test_submit_document_and_report(client):
    # inline text goes through the plain-text path, so use the two claims directly
    response = client.post(
        "/documents",
        json={
            "text": "CO2 concentration causes global warming. CO2 concentration causes sea level rise.",
            "trust_channel": "untrusted",
        },
    )
    assert response.status_code == 200
    body = response.json()
    assert len(body["record_ids"]) == 2
    report = client.get(f"/documents/{body['media_id']}/report")
    assert report.status_code == 200
    data = report.json()
    assert [s["color"] for s in data["statements"]] == ["green", "yellow"]
    assert data["aggregate"] == pytest.approx((1.0 + TAU_VIA_GW) / 2, abs=1e-9)


def test_report_unknown_media_is_404(client):
    response = client.get("/documents/ffffffffffffffff/report")
    assert response.status_code == 404
    assert response.json()["error"] == "NotFound"


def test_records_listing_filters_by_state(client, service, tmp_path):
    path = tmp_path / "doc.txt"
    path.write_text("Deforestation increases flood risk.")
    media_id, (record_id,) = service.submit_document(str(path), TrustChannel.TRUSTED_SOURCE)
    pending = client.get("/records", params={"state": "Pending"}).json()["records"]
    assert [r["record_id"] for r in pending] == [record_id]
    assert client.get("/records", params={"state": "nonsense"}).status_code == 400


def test_review_flow_and_conflicts(client, service, tmp_path):
    path = tmp_path / "doc.txt"
    path.write_text("Deforestation increases flood risk.")
    _, (record_id,) = service.submit_document(str(path), TrustChannel.TRUSTED_SOURCE)

    response = client.post(
        f"/records/{record_id}/review", json={"action": "approve", "reviewer": "alex"}
    )
    assert response.status_code == 200
    assert response.json()["review_state"] == "approved"

    again = client.post(
        f"/records/{record_id}/review", json={"action": "approve", "reviewer": "alex"}
    )
    assert again.status_code == 409
    assert again.json()["error"] == "IllegalTransition"

    missing = client.post(
        "/records/ffffffffffffffff/review", json={"action": "approve", "reviewer": "alex"}
    )
    assert missing.status_code == 404


def test_stats_track_pending_and_triples(client, service, tmp_path):
    assert client.get("/kg/stats").json() == {"triples": 3, "nodes": 4, "pending_records": 0}
    path = tmp_path / "doc.txt"
    path.write_text("Deforestation increases flood risk.")
    _, (record_id,) = service.submit_document(str(path), TrustChannel.TRUSTED_SOURCE)
    assert client.get("/kg/stats").json()["pending_records"] == 1
    client.post(f"/records/{record_id}/review", json={"action": "approve", "reviewer": "alex"})
    stats = client.get("/kg/stats").json()
    assert stats == {"triples": 4, "nodes": 6, "pending_records": 0}


def test_export_parses_back_to_graph(client, service, tmp_path):
    path = tmp_path / "doc.txt"
    path.write_text("Deforestation increases flood risk.")
    _, (record_id,) = service.submit_document(str(path), TrustChannel.TRUSTED_SOURCE)
    client.post(f"/records/{record_id}/review", json={"action": "approve", "reviewer": "alex"})
    response = client.get("/kg/export")
    assert response.status_code == 200
    assert response.headers["content-type"].startswith("text/turtle")
    triples, _ = parse_turtle(response.text)
    assert triples == set(service.kg.triples)
    assert len(triples) == 4


def test_validation_errors_are_400(client):
    response = client.post(
        "/check", json={"subject": " ", "predicate": ":causes", "object": ":x"}
    )
    assert response.status_code == 400
    degenerate = client.post(
        "/check", json={"subject": ":a", "predicate": ":causes", "object": ":a"}
    )
    assert degenerate.status_code == 400


def test_submit_without_source_is_400(client):
    response = client.post("/documents", json={"trust_channel": "untrusted"})
    assert response.status_code == 400


def test_kg_import_endpoint(fixture_tables):
    service = CurationService(tables=fixture_tables, clock=fixed_clock)
    client = TestClient(create_app(service))
    response = client.post(
        "/kg/import",
        json={
            "turtle": (FIXTURES / "ground_truth.ttl").read_text(),
            "sidecar": (FIXTURES / "ground_truth_annotations.jsonl").read_text(),
            "name": "ground_truth.ttl",
        },
    )
    assert response.status_code == 200
    assert response.json()["added"] == 3
    assert client.get("/kg/stats").json()["triples"] == 3
    bad = client.post("/kg/import", json={"turtle": "zz:a zz:b zz:c ."})
    assert bad.status_code == 400  # undeclared prefix
    bad_sidecar = client.post(
        "/kg/import", json={"turtle": "", "sidecar": "{broken json\n"}
    )
    assert bad_sidecar.status_code == 400


def test_remote_extractor_failure_maps_to_502(fixture_tables, monkeypatch):
    import httpx

    from factgraph.extraction import ExtractorConfig

    monkeypatch.setenv("KEY_VAR", "sk-test")

    def handler(request):
        raise httpx.ConnectError("refused")

    service = CurationService(
        tables=fixture_tables,
        extractor_config=ExtractorConfig("https://llm.example/v1", "m", "KEY_VAR"),
        http_client=httpx.Client(transport=httpx.MockTransport(handler)),
    )
    client = TestClient(create_app(service), raise_server_exceptions=False)
    response = client.post(
        "/documents",
        json={"text": "CO2 causes warming.", "trust_channel": "untrusted", "mode": "remote"},
    )
    assert response.status_code == 502
