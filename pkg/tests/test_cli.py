import json
import math
import shutil

import pytest

from factgraph.cli import main

from .conftest import FIXTURES

TAU_VIA_GW = 1.0 / (1.0 + math.log(2.0))


@pytest.fixture
def workspace(tmp_path):
    """Config + state dir + fixture files, self-contained under tmp_path."""
    shutil.copy(FIXTURES / "tables.json", tmp_path / "tables.json")
    shutil.copy(FIXTURES / "ground_truth.ttl", tmp_path / "ground_truth.ttl")
    shutil.copy(
        FIXTURES / "ground_truth_annotations.jsonl", tmp_path / "ground_truth_annotations.jsonl"
    )
    shutil.copy(FIXTURES / "article.html", tmp_path / "article.html")
    config = {
        "state_dir": "state",
        "weights": {"veracity": 1.0},
        "proximity": {"theta": 0.5, "max_hops": 6, "incoming_weight": 1.0},
        "tables_path": "tables.json",
        "negation_map": {
            "http://example.org/kg/does_not_cause": "http://example.org/kg/causes"
        },
    }
    config_path = tmp_path / "factgraph.json"
    config_path.write_text(json.dumps(config))
    return tmp_path


def run(workspace, *args):
    return main(["--config", str(workspace / "factgraph.json"), *args])


def last_json(capsys):
    out = capsys.readouterr().out.strip().splitlines()
    return json.loads(out[-1])


def test_kg_import_and_check_confirmed(workspace, capsys):
    assert run(workspace, "kg-import", str(workspace / "ground_truth.ttl"),
               "--sidecar", str(workspace / "ground_truth_annotations.jsonl")) == 0
    capsys.readouterr()
    code = run(workspace, "check", ":co2_concentration", ":causes", ":global_warming", "--json")
    assert code == 0
    verdict = last_json(capsys)
    assert verdict["verdict"] == "confirmed"
    assert verdict["veracity"] == 1.0


def test_check_usage_error_exit_1(workspace, capsys):
    assert run(workspace, "check", ":a", ":b") == 1
    assert "usage error" in capsys.readouterr().err


def test_full_pipeline_score_matches_oracle(workspace, capsys):
    run(workspace, "kg-import", str(workspace / "ground_truth.ttl"))
    assert run(workspace, "ingest", str(workspace / "article.html"), "--trust", "untrusted",
               "--json") == 0
    media_id = last_json(capsys)["media_id"]
    assert run(workspace, "extract", media_id, "--mode", "rule", "--json") == 0
    assert len(last_json(capsys)["record_ids"]) == 2
    assert run(workspace, "score", media_id, "--json") == 0
    report = last_json(capsys)
    assert report["aggregate"] == pytest.approx((1.0 + TAU_VIA_GW) / 2, abs=1e-6)
    assert [s["color"] for s in report["statements"]] == ["green", "yellow"]


def test_review_approve_updates_persisted_graph(workspace, tmp_path, capsys):
    doc = workspace / "report.txt"
    doc.write_text("Deforestation increases flood risk.")
    run(workspace, "kg-import", str(workspace / "ground_truth.ttl"))
    run(workspace, "ingest", str(doc), "--trust", "trusted", "--json")
    media_id = last_json(capsys)["media_id"]
    run(workspace, "extract", media_id, "--json")
    record_id = last_json(capsys)["record_ids"][0]
    assert run(workspace, "review", record_id, "approve", "--by", "alex", "--json") == 0
    assert last_json(capsys)["review_state"] == "approved"

    export_path = workspace / "export.ttl"
    assert run(workspace, "kg-export", str(export_path), "--json") == 0
    assert last_json(capsys)["triples"] == 4
    assert "deforestation" in export_path.read_text()


def test_review_unknown_record_exit_1(workspace, capsys):
    assert run(workspace, "review", "f" * 16, "approve", "--by", "alex") == 1
    assert "error" in capsys.readouterr().err


def test_double_approve_exit_1(workspace, capsys):
    doc = workspace / "report.txt"
    doc.write_text("Deforestation increases flood risk.")
    run(workspace, "ingest", str(doc), "--trust", "trusted", "--json")
    media_id = last_json(capsys)["media_id"]
    run(workspace, "extract", media_id, "--json")
    record_id = last_json(capsys)["record_ids"][0]
    run(workspace, "review", record_id, "approve", "--by", "alex")
    assert run(workspace, "review", record_id, "approve", "--by", "alex") == 1


def test_ingest_unsupported_type_exit_1(workspace, capsys):
    doc = workspace / "audio.mp3"
    doc.write_bytes(b"\x00\x01")
    assert run(workspace, "ingest", str(doc), "--trust", "untrusted") == 1
    assert "mp3" in capsys.readouterr().err


def test_score_unknown_media_exit_1(workspace, capsys):
    assert run(workspace, "score", "f" * 16) == 1


def test_corrupt_state_exit_2(workspace, capsys):
    run(workspace, "kg-import", str(workspace / "ground_truth.ttl"))
    (workspace / "state" / "records.jsonl").write_text("{broken\n")
    assert run(workspace, "check", ":a", ":b", ":c") == 2


def test_json_output_is_parseable_per_line(workspace, capsys):
    run(workspace, "kg-import", str(workspace / "ground_truth.ttl"), "--json")
    for line in capsys.readouterr().out.strip().splitlines():
        json.loads(line)


def test_check_json_schema_stable(workspace, capsys):
    run(workspace, "kg-import", str(workspace / "ground_truth.ttl"))
    capsys.readouterr()
    run(workspace, "check", ":co2_concentration", ":causes", ":sea_level_rise", "--json")
    verdict = last_json(capsys)
    assert sorted(verdict.keys()) == ["evidence", "threshold_used", "veracity", "verdict"]
    assert verdict["evidence"]["type"] == "path"
    assert verdict["verdict"] == "supported"
