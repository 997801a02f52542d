from datetime import timedelta

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from factgraph.errors import CorruptState, InvalidAnnotation
from factgraph.graph import (
    Direction,
    InsertResult,
    KnowledgeGraph,
    StatementAnnotation,
    read_sidecar,
    write_sidecar,
)
from factgraph.terms import Term, triple

from .conftest import FIXED_TIME, NS


def t(s, p, o):
    return triple(NS + s, NS + p, NS + o)


def test_insert_new_triple_bumps_endpoint_degrees(annotation):
    graph = KnowledgeGraph()
    assert graph.insert(t("a", "p", "b"), annotation("1" * 16)) is InsertResult.INSERTED
    assert graph.degree(Term.iri(NS + "a")) == 1
    assert graph.degree(Term.iri(NS + "b")) == 1
    assert graph.degree(Term.iri(NS + "a"), Direction.OUT) == 1
    assert graph.degree(Term.iri(NS + "b"), Direction.IN) == 1


def test_double_insert_merges_media_ids(annotation):
    graph = KnowledgeGraph()
    graph.insert(t("a", "p", "b"), annotation("1" * 16))
    result = graph.insert(t("a", "p", "b"), annotation("2" * 16))
    assert result is InsertResult.MERGED
    assert graph.annotation(t("a", "p", "b")).media_ids == ("1" * 16, "2" * 16)
    assert len(graph) == 1


def test_merge_keeps_max_confidence_and_newest_timestamp(annotation):
    graph = KnowledgeGraph()
    newer = FIXED_TIME + timedelta(days=1)
    graph.insert(t("a", "p", "b"), annotation("1" * 16, confidence=0.4))
    graph.insert(t("a", "p", "b"), annotation("2" * 16, confidence=0.9, asserted_at=newer))
    merged = graph.annotation(t("a", "p", "b"))
    assert merged.confidence == 0.9
    assert merged.asserted_at == newer


def test_confidence_out_of_range_is_invalid(annotation):
    with pytest.raises(InvalidAnnotation):
        annotation("1" * 16, confidence=1.2)


def test_empty_media_ids_is_invalid():
    with pytest.raises(InvalidAnnotation):
        StatementAnnotation(media_ids=(), confidence=1.0, asserted_at=FIXED_TIME)


def test_contains_fixture_membership(fixture_kg):
    assert fixture_kg.contains(t("co2_concentration", "causes", "global_warming"))
    assert not fixture_kg.contains(t("co2_concentration", "causes", "sea_level_rise"))
    assert not KnowledgeGraph().contains(t("a", "p", "b"))


def test_fixture_degrees(fixture_kg):
    gw = Term.iri(NS + "global_warming")
    assert fixture_kg.degree(gw) == 2
    assert fixture_kg.degree(gw, Direction.IN) == 1
    assert fixture_kg.degree(Term.iri(NS + "nobody")) == 0


def test_fixture_neighbors(fixture_kg):
    gw = Term.iri(NS + "global_warming")
    assert len(fixture_kg.neighbors(gw)) == 2
    co2 = Term.iri(NS + "co2_concentration")
    entries = fixture_kg.neighbors(co2)
    assert len(entries) == 2
    assert {e.direction for e in entries} == {Direction.IN, Direction.OUT}
    assert fixture_kg.neighbors(Term.iri(NS + "isolated")) == []


def test_neighbors_order_is_deterministic(fixture_kg):
    co2 = Term.iri(NS + "co2_concentration")
    assert fixture_kg.neighbors(co2) == fixture_kg.neighbors(co2)


def test_negation_map_is_symmetric(fixture_kg):
    causes = Term.iri(NS + "causes")
    not_causes = Term.iri(NS + "does_not_cause")
    assert fixture_kg.negation_of(causes) == not_causes
    assert fixture_kg.negation_of(not_causes) == causes
    assert fixture_kg.negation_of(Term.iri(NS + "warms")) is None


def test_conflicting_negation_entries_rejected():
    graph = KnowledgeGraph()
    with pytest.raises(InvalidAnnotation):
        graph.set_negation_map({"p": "q", "q": "r"})


@st.composite
def edge_lists(draw):
    names = [f"n{i}" for i in range(6)]
    count = draw(st.integers(min_value=0, max_value=15))
    return [
        t(draw(st.sampled_from(names)), f"p{draw(st.integers(0, 2))}", draw(st.sampled_from(names)))
        for _ in range(count)
    ]


@given(edge_lists())
@settings(max_examples=60, deadline=None)
def test_degree_sums_match_triple_count(edges):
    graph = KnowledgeGraph()
    for e in edges:
        graph.add_triple(e)
    nodes = graph.nodes()
    assert sum(graph.degree(v, Direction.OUT) for v in nodes) == len(graph)
    assert sum(graph.degree(v, Direction.IN) for v in nodes) == len(graph)
    # index coherence: membership agrees with every index
    for e in graph.triples:
        assert graph.contains(e)
        assert e in {n.edge for n in graph.neighbors(e.subject)}
        assert e in {n.edge for n in graph.neighbors(e.object)}


def test_annotation_merge_commutative_and_idempotent(annotation):
    a = annotation("1" * 16, confidence=0.3, source_refs=("x",))
    b = annotation("2" * 16, confidence=0.7, source_refs=("y",))
    assert a.merge(b).media_ids == b.merge(a).media_ids
    assert a.merge(b).confidence == b.merge(a).confidence
    assert a.merge(a).media_ids == a.media_ids
    assert set(a.merge(b).source_refs) == {"x", "y"}


def test_sidecar_round_trip(tmp_path, fixture_kg, annotation):
    for i, tr in enumerate(sorted(fixture_kg.triples, key=lambda x: x.sort_key())):
        fixture_kg.insert(tr, annotation(f"{i:016x}", confidence=0.5 + i / 10))
    path = tmp_path / "annotations.jsonl"
    write_sidecar(fixture_kg, path)
    restored = dict(read_sidecar(path))
    assert restored == fixture_kg.annotations


def test_sidecar_literal_objects_survive(tmp_path, annotation):
    graph = KnowledgeGraph()
    lit = triple(NS + "a", NS + "p", Term.literal('say "hi"\n'))
    graph.insert(lit, annotation("1" * 16))
    path = tmp_path / "annotations.jsonl"
    write_sidecar(graph, path)
    [(restored, _)] = read_sidecar(path)
    assert restored == lit


def test_truncated_sidecar_reports_line(tmp_path):
    path = tmp_path / "annotations.jsonl"
    path.write_text('{"subject": "http://ex/a", "predicate"\n')
    with pytest.raises(CorruptState) as err:
        read_sidecar(path)
    assert err.value.line == 1


def test_fixture_sidecar_loads(fixtures_dir, fixture_kg):
    entries = read_sidecar(fixtures_dir / "ground_truth_annotations.jsonl")
    assert len(entries) == 3
    for tr, ann in entries:
        assert fixture_kg.contains(tr)
        assert ann.confidence == 1.0
