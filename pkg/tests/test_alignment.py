import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from factgraph.alignment import (
    AlignmentTables,
    align_triple,
    load_tables,
    normalize_phrase,
    phrase_to_iri,
    slugify,
)
from factgraph.errors import AmbiguousSynonym, TableParseError
from factgraph.records import CandidateTriple

from .conftest import NS


def candidate(s, p, o):
    return CandidateTriple(s, p, o, sentence_index=0)


def test_lemma_reduction(fixture_tables):
    assert normalize_phrase("Rising Temperatures", fixture_tables) == "rising temperature"


def test_single_canonical_token_maps_to_itself(fixture_tables):
    assert normalize_phrase("co2", fixture_tables) == "co2"


def test_synonym_lookup(fixture_tables):
    assert normalize_phrase("global heating", fixture_tables) == "global warming"
    assert normalize_phrase("planetary warming", fixture_tables) == "global warming"


def test_synonym_inside_longer_phrase(fixture_tables):
    assert (
        normalize_phrase("dangerous global heating ahead", fixture_tables)
        == "dangerous global warming ahead"
    )


def test_align_triple_with_fixture_tables(fixture_tables):
    aligned = align_triple(candidate("CO2", "causes", "global heating"), fixture_tables)
    assert aligned.subject.value == NS + "co2"
    assert aligned.predicate.value == NS + "causes"
    assert aligned.object.value == NS + "global_warming"


def test_align_is_idempotent_on_canonical_iris(fixture_tables):
    aligned = align_triple(candidate("CO2", "causes", "global heating"), fixture_tables)
    again = align_triple(
        candidate(
            aligned.subject.value, aligned.predicate.value, aligned.object.value
        ),
        fixture_tables,
    )
    assert again == aligned


def test_unmapped_phrase_falls_back_to_slug(fixture_tables):
    assert phrase_to_iri("ocean acidification", fixture_tables) == NS + "ocean_acidification"


def test_predicate_table_and_fallback(fixture_tables):
    aligned = align_triple(candidate("melting ice", "leads to", "flooding"), fixture_tables)
    assert aligned.predicate.value == NS + "causes"
    fallback = align_triple(candidate("x", "strongly amplifies", "y"), fixture_tables)
    assert fallback.predicate.value == NS + "strongly_amplifies"


def test_ontology_map_applies_after_normalization(fixture_tables):
    assert phrase_to_iri("Sea  Level RISE", fixture_tables) == NS + "sea_level_rise"


def test_slugify():
    assert slugify("Ocean -- Acidification!") == "ocean_acidification"
    assert slugify("CO2 concentration") == "co2_concentration"


def test_load_tables_counts(fixtures_dir, fixture_tables):
    raw = json.loads((fixtures_dir / "tables.json").read_text())
    assert len(fixture_tables.lemma_table) == len(raw["lemmas"])
    assert fixture_tables.synonym_count == sum(len(v) for v in raw["synonyms"].values())
    assert len(fixture_tables.predicate_table) == len(raw["predicates"])
    assert len(fixture_tables.ontology_map) == len(raw["ontology"])
    assert fixture_tables.default_namespace == raw["default_namespace"]


def test_ambiguous_surface_form_rejected(tmp_path):
    path = tmp_path / "tables.json"
    path.write_text(
        json.dumps(
            {"synonyms": {"global warming": ["heating"], "ocean warming": ["heating"]}}
        )
    )
    with pytest.raises(AmbiguousSynonym) as err:
        load_tables(path)
    assert err.value.surface == "heating"
    assert len(err.value.canonicals) == 2


def test_canonical_as_surface_form_rejected(tmp_path):
    path = tmp_path / "tables.json"
    path.write_text(
        json.dumps({"synonyms": {"a b": ["c"], "d": ["a b"]}})
    )
    with pytest.raises(TableParseError):
        load_tables(path)


def test_empty_file_yields_empty_tables(tmp_path):
    path = tmp_path / "tables.json"
    path.write_text("")
    tables = load_tables(path)
    assert tables.synonym_count == 0
    assert phrase_to_iri("anything else", tables) == tables.default_namespace + "anything_else"


def test_bad_json_is_a_parse_error(tmp_path):
    path = tmp_path / "tables.json"
    path.write_text("{not json")
    with pytest.raises(TableParseError):
        load_tables(path)


_phrases = st.text(alphabet="abc XY2", min_size=1, max_size=24)


@given(_phrases)
@settings(max_examples=100, deadline=None)
def test_normalize_is_idempotent(raw):
    tables = AlignmentTables(
        lemma_table={"temperatures": "temperature"},
        surface_to_canonical={"global heating": "global warming"},
    )
    once = normalize_phrase(raw, tables)
    assert normalize_phrase(once, tables) == once


@given(raw=_phrases)
@settings(max_examples=100, deadline=None)
def test_align_total_and_idempotent(raw):
    from .conftest import FIXTURES

    tables = load_tables(FIXTURES / "tables.json")  # immutable; reload is cheap
    cand = candidate(raw if raw.strip() else "x", "causes", raw if raw.strip() else "y")
    aligned = align_triple(cand, tables)
    refed = align_triple(
        candidate(aligned.subject.value, aligned.predicate.value, aligned.object.value),
        tables,
    )
    assert refed == aligned
