import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from factgraph.errors import DecodeError, EmptySource, UnsupportedMediaType
from factgraph.media import (
    FileSource,
    TextSource,
    UrlSource,
    assign_media_id,
    canonicalize_url,
    document_from_file,
    extract_text,
    html_to_text,
    media_type_for_path,
    segment_sentences,
)


def test_media_id_is_16_hex():
    media_id = assign_media_id(TextSource("hello"))
    assert len(media_id) == 16
    assert all(c in "0123456789abcdef" for c in media_id)


def test_url_canonicalization_makes_ids_equal():
    a = assign_media_id(UrlSource("https://Ex.org/a/"))
    b = assign_media_id(UrlSource("https://ex.org/a"))
    assert a == b
    assert assign_media_id(UrlSource("https://ex.org/a#frag")) == a


def test_different_urls_get_different_ids():
    assert assign_media_id(UrlSource("https://ex.org/a")) != assign_media_id(
        UrlSource("https://ex.org/b")
    )


def test_inline_text_id_is_deterministic():
    assert assign_media_id(TextSource("same text")) == assign_media_id(TextSource("same text"))


def test_canonicalize_is_idempotent():
    url = "HTTPS://Ex.org/Path/?q=1#x"
    assert canonicalize_url(canonicalize_url(url)) == canonicalize_url(url)


def test_empty_source_rejected():
    with pytest.raises(EmptySource):
        assign_media_id(TextSource(""))
    with pytest.raises(EmptySource):
        assign_media_id(UrlSource("  "))


def test_html_entities_and_tags():
    assert html_to_text("<p>CO2 &amp; heat</p>") == "CO2 & heat"


def test_plain_text_whitespace_normalization():
    assert extract_text(b"a  b\n\nc", "text") == "a b\nc"


def test_html_boilerplate_dropped(fixtures_dir):
    text = html_to_text((fixtures_dir / "article.html").read_text())
    assert "En espa" not in text
    assert "analytics" not in text
    assert "Contact us" not in text
    assert "The Daily Climate Observer" not in text
    assert "CO2 concentration causes global warming." in text


def test_invalid_utf8_raises_decode_error():
    with pytest.raises(DecodeError):
        extract_text(b"\xff\xfe\x00ok", "text")


def test_unsupported_media_type_names_the_type():
    with pytest.raises(UnsupportedMediaType) as err:
        media_type_for_path("paper.pdf")
    assert err.value.media_type == "pdf"
    with pytest.raises(UnsupportedMediaType):
        media_type_for_path("talk.mp3")


def test_document_from_file(tmp_path):
    path = tmp_path / "note.txt"
    path.write_text("Water warms air.")
    doc = document_from_file(str(path))
    assert doc.media_type == "text"
    assert doc.text == "Water warms air."
    assert isinstance(doc.source, FileSource)


# -- sentence segmentation ----------------------------------------------------


def test_two_sentence_spans_match_hand_count():
    text = "It warms. Seas rise."
    sentences = segment_sentences(text)
    assert [(s.text, s.span) for s in sentences] == [
        ("It warms.", (0, 9)),
        ("Seas rise.", (10, 20)),
    ]
    assert [s.index for s in sentences] == [0, 1]


def test_empty_text_yields_no_sentences():
    assert segment_sentences("") == []
    assert segment_sentences("   \n ") == []


def test_abbreviation_guard():
    assert len(segment_sentences("See Fig. 3 for details.")) == 1
    assert len(segment_sentences("Dr. Who said so. Nobody listened.")) == 2
    assert len(segment_sentences("This is e.g. A problem.")) == 1


def test_spans_slice_back_to_sentence_text():
    text = "First claim here!  Second claim? Third one ends without punctuation"
    sentences = segment_sentences(text)
    assert len(sentences) == 3
    for s in sentences:
        assert text[s.span[0] : s.span[1]] == s.text


@given(
    st.lists(
        st.text(alphabet="abcdefg XYZ", min_size=1, max_size=20).map(str.strip).filter(bool),
        min_size=0,
        max_size=5,
    )
)
@settings(max_examples=60, deadline=None)
def test_spans_cover_all_non_whitespace(chunks):
    text = ". ".join(chunks)
    sentences = segment_sentences(text)
    non_ws = {i for i, c in enumerate(text) if not c.isspace()}
    covered = set()
    last_end = -1
    for s in sentences:
        start, end = s.span
        assert start > last_end or (start == 0 and last_end == -1)
        assert end > start
        assert text[start:end] == s.text
        covered.update(range(start, end))
        last_end = end - 1
    assert non_ws <= covered
