from __future__ import annotations

import random

import pytest

from framealign import (
    AlignmentError,
    Corpus,
    Document,
    IntegrityError,
    Paragraph,
    ParseError,
    SentenceVersion,
    aligned_pairs,
    ingest_plaintext,
    parse_corpus,
    serialize_corpus,
    validate_corpus,
)


# ---------------------------------------------------------------- parsing


def test_corpus_fragment_parses_exactly(corpus_fragment):
    (document,) = corpus_fragment.documents
    assert document.novel == "TheHobbit" and document.chapter == "6"
    p70, p71 = document.paragraphs
    assert p70.pid == "p70" and [v.id for v in p70.versions] == [239, 240, 241]
    assert [v.language for v in p70.versions] == ["AR", "EN", "FR"]
    assert p70.version_for("EN").text == "When they began to go down this,"
    # trailing space in the French sentence is preserved exactly
    assert p71.pid == "p71" and len(p71.versions) == 2
    assert p70.version_for("FR").text.endswith("par là ")


def test_empty_document_parses():
    corpus = parse_corpus('<corpus novel="N" chapter="1"/>')
    (document,) = corpus.documents
    assert document.paragraphs == ()


def test_duplicate_pid_rejected_with_cor001():
    xml = (
        "<corpus>"
        '<prg pID="p70"><p lang="EN" ID="1">a</p></prg>'
        '<prg pID="p70"><p lang="EN" ID="2">b</p></prg>'
        "</corpus>"
    )
    with pytest.raises(IntegrityError) as err:
        parse_corpus(xml)
    assert any(d.code == "COR001" for d in err.value.diagnostics)


def test_duplicate_sentence_id_rejected():
    xml = (
        "<corpus>"
        '<prg pID="p1"><p lang="EN" ID="9">a</p></prg>'
        '<prg pID="p2"><p lang="AR" ID="9">b</p></prg>'
        "</corpus>"
    )
    with pytest.raises(IntegrityError) as err:
        parse_corpus(xml)
    assert any(d.code == "COR002" for d in err.value.diagnostics)


def test_duplicate_language_in_paragraph_rejected():
    xml = '<corpus><prg pID="p1"><p lang="EN" ID="1">a</p><p lang="EN" ID="2">b</p></prg></corpus>'
    with pytest.raises(IntegrityError) as err:
        parse_corpus(xml)
    assert any(d.code == "COR003" for d in err.value.diagnostics)


def test_unknown_language_warns_lenient_raises_strict():
    xml = '<corpus><prg pID="p1"><p lang="ZZ" ID="1">a</p></prg></corpus>'
    corpus = parse_corpus(xml)
    assert [d.code for d in validate_corpus(corpus)] == ["COR004"]
    with pytest.raises(IntegrityError):
        parse_corpus(xml, strict=True)


def test_malformed_xml_gives_parse_error():
    with pytest.raises(ParseError):
        parse_corpus("<corpus><prg></corpus>")


# ---------------------------------------------------------------- serialization


def test_corpus_fragment_round_trip_value_equality(corpus_fragment, corpus_fragment_text):
    serialized = serialize_corpus(corpus_fragment)
    assert parse_corpus(serialized) == corpus_fragment
    # canonical form: a second round trip is byte-stable
    assert serialize_corpus(parse_corpus(serialized)) == serialized
    # and the fixture file is already canonical
    assert serialized == corpus_fragment_text


def test_empty_document_serializes_to_empty_root():
    corpus = Corpus(documents=(Document("N", "1", ()),))
    text = serialize_corpus(corpus)
    assert "<corpus" in text and parse_corpus(text) == corpus


def test_escaping_round_trips():
    corpus = Corpus(
        documents=(
            Document(
                'No<vel>"&',
                "1",
                (Paragraph("p1", (SentenceVersion(1, "EN", 'a < b & "c" > d'),)),),
            ),
        )
    )
    assert parse_corpus(serialize_corpus(corpus)) == corpus


def random_document(rng: random.Random, paragraphs: int) -> Document:
    alphabet = "abc ديچ é&<>\"' xyz"
    next_id = rng.randint(1, 500)
    out = []
    for index in range(paragraphs):
        versions = []
        for language in sorted(rng.sample(["AR", "EN", "FR"], k=rng.randint(1, 3))):
            text = "".join(rng.choice(alphabet) for _ in range(rng.randint(1, 30))).strip() or "x"
            versions.append(SentenceVersion(next_id, language, text))
            next_id += rng.randint(1, 3)
        out.append(Paragraph(f"p{index + 1}", tuple(versions)))
    return Document("Novel", "7", tuple(out))


def test_hundred_random_paragraphs_round_trip():
    rng = random.Random(7214)
    document = random_document(rng, paragraphs=100)
    corpus = Corpus(documents=(document,))
    assert parse_corpus(serialize_corpus(corpus)) == corpus


# ---------------------------------------------------------------- ingestion


def test_ingest_numbering_matches_figure_order():
    document = ingest_plaintext(
        {"AR": "فقرة أولى\n\nفقرة ثانية", "EN": "first paragraph\n\nsecond paragraph"},
        novel="N",
        chapter="1",
        id_seed=239,
    )
    p1, p2 = document.paragraphs
    assert p1.pid == "p1" and [(v.language, v.id) for v in p1.versions] == [("AR", 239), ("EN", 240)]
    assert p2.pid == "p2" and [(v.language, v.id) for v in p2.versions] == [("AR", 241), ("EN", 242)]


def test_ingest_single_language_single_paragraph():
    document = ingest_plaintext({"EN": "only one"}, novel="N", chapter="1", id_seed=1)
    (paragraph,) = document.paragraphs
    assert paragraph.pid == "p1"
    assert [(v.id, v.text) for v in paragraph.versions] == [(1, "only one")]


def test_ingest_mismatched_counts_raises():
    with pytest.raises(AlignmentError) as err:
        ingest_plaintext({"EN": "a\n\nb\n\nc", "AR": "a\n\nb"}, novel="N", chapter="1", id_seed=1)
    assert err.value.counts == {"EN": 3, "AR": 2}


def test_ingest_reflows_internal_linebreaks():
    document = ingest_plaintext({"EN": "line one\nline two\n\nnext"}, novel="N", chapter="1", id_seed=1)
    assert document.paragraphs[0].versions[0].text == "line one line two"


# ---------------------------------------------------------------- alignment


def test_corpus_fragment_aligned_pairs_en_ar(corpus_fragment):
    pairs, skipped = aligned_pairs(corpus_fragment, "EN", "AR")
    assert [(a.id, b.id) for a, b in pairs] == [(240, 239), (243, 242)]
    assert skipped == []


def test_corpus_fragment_aligned_pairs_fr_ar_skips_p71(corpus_fragment):
    pairs, skipped = aligned_pairs(corpus_fragment, "FR", "AR")
    assert [(a.id, b.id) for a, b in pairs] == [(241, 239)]
    assert skipped == ["p71"]


def test_aligned_pairs_empty_corpus():
    assert aligned_pairs(Corpus(), "EN", "AR") == ([], [])


def test_aligned_pairs_swaps_when_languages_swap(corpus_fragment):
    forward, _ = aligned_pairs(corpus_fragment, "EN", "AR")
    backward, _ = aligned_pairs(corpus_fragment, "AR", "EN")
    assert len(forward) == len(backward)
    assert [(b, a) for a, b in forward] == backward


def test_every_paired_id_exists_once(corpus_fragment):
    pairs, _ = aligned_pairs(corpus_fragment, "EN", "AR")
    all_ids = [v.id for _, v in corpus_fragment.sentences()]
    for a, b in pairs:
        assert all_ids.count(a.id) == 1 and all_ids.count(b.id) == 1
