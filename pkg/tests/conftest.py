from __future__ import annotations

from pathlib import Path

import pytest

from framealign import load_lexicon, parse_annotation_set, parse_corpus

DATA = Path(__file__).parent / "data"
PACKAGE_DATA = Path(__file__).parent.parent / "src" / "framealign" / "data"

# Arabic sentence the layered annotation fixture attaches to (46 code points;
# its largest span ends at offset 39).
ANNOTATED_SENTENCE = "تدحرجت القاذورات و الحصى الصغير من بين أقدامهم"


@pytest.fixture(scope="session")
def motion_lexicon_text() -> str:
    return (PACKAGE_DATA / "motion_lexicon.json").read_text(encoding="utf-8")


@pytest.fixture(scope="session")
def motion_lexicon(motion_lexicon_text):
    return load_lexicon(motion_lexicon_text)


@pytest.fixture(scope="session")
def corpus_fragment_text() -> str:
    return (DATA / "hobbit_fragment.xml").read_text(encoding="utf-8")


@pytest.fixture(scope="session")
def corpus_fragment(corpus_fragment_text):
    return parse_corpus(corpus_fragment_text)


@pytest.fixture(scope="session")
def layered_annotation_text() -> str:
    return (DATA / "layered_annotation.xml").read_text(encoding="utf-8")


@pytest.fixture(scope="session")
def layered_annotation(layered_annotation_text):
    return parse_annotation_set(layered_annotation_text, sentence_id=242)
