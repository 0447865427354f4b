"""Demo workspace builders.

`build_demo_workspace` creates a complete workspace whose approved EN/AR
annotation pairs follow the bundled motion-event shift distribution
(72 pairs, 61 of them frame-parallel), plus a small review document with
pending AUTO sets for driving the review UI. Also runnable directly:

    python -m framealign.fixtures /tmp/demo-workspace
"""

from __future__ import annotations

import itertools
from pathlib import Path

from .annotations import AnnotationSet, Layer, SpanLabel, TokenLabel
from .corpus import Document, Paragraph, SentenceVersion
from .textnorm import normalize_lemma
from .workspace import Workspace

# (source frame, EN verbs cycled, target frame, AR lemmas cycled, pair count)
SHIFT_DISTRIBUTION = [
    ("Self_motion", ["walk", "run", "climb", "jump", "crawl"], "Self_motion",
     ["مَشَى", "رَكَضَ", "تَسَلَّقَ", "قَفَزَ", "زَحَفَ"], 56),
    ("Self_motion", ["climb"], "Motion_directional", ["نَزَلَ"], 1),
    ("Self_motion", ["walk"], "Arriving", ["عَادَ", "اِقْتَرَبَ"], 2),
    ("Self_motion", ["swing"], "Manipulation", ["تَعَلَّقَ"], 1),
    ("Motion", ["roll"], "Motion_directional", ["تَدَحْرَجَ"], 2),
    ("Motion", ["slide"], "Self_motion", ["اِنْزَلَقَ"], 2),
    ("Motion_directional", ["fall", "drop"], "Motion_directional", ["سَقَطَ", "سَقَطَ", "وَقَعَ", "وَقَعَ"], 4),
    ("Motion_directional", ["fall"], "Cause_motion", ["أَوْقَعَ"], 1),
    ("Cause_to_move_in_place", ["hang"], "Manipulation", ["تَعَلَّقَ"], 1),
    ("Fleeing", ["flee"], "Fleeing", ["هَرَبَ"], 1),
    ("Dispersal", ["scatter"], "Self_motion", ["تَفَرَّقَ"], 1),
]

REVIEW_PARAGRAPHS = [
    ("p70", [
        ("AR", 239, "و حين حاولوا أن يهبطوا هذا المنحدر"),
        ("EN", 240, "When they began to go down this,"),
        ("FR", 241, "Quand ils se mirent en devoir de descendre par là "),
    ]),
    ("p71", [
        ("AR", 242, "تدحرجت القاذورات و الحصى الصغير من بين أقدامهم"),
        ("EN", 243, "rubbish and small pebbles rolled away from their feet"),
    ]),
    ("p72", [
        ("AR", 244, "بل إنتظر حتى نجح الهوبيت في تسلق الفروع"),
        ("EN", 245, "He waited till he had clambered off his shoulders into the branches."),
    ]),
]


def _span_of(text: str, word: str) -> tuple[int, int]:
    start = text.index(word)
    return start, start + len(word) - 1


def _core_fes() -> dict[str, list[str]]:
    from .lexicon import load_lexicon

    text = (Path(__file__).parent / "data" / "motion_lexicon.json").read_text(encoding="utf-8")
    lexicon = load_lexicon(text)
    return {name: [fe.name for fe in frame.core_elements()] for name, frame in lexicon.frames.items()}


def _target_set(set_id, sentence_id, frame, text, word, status, core_fes=()) -> AnnotationSet:
    # reviewed sets carry either a span or an NI mark for every core FE;
    # this synthetic data resolves the unannotated ones as indefinite NI
    start, end = _span_of(text, word)
    ni_marks = tuple(SpanLabel(fe_name, itype="INI") for fe_name in core_fes)
    return AnnotationSet(
        id=set_id,
        sentence_id=sentence_id,
        frame=frame,
        status=status,
        created_date="08/12/2014",
        layers=(
            Layer("Target", 1, (SpanLabel("Target", start, end, created_by="AUTO"),)),
            Layer("FE", 1, ni_marks),
            Layer("GF", 1, ()),
            Layer("PT", 1, ()),
        ),
    )


def shift_document(first_sentence_id: int = 1) -> tuple[Document, list[AnnotationSet]]:
    """The 72-paragraph chapter with one approved EN/AR set pair each."""
    paragraphs = []
    sets = []
    sentence_id = itertools.count(first_sentence_id)
    set_id = itertools.count(1000)
    pid = itertools.count(1)
    cores = _core_fes()
    for source_frame, verbs, target_frame, lemmas, count in SHIFT_DISTRIBUTION:
        verb_cycle = itertools.cycle(verbs)
        lemma_cycle = itertools.cycle(lemmas)
        for _ in range(count):
            verb = next(verb_cycle)
            surface = normalize_lemma(next(lemma_cycle), "AR")
            ar_id, en_id = next(sentence_id), next(sentence_id)
            ar_text = f"ثم {surface} الرفاق قرب المنحدر"
            en_text = f"they {verb} beside the stony ridge"
            paragraphs.append(
                Paragraph(
                    f"p{next(pid)}",
                    (SentenceVersion(ar_id, "AR", ar_text), SentenceVersion(en_id, "EN", en_text)),
                )
            )
            sets.append(
                _target_set(next(set_id), en_id, source_frame, en_text, verb, "AUTO_APP", cores[source_frame])
            )
            sets.append(
                _target_set(next(set_id), ar_id, target_frame, ar_text, surface, "AUTO_APP", cores[target_frame])
            )
    return Document("TheHobbit", "6", tuple(paragraphs)), sets


def review_document() -> tuple[Document, list[AnnotationSet]]:
    """A small chapter with pending AUTO sets: one fully layered Arabic set,
    one English set with three FE spans, and one set carrying CNI/DNI marks."""
    paragraphs = tuple(
        Paragraph(pid, tuple(SentenceVersion(sid, lang, text) for lang, sid, text in versions))
        for pid, versions in REVIEW_PARAGRAPHS
    )
    ar_242 = paragraphs[1].versions[0].text
    en_245 = paragraphs[2].versions[1].text
    ar_244 = paragraphs[2].versions[0].text

    layered = AnnotationSet(
        id=199,
        sentence_id=242,
        frame="Self_motion",
        status="AUTO",
        created_date="08/12/2014",
        layers=(
            Layer("FE", 1, (
                SpanLabel("Self_mover", 5, 5, fe_id=285, created_by="AUTO_APP"),
                SpanLabel("Self_mover", 7, 16, fe_id=285, created_by="AUTO_APP"),
                SpanLabel("Path", 18, 39, fe_id=287, created_by="AUTO_APP"),
            )),
            Layer("GF", 1, (
                SpanLabel("SBJp", 5, 5),
                SpanLabel("SBJ", 7, 16),
                SpanLabel("POBJ", 18, 39),
            )),
            Layer("PT", 1, (
                SpanLabel("NP", 5, 5),
                SpanLabel("NP-nom", 7, 16),
                SpanLabel("ADVP[ظرف]", 18, 39),
            )),
            Layer("Target", 1, (SpanLabel("Target", 0, 5, created_by="AUTO_APP"),)),
            Layer("SUMO", 1, (
                SpanLabel("Motion+", 0, 5),
                SpanLabel("SocialRole+", 7, 16),
                SpanLabel("Artifact+_Mineral+", 24, 31),
            )),
        ),
    )
    assert len(ar_242) > 39

    mover = _span_of(en_245, "He")
    path = _span_of(en_245, "off his shoulders")
    goal = _span_of(en_245, "into the branches")
    english = AnnotationSet(
        id=200,
        sentence_id=245,
        frame="Self_motion",
        status="AUTO",
        created_date="08/12/2014",
        layers=(
            Layer("Target", 1, (SpanLabel("Target", *_span_of(en_245, "clambered"), created_by="AUTO"),)),
            Layer("FE", 1, (
                SpanLabel("Self_mover", *mover),
                SpanLabel("Path", *path),
                SpanLabel("Goal", *goal),
            )),
            Layer("GF", 1, (SpanLabel("SBJ", *mover), SpanLabel("POBJ", *path), SpanLabel("POBJ", *goal))),
            Layer("PT", 1, (SpanLabel("NP", *mover), SpanLabel("PP", *path), SpanLabel("PP", *goal))),
        ),
    )

    arabic_ni = AnnotationSet(
        id=201,
        sentence_id=244,
        frame="Self_motion",
        status="AUTO",
        created_date="08/12/2014",
        layers=(
            Layer("Target", 1, (SpanLabel("Target", *_span_of(ar_244, "تسلق"), created_by="AUTO"),)),
            Layer("FE", 1, (SpanLabel("Self_mover", itype="CNI"), SpanLabel("Path", itype="DNI"))),
            Layer("GF", 1, ()),
            Layer("PT", 1, ()),
        ),
    )
    return Document("TheHobbit", "6-review", paragraphs), [layered, english, arabic_ni]


def build_demo_workspace(root) -> Workspace:
    root = Path(root)
    workspace = Workspace.init(root)

    package_dir = Path(__file__).parent
    lexicon_text = (package_dir / "data" / "motion_lexicon.json").read_text(encoding="utf-8")
    (root / "lexicon.json").write_text(lexicon_text, encoding="utf-8")

    document, sets = shift_document()
    key = workspace.save_document(document)
    workspace.save_annotations(key, sets)

    review_doc, review_sets = review_document()
    review_key = workspace.save_document(review_doc)
    workspace.save_annotations(review_key, review_sets)

    workspace.save_tokens(243, [
        TokenLabel(token_id=1, head_id=2, label="SBJ", pos="N", lemma="rubbish", form="rubbish"),
        TokenLabel(token_id=2, head_id=0, label="VS", pos="V", lemma="roll", form="rolled"),
    ])
    workspace.save_tokens(242, [
        TokenLabel(token_id=1, head_id=0, label="VS", pos="V", lemma="تدحرج", form="تدحرجت",
                   morph=";VERB_PERFECT"),
    ])

    workspace.state["next_sentence_id"] = 300
    workspace.state["next_set_id"] = 1200
    workspace.save_state()
    return workspace


def main(argv=None) -> int:
    import argparse

    parser = argparse.ArgumentParser(description="Build the demo workspace.")
    parser.add_argument("root", help="directory to create the workspace in")
    args = parser.parse_args(argv)
    workspace = build_demo_workspace(args.root)
    print(f"demo workspace ready at {workspace.root}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
