"""Semi-automatic annotation proposal.

Finds candidate frame-evoking targets in a sentence by lexicon lookup and
emits AUTO annotation sets for human review. No morphological analyzer is
embedded: lemmas come from a provided token layer (sidecar file) or fall
back to the normalized surface form.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, replace

from .annotations import AnnotationSet, Layer, SpanLabel, TokenLabel, SDL_LAYER
from .corpus import SentenceVersion
from .errors import DuplicateLayer, ParseError, SpanOutOfBounds
from .lexicon import FrameLexicon, lookup_lus
from .textnorm import normalize_lemma

_WORD_RE = re.compile(r"\w+", re.UNICODE)


@dataclass(frozen=True)
class TargetCandidate:
    span: tuple[int, int]
    surface: str
    lemma: str
    language: str
    candidate_frames: tuple[str, ...]


def _ranked_frames(lexicon: FrameLexicon, language: str, lemma: str) -> tuple[str, ...]:
    counts: dict[str, int] = {}
    for lu in lookup_lus(lexicon, language, lemma):
        counts[lu.frame] = counts.get(lu.frame, 0) + 1
    return tuple(sorted(counts, key=lambda frame: (-counts[frame], frame)))


def find_targets(
    sentence: SentenceVersion, lexicon: FrameLexicon, tokens: list[TokenLabel] | None = None
) -> list[TargetCandidate]:
    """Candidate targets for one sentence.

    With a token layer, each token whose lemma has lexical units in the
    sentence language becomes a candidate; the span is located from the
    token's form occurrence, scanning left to right so candidate spans never
    overlap. Without tokens the surface is word-tokenized and the normalized
    surface form stands in for the lemma.
    """
    language = sentence.language
    candidates: list[TargetCandidate] = []
    if tokens is not None:
        cursor = 0
        ordered = sorted(tokens, key=lambda t: (t.token_id is None, t.token_id or 0))
        for token in ordered:
            if not token.form or not token.lemma:
                continue
            position = sentence.text.find(token.form, cursor)
            if position < 0:
                continue
            cursor = position + len(token.form)
            frames = _ranked_frames(lexicon, language, token.lemma)
            if not frames:
                continue
            candidates.append(
                TargetCandidate(
                    span=(position, position + len(token.form) - 1),
                    surface=token.form,
                    lemma=token.lemma,
                    language=language,
                    candidate_frames=frames,
                )
            )
        candidates.sort(key=lambda c: c.span)
        return candidates

    for match in _WORD_RE.finditer(sentence.text):
        surface = match.group()
        lemma = normalize_lemma(surface, language)
        frames = _ranked_frames(lexicon, language, lemma)
        if not frames:
            continue
        candidates.append(
            TargetCandidate(
                span=(match.start(), match.end() - 1),
                surface=surface,
                lemma=lemma,
                language=language,
                candidate_frames=frames,
            )
        )
    return candidates


def propose(
    sentence: SentenceVersion, target: TargetCandidate, next_id: int, created_date: str = ""
) -> list[AnnotationSet]:
    """One AUTO annotation set per candidate frame, ids ascending from
    next_id: Target layer filled, FE/GF/PT left empty for the annotator."""
    start, end = target.span
    if not (0 <= start <= end < len(sentence.text)):
        raise SpanOutOfBounds(f"target span ({start}, {end}) exceeds sentence {sentence.id}")
    proposals = []
    for offset, frame in enumerate(target.candidate_frames):
        proposals.append(
            AnnotationSet(
                id=next_id + offset,
                sentence_id=sentence.id,
                frame=frame,
                status="AUTO",
                created_date=created_date,
                layers=(
                    Layer("Target", 1, (SpanLabel(name="Target", start=start, end=end, created_by="AUTO"),)),
                    Layer("FE", 1, ()),
                    Layer("GF", 1, ()),
                    Layer("PT", 1, ()),
                ),
            )
        )
    return proposals


def attach_precomputed_layers(
    annotation_set: AnnotationSet,
    sdl: list[TokenLabel] | None = None,
    span_layers: dict[str, list[SpanLabel]] | None = None,
    sentence_text: str | None = None,
) -> AnnotationSet:
    """Append precomputed analyzer layers (SDL tokens; BAMA/AWP/SUMO spans).

    Existing layers are unchanged; a clashing (name, rank 1) raises
    DuplicateLayer. When sentence_text is given, spans are bounds-checked.
    """
    present = {(layer.name, layer.rank) for layer in annotation_set.layers}
    added: list[Layer] = []
    if sdl is not None:
        if (SDL_LAYER, 1) in present:
            raise DuplicateLayer(f"set {annotation_set.id} already has an {SDL_LAYER} layer at rank 1")
        added.append(Layer(SDL_LAYER, 1, tuple(sdl)))
    for name in span_layers or {}:
        if (name, 1) in present:
            raise DuplicateLayer(f"set {annotation_set.id} already has a {name} layer at rank 1")
        labels = tuple(span_layers[name])
        if sentence_text is not None:
            for label in labels:
                if label.span is not None and not (0 <= label.start <= label.end < len(sentence_text)):
                    raise SpanOutOfBounds(
                        f"label {label.name!r} span ({label.start}, {label.end}) exceeds sentence bounds"
                    )
        added.append(Layer(name, 1, labels))
    return replace(annotation_set, layers=annotation_set.layers + tuple(added))


def parse_token_sidecar(text: str | bytes) -> list[TokenLabel]:
    """Parse a sidecar token file: a JSON array of records using the SDL
    attribute names (Token_ID, Head_ID, Label, PoS, BAMA, Lemma, form)."""
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    try:
        records = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"not a valid token sidecar: {exc.msg}", exc.lineno, exc.colno) from exc
    if not isinstance(records, list):
        raise ParseError("token sidecar must be a JSON array")
    tokens = []
    for record in records:
        if not isinstance(record, dict):
            raise ParseError("token sidecar entries must be objects")
        tokens.append(
            TokenLabel(
                token_id=record.get("Token_ID"),
                head_id=record.get("Head_ID"),
                label=record.get("Label", ""),
                pos=record.get("PoS", ""),
                lemma=record.get("Lemma", ""),
                form=record.get("form", ""),
                morph=record.get("BAMA", ""),
            )
        )
    return tokens


def serialize_token_sidecar(tokens) -> str:
    records = []
    for token in tokens:
        record = {}
        if token.token_id is not None:
            record["Token_ID"] = token.token_id
        if token.head_id is not None:
            record["Head_ID"] = token.head_id
        record.update(Label=token.label, PoS=token.pos, BAMA=token.morph, Lemma=token.lemma, form=token.form)
        records.append(record)
    return json.dumps(records, ensure_ascii=False, indent=2) + "\n"
