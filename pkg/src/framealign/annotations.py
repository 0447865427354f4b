"""Stand-off layered annotation of frame-evoking targets.

One AnnotationSet annotates one target occurrence in one sentence. Span
layers (FE, GF, PT, Target, plus precomputed BAMA/AWP/SUMO) address the
sentence by inclusive code-point offsets; byte offsets would break on
multi-byte scripts. The SDL layer instead holds dependency tokens linked to
a root predicate (head id 0). All values are immutable; mutating operations
return new sets.
"""

from __future__ import annotations

import xml.etree.ElementTree as ET
from dataclasses import dataclass, replace
from typing import NamedTuple
from xml.sax.saxutils import quoteattr

from .diagnostics import Diagnostic, ERROR, WARNING, errors_in
from .errors import AlreadyRealized, IllegalTransition, IntegrityError, ParseError
from .lexicon import FrameLexicon

STATUSES = ("AUTO", "AUTO_APP", "MANUAL", "REJECTED")
ITYPES = ("CNI", "DNI", "INI")

# Allowed status transitions; everything else raises IllegalTransition.
# No sequence of actions can reach AUTO from another state.
TRANSITIONS = {
    ("AUTO", "approve"): "AUTO_APP",
    ("AUTO", "edit"): "MANUAL",
    ("AUTO", "reject"): "REJECTED",
    ("AUTO_APP", "edit"): "MANUAL",
    ("MANUAL", "edit"): "MANUAL",
}

SDL_LAYER = "SDL"


@dataclass(frozen=True)
class SpanLabel:
    """A named label over an inclusive [start, end] code-point span, or a
    span-less null-instantiation mark (itype CNI/DNI/INI)."""

    name: str
    start: int | None = None
    end: int | None = None
    fe_id: int | None = None
    created_by: str | None = None
    itype: str | None = None

    @property
    def span(self) -> tuple[int, int] | None:
        if self.start is None or self.end is None:
            return None
        return (self.start, self.end)


@dataclass(frozen=True)
class TokenLabel:
    """One dependency-layer token; head_id 0 marks the root predicate."""

    token_id: int | None = None
    head_id: int | None = None
    label: str = ""
    pos: str = ""
    lemma: str = ""
    form: str = ""
    morph: str = ""


@dataclass(frozen=True)
class Layer:
    name: str
    rank: int = 1
    labels: tuple = ()


@dataclass(frozen=True)
class AnnotationSet:
    id: int
    sentence_id: int = 0
    frame: str | None = None
    status: str = "AUTO"
    created_date: str = ""
    layers: tuple[Layer, ...] = ()

    def layer(self, name: str, rank: int = 1) -> Layer | None:
        for layer in self.layers:
            if layer.name == name and layer.rank == rank:
                return layer
        return None


class FETriple(NamedTuple):
    fe_name: str
    gf_name: str | None
    pt_name: str | None
    span: tuple[int, int] | None


def _label_diagnostics(set_id, layer_name, index, label: SpanLabel) -> list[Diagnostic]:
    location = f"set {set_id}/{layer_name}/{index}"
    findings = []
    has_span = label.start is not None or label.end is not None
    if has_span and (label.start is None or label.end is None):
        findings.append(Diagnostic("ANN005", ERROR, location, "span needs both start and end"))
    elif has_span and label.itype is not None:
        findings.append(Diagnostic("ANN005", ERROR, location, "label carries both a span and an itype"))
    elif not has_span and label.itype is None:
        findings.append(Diagnostic("ANN005", ERROR, location, "label carries neither a span nor an itype"))
    if label.itype is not None and label.itype not in ITYPES:
        findings.append(Diagnostic("ANN005", ERROR, location, f"bad itype {label.itype!r}"))
    if label.span is not None and (label.start < 0 or label.end < label.start):
        findings.append(
            Diagnostic("ANN001", ERROR, location, f"inverted or negative span ({label.start}, {label.end})")
        )
    return findings


def _int_attr(element, attr, context) -> int | None:
    raw = element.get(attr)
    if raw is None:
        return None
    try:
        return int(raw)
    except ValueError:
        raise ParseError(f"{context}: attribute {attr}={raw!r} is not an integer") from None


def parse_annotation_set(xml_text: str | bytes, sentence_id: int = 0, strict: bool = False) -> AnnotationSet:
    """Parse one <annotationSet> fragment.

    Unknown layer names are preserved as open strings; unknown statuses are
    preserved too unless strict is set.
    """
    if isinstance(xml_text, bytes):
        xml_text = xml_text.decode("utf-8")
    try:
        root = ET.fromstring(xml_text)
    except ET.ParseError as exc:
        line, column = exc.position if exc.position else (None, None)
        raise ParseError(f"malformed annotation XML: {exc.msg.split(':')[0]}", line, column) from exc
    return _annotation_set_from_element(root, sentence_id, strict)


def _annotation_set_from_element(root, sentence_id: int, strict: bool) -> AnnotationSet:
    if root.tag != "annotationSet":
        raise ParseError(f"expected <annotationSet>, found <{root.tag}>")
    set_id = _int_attr(root, "ID", "annotationSet")
    if set_id is None:
        raise ParseError("annotationSet lacks ID attribute")
    status = root.get("status", "AUTO")
    frame = root.get("frameName")
    created = root.get("cDate", "")

    findings: list[Diagnostic] = []
    if strict and status not in STATUSES:
        findings.append(Diagnostic("ANN008", ERROR, f"set {set_id}", f"unknown status {status!r}"))

    layers = []
    seen_keys: set[tuple[str, int]] = set()
    for element in root:
        if element.tag != "layer":
            raise ParseError(f"set {set_id}: unexpected element <{element.tag}>")
        name = element.get("name")
        if name is None:
            raise ParseError(f"set {set_id}: layer lacks name attribute")
        rank = _int_attr(element, "rank", f"set {set_id}/{name}")
        rank = 1 if rank is None else rank
        key = (name, rank)
        if key in seen_keys:
            findings.append(
                Diagnostic("ANN006", ERROR, f"set {set_id}/{name}", f"duplicate layer (name={name!r}, rank={rank})")
            )
        seen_keys.add(key)

        labels = []
        for index, label in enumerate(element):
            if label.tag != "label":
                raise ParseError(f"set {set_id}/{name}: unexpected element <{label.tag}>")
            context = f"set {set_id}/{name}/{index}"
            if name == SDL_LAYER:
                labels.append(
                    TokenLabel(
                        token_id=_int_attr(label, "Token_ID", context),
                        head_id=_int_attr(label, "Head_ID", context),
                        label=label.get("Label", ""),
                        pos=label.get("PoS", ""),
                        lemma=label.get("Lemma", ""),
                        form=label.get("form", ""),
                        morph=label.get("BAMA", ""),
                    )
                )
            else:
                span_label = SpanLabel(
                    name=label.get("name", ""),
                    start=_int_attr(label, "start", context),
                    end=_int_attr(label, "end", context),
                    fe_id=_int_attr(label, "feID", context),
                    created_by=label.get("cBy"),
                    itype=label.get("itype"),
                )
                findings.extend(_label_diagnostics(set_id, name, index, span_label))
                labels.append(span_label)
        layers.append(Layer(name=name, rank=rank, labels=tuple(labels)))

    if errors_in(findings):
        raise IntegrityError(f"annotation set {set_id} failed integrity checks", errors_in(findings))
    return AnnotationSet(
        id=set_id, sentence_id=sentence_id, frame=frame, status=status, created_date=created, layers=tuple(layers)
    )


def _span_label_xml(label: SpanLabel) -> str:
    parts = [f"name={quoteattr(label.name)}"]
    if label.start is not None:
        parts.append(f'start="{label.start}"')
    if label.end is not None:
        parts.append(f'end="{label.end}"')
    if label.fe_id is not None:
        parts.append(f'feID="{label.fe_id}"')
    if label.created_by is not None:
        parts.append(f"cBy={quoteattr(label.created_by)}")
    if label.itype is not None:
        parts.append(f"itype={quoteattr(label.itype)}")
    return "<label " + " ".join(parts) + "/>"


def _token_label_xml(token: TokenLabel) -> str:
    parts = [f"Label={quoteattr(token.label)}"]
    if token.head_id is not None:
        parts.append(f'Head_ID="{token.head_id}"')
    parts.append(f"PoS={quoteattr(token.pos)}")
    parts.append(f"BAMA={quoteattr(token.morph)}")
    parts.append(f"Lemma={quoteattr(token.lemma)}")
    if token.form:
        parts.append(f"form={quoteattr(token.form)}")
    if token.token_id is not None:
        parts.append(f'Token_ID="{token.token_id}"')
    return "<label " + " ".join(parts) + "/>"


def serialize_annotation_set(annotation_set: AnnotationSet, indent: str = "") -> str:
    """Emit the <annotationSet> fragment; parse_annotation_set inverts it."""
    head = [f'ID="{annotation_set.id}"']
    if annotation_set.frame is not None:
        head.append(f"frameName={quoteattr(annotation_set.frame)}")
    head.append(f"status={quoteattr(annotation_set.status)}")
    if annotation_set.created_date:
        head.append(f"cDate={quoteattr(annotation_set.created_date)}")
    lines = [f"{indent}<annotationSet " + " ".join(head) + ">"]
    for layer in annotation_set.layers:
        lines.append(f'{indent}  <layer name={quoteattr(layer.name)} rank="{layer.rank}">')
        for label in layer.labels:
            rendered = _token_label_xml(label) if layer.name == SDL_LAYER else _span_label_xml(label)
            lines.append(f"{indent}    {rendered}")
        lines.append(f"{indent}  </layer>")
    lines.append(f"{indent}</annotationSet>")
    return "\n".join(lines)


def fe_triples(annotation_set: AnnotationSet) -> tuple[list[FETriple], list[Diagnostic]]:
    """Join FE, GF and PT rank-1 labels on exact (start, end) equality.

    Null-instantiated FEs yield (fe, None, None, None). An FE span with no
    GF or PT label at the same offsets is reported as an ANN002 diagnostic
    and included with the missing side(s) left None.
    """
    fe_layer = annotation_set.layer("FE")
    gf_layer = annotation_set.layer("GF")
    pt_layer = annotation_set.layer("PT")
    by_span = lambda layer: {
        label.span: label.name for label in (layer.labels if layer else ()) if label.span is not None
    }
    gf_by_span = by_span(gf_layer)
    pt_by_span = by_span(pt_layer)

    triples: list[FETriple] = []
    findings: list[Diagnostic] = []
    for index, label in enumerate(fe_layer.labels if fe_layer else ()):
        if label.span is None:
            triples.append(FETriple(label.name, None, None, None))
            continue
        gf = gf_by_span.get(label.span)
        pt = pt_by_span.get(label.span)
        if gf is None or pt is None:
            missing = " and ".join(n for n, v in (("GF", gf), ("PT", pt)) if v is None)
            findings.append(
                Diagnostic(
                    "ANN002", ERROR, f"set {annotation_set.id}/FE/{index}",
                    f"FE {label.name!r} at {label.span} has no matching {missing} label",
                )
            )
        triples.append(FETriple(label.name, gf, pt, label.span))
    return triples, findings


def _sdl_diagnostics(annotation_set: AnnotationSet) -> list[Diagnostic]:
    findings = []
    for layer in annotation_set.layers:
        if layer.name != SDL_LAYER:
            continue
        location = f"set {annotation_set.id}/{SDL_LAYER}"
        roots = [t for t in layer.labels if t.head_id == 0]
        if len(roots) != 1:
            findings.append(
                Diagnostic("ANN013", WARNING, location, f"expected exactly one root token, found {len(roots)}")
            )
        heads = {t.token_id: t.head_id for t in layer.labels if t.token_id is not None}
        for token in layer.labels:
            seen = set()
            node = token.token_id
            while node is not None and node != 0 and node in heads:
                if node in seen:
                    findings.append(
                        Diagnostic("ANN012", ERROR, location, f"head links cycle through token {node}")
                    )
                    break
                seen.add(node)
                node = heads[node]
    return findings


def validate_annotation(
    annotation_set: AnnotationSet, sentence_text: str, lexicon: FrameLexicon | None = None
) -> list[Diagnostic]:
    """Validate one set against its sentence and, when the set has a frame
    and a lexicon is given, against the frame's FE inventory."""
    findings: list[Diagnostic] = []
    length = len(sentence_text)

    target = annotation_set.layer("Target")
    target_spans = [l for l in (target.labels if target else ()) if l.span is not None]
    if target is None or len(target_spans) != 1:
        findings.append(
            Diagnostic(
                "ANN007", ERROR, f"set {annotation_set.id}/Target",
                "annotation set needs exactly one Target layer with one span label",
            )
        )

    for layer in annotation_set.layers:
        if layer.name == SDL_LAYER:
            continue
        for index, label in enumerate(layer.labels):
            findings.extend(_label_diagnostics(annotation_set.id, layer.name, index, label))
            if label.span is not None and label.end >= length and label.start <= label.end and label.start >= 0:
                findings.append(
                    Diagnostic(
                        "ANN003", ERROR, f"set {annotation_set.id}/{layer.name}/{index}",
                        f"span ({label.start}, {label.end}) exceeds sentence length {length}",
                    )
                )

    _, misaligned = fe_triples(annotation_set)
    findings.extend(misaligned)
    findings.extend(_sdl_diagnostics(annotation_set))

    if lexicon is not None and annotation_set.frame is not None:
        frame = lexicon.frames.get(annotation_set.frame)
        if frame is None:
            findings.append(
                Diagnostic(
                    "ANN009", ERROR, f"set {annotation_set.id}",
                    f"frame {annotation_set.frame!r} is not defined in the lexicon",
                )
            )
        else:
            fe_layer = annotation_set.layer("FE")
            fe_labels = list(fe_layer.labels) if fe_layer else []
            frame_fe_names = {fe.name for fe in frame.frame_elements}
            for index, label in enumerate(fe_labels):
                if label.name not in frame_fe_names:
                    findings.append(
                        Diagnostic(
                            "ANN004", ERROR, f"set {annotation_set.id}/FE/{index}",
                            f"FE {label.name!r} is not defined in frame {frame.name!r}",
                        )
                    )
            realized = {l.name for l in fe_labels if l.span is not None}
            marked = {l.name for l in fe_labels if l.itype is not None}
            for fe in frame.core_elements():
                if fe.name not in realized and fe.name not in marked:
                    findings.append(
                        Diagnostic(
                            "ANN011", WARNING, f"set {annotation_set.id}/FE",
                            f"core FE {fe.name!r} neither realized nor null-instantiated",
                        )
                    )
            for fe in frame.frame_elements:
                if fe.name not in realized:
                    continue
                for excluded in sorted(fe.excludes & realized):
                    findings.append(
                        Diagnostic(
                            "ANN010", ERROR, f"set {annotation_set.id}/FE",
                            f"FEs {fe.name!r} and {excluded!r} are both realized but exclude each other",
                        )
                    )
    return findings


def transition_status(annotation_set: AnnotationSet, action: str) -> AnnotationSet:
    """Drive the review status machine; returns a new set, input unchanged."""
    new_status = TRANSITIONS.get((annotation_set.status, action))
    if new_status is None:
        raise IllegalTransition(annotation_set.status, action)
    return replace(annotation_set, status=new_status)


def set_null_instantiation(annotation_set: AnnotationSet, fe_name: str, itype: str) -> AnnotationSet:
    """Mark a core FE as null-instantiated (CNI, DNI or INI) by appending a
    span-less FE label."""
    if itype not in ITYPES:
        raise ValueError(f"itype must be one of {ITYPES}, got {itype!r}")
    fe_layer = annotation_set.layer("FE")
    if fe_layer is not None:
        for label in fe_layer.labels:
            if label.name == fe_name and label.span is not None:
                raise AlreadyRealized(f"FE {fe_name!r} is already realized by a span")
            if label.name == fe_name and label.itype is not None:
                raise AlreadyRealized(f"FE {fe_name!r} is already null-instantiated")
    mark = SpanLabel(name=fe_name, itype=itype)
    if fe_layer is None:
        return replace(annotation_set, layers=annotation_set.layers + (Layer("FE", 1, (mark,)),))
    layers = tuple(
        replace(layer, labels=layer.labels + (mark,)) if layer is fe_layer else layer
        for layer in annotation_set.layers
    )
    return replace(annotation_set, layers=layers)


def parse_annotations_file(xml_text: str | bytes, strict: bool = False) -> list[AnnotationSet]:
    """Parse a per-document annotations file grouping sets by sentence id."""
    if isinstance(xml_text, bytes):
        xml_text = xml_text.decode("utf-8")
    try:
        root = ET.fromstring(xml_text)
    except ET.ParseError as exc:
        line, column = exc.position if exc.position else (None, None)
        raise ParseError(f"malformed annotations XML: {exc.msg.split(':')[0]}", line, column) from exc
    if root.tag != "annotations":
        raise ParseError(f"expected <annotations> root element, found <{root.tag}>")

    sets: list[AnnotationSet] = []
    findings: list[Diagnostic] = []
    seen_ids: set[int] = set()
    for sentence in root:
        if sentence.tag != "sentence":
            raise ParseError(f"unexpected element <{sentence.tag}> under <annotations>")
        sentence_id = _int_attr(sentence, "ID", "sentence")
        if sentence_id is None:
            raise ParseError("<sentence> lacks ID attribute")
        for element in sentence:
            annotation_set = _annotation_set_from_element(element, sentence_id, strict)
            if annotation_set.id in seen_ids:
                findings.append(
                    Diagnostic(
                        "ANN014", ERROR, f"set {annotation_set.id}",
                        f"duplicate annotation set id {annotation_set.id}",
                    )
                )
            seen_ids.add(annotation_set.id)
            sets.append(annotation_set)
    if findings:
        raise IntegrityError("annotations file failed integrity checks", findings)
    return sets


def serialize_annotations_file(sets) -> str:
    """Group sets under their sentence ids (ascending) and emit the file."""
    by_sentence: dict[int, list[AnnotationSet]] = {}
    for annotation_set in sets:
        by_sentence.setdefault(annotation_set.sentence_id, []).append(annotation_set)
    lines = ['<?xml version="1.0" encoding="UTF-8"?>']
    if not by_sentence:
        lines.append("<annotations/>")
        return "\n".join(lines) + "\n"
    lines.append("<annotations>")
    for sentence_id in sorted(by_sentence):
        lines.append(f'  <sentence ID="{sentence_id}">')
        for annotation_set in by_sentence[sentence_id]:
            lines.append(serialize_annotation_set(annotation_set, indent="    "))
        lines.append("  </sentence>")
    lines.append("</annotations>")
    return "\n".join(lines) + "\n"
