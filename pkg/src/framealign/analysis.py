"""Cross-language frame-shift analysis.

Pairs approved annotation sets across a language pair, tallies the
source-frame/target-frame shift table, classifies each shift through the
lexicon relation graph, and computes the framing-parallelism ratio as an
exact rational.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .annotations import AnnotationSet
from .corpus import Corpus
from .diagnostics import Diagnostic, WARNING
from .errors import UnknownFrame
from .lexicon import FrameLexicon, FrameRelation, RELATION_KINDS, lookup_lus, relation_path
from .textnorm import normalize_lemma

APPROVED_STATUSES = ("AUTO_APP", "MANUAL")

# A shift counts as related when some relation path of at most this many
# edges (any kind, either direction) connects the two frames.
DEFAULT_RELATEDNESS_THRESHOLD = 2


@dataclass(frozen=True)
class AnnotationPair:
    source_set: AnnotationSet
    target_set: AnnotationSet
    paragraph: str
    source_lemma: str = ""
    target_lemma: str = ""


@dataclass(frozen=True)
class ShiftRow:
    source_frame: str
    target_frame: str
    count: int
    example_lemmas: tuple[str, ...] = ()


@dataclass(frozen=True)
class ShiftTable:
    rows: tuple[ShiftRow, ...]
    total: int


@dataclass(frozen=True)
class ShiftClass:
    kind: str  # identical | related | unrelated
    path: tuple[FrameRelation, ...] | None = None


@dataclass(frozen=True)
class AnalysisReport:
    table: ShiftTable
    same_frame: int
    related_shift: int
    unrelated_shift: int
    parallelism: Fraction | None
    percentage: int | None


def _target_span(annotation_set: AnnotationSet) -> tuple[int, int] | None:
    layer = annotation_set.layer("Target")
    for label in layer.labels if layer else ():
        if label.span is not None:
            return label.span
    return None


def _target_lemma(
    annotation_set: AnnotationSet, text: str, language: str, lexicon: FrameLexicon | None
) -> str:
    """Lemma of the frame-evoking target: the lexicon's stored LU lemma when
    the target surface resolves, the normalized surface otherwise."""
    span = _target_span(annotation_set)
    if span is None:
        return ""
    surface = text[span[0] : span[1] + 1]
    normalized = normalize_lemma(surface, language)
    if lexicon is not None:
        for lu in lookup_lus(lexicon, language, normalized):
            if lu.frame == annotation_set.frame:
                return lu.lemma
    return normalized


def pair_annotations(
    corpus: Corpus,
    sets,
    src: str,
    tgt: str,
    pairings: list[tuple[int, int]] | None = None,
    lexicon: FrameLexicon | None = None,
) -> tuple[list[AnnotationPair], list[Diagnostic]]:
    """Pair approved sets of the src and tgt sentences of each paragraph.

    Explicit pairing records take precedence; the rest are matched in
    target-span order. Leftover approved sets are reported as diagnostics,
    never dropped silently.
    """
    # paragraph identity is document-scoped: two chapters may both own a p70
    sentence_info: dict[int, tuple[tuple[int, str], str, str]] = {}  # id -> (pkey, language, text)
    for doc_index, document in enumerate(corpus.documents):
        for paragraph in document.paragraphs:
            for version in paragraph.versions:
                sentence_info[version.id] = ((doc_index, paragraph.pid), version.language, version.text)

    approved: dict[int, AnnotationSet] = {}
    by_paragraph: dict[tuple[int, str], dict[str, list[AnnotationSet]]] = {}
    diagnostics: list[Diagnostic] = []
    for annotation_set in sets:
        if annotation_set.status not in APPROVED_STATUSES or annotation_set.frame is None:
            continue
        info = sentence_info.get(annotation_set.sentence_id)
        if info is None:
            diagnostics.append(
                Diagnostic(
                    "ANA001", WARNING, f"set {annotation_set.id}",
                    f"approved set references unknown sentence {annotation_set.sentence_id}",
                )
            )
            continue
        approved[annotation_set.id] = annotation_set
        pkey, language, _ = info
        if language in (src, tgt):
            by_paragraph.setdefault(pkey, {}).setdefault(language, []).append(annotation_set)

    def make_pair(source_set: AnnotationSet, target_set: AnnotationSet, pid: str) -> AnnotationPair:
        _, src_lang, src_text = sentence_info[source_set.sentence_id]
        _, tgt_lang, tgt_text = sentence_info[target_set.sentence_id]
        return AnnotationPair(
            source_set=source_set,
            target_set=target_set,
            paragraph=pid,
            source_lemma=_target_lemma(source_set, src_text, src_lang, lexicon),
            target_lemma=_target_lemma(target_set, tgt_text, tgt_lang, lexicon),
        )

    pairs: list[AnnotationPair] = []
    explicitly_paired: set[int] = set()
    for source_id, target_id in pairings or ():
        source_set = approved.get(source_id)
        target_set = approved.get(target_id)
        record = f"pairing ({source_id}, {target_id})"
        if source_set is None or target_set is None:
            diagnostics.append(
                Diagnostic("ANA002", WARNING, record, "pairing references a missing or unapproved set")
            )
            continue
        src_pkey, src_lang, _ = sentence_info[source_set.sentence_id]
        tgt_pkey, tgt_lang, _ = sentence_info[target_set.sentence_id]
        if src_pkey != tgt_pkey or src_lang != src or tgt_lang != tgt:
            diagnostics.append(
                Diagnostic("ANA002", WARNING, record, "pairing crosses paragraphs or languages")
            )
            continue
        pairs.append(make_pair(source_set, target_set, src_pkey[1]))
        explicitly_paired.update((source_id, target_id))

    order = lambda annotation_set: (_target_span(annotation_set) or (0, 0), annotation_set.id)
    for pkey in sorted(by_paragraph, key=lambda key: (key[0], _pid_sort_key(key[1]))):
        sides = by_paragraph[pkey]
        src_sets = [s for s in sides.get(src, []) if s.id not in explicitly_paired]
        tgt_sets = [s for s in sides.get(tgt, []) if s.id not in explicitly_paired]
        src_sets.sort(key=order)
        tgt_sets.sort(key=order)
        for source_set, target_set in zip(src_sets, tgt_sets):
            pairs.append(make_pair(source_set, target_set, pkey[1]))
        for leftover in src_sets[len(tgt_sets) :] + tgt_sets[len(src_sets) :]:
            diagnostics.append(
                Diagnostic(
                    "ANA001", WARNING, f"set {leftover.id}",
                    f"approved set in paragraph {pkey[1]} has no counterpart to pair with",
                )
            )
    return pairs, diagnostics


def _pid_sort_key(pid: str):
    digits = pid[1:] if pid.startswith("p") else pid
    return (0, int(digits)) if digits.isdigit() else (1, pid)


def shift_table(pairs) -> ShiftTable:
    """Tally pairs by (source frame, target frame); rows sorted by count
    descending, then frame names. Collects up to 5 example target lemmas."""
    counts: dict[tuple[str, str], int] = {}
    lemmas: dict[tuple[str, str], list[str]] = {}
    for pair in pairs:
        key = (pair.source_set.frame, pair.target_set.frame)
        counts[key] = counts.get(key, 0) + 1
        bucket = lemmas.setdefault(key, [])
        if pair.target_lemma and pair.target_lemma not in bucket and len(bucket) < 5:
            bucket.append(pair.target_lemma)
    rows = tuple(
        ShiftRow(source_frame=s, target_frame=t, count=counts[(s, t)], example_lemmas=tuple(lemmas[(s, t)]))
        for s, t in sorted(counts, key=lambda key: (-counts[key], key[0], key[1]))
    )
    return ShiftTable(rows=rows, total=sum(counts.values()))


def classify_shift(
    source_frame: str,
    target_frame: str,
    lexicon: FrameLexicon,
    threshold: int = DEFAULT_RELATEDNESS_THRESHOLD,
) -> ShiftClass:
    """identical when names match; related when a relation path of at most
    `threshold` edges connects the frames; unrelated otherwise."""
    for name in (source_frame, target_frame):
        if name not in lexicon.frames:
            raise UnknownFrame(name)
    if source_frame == target_frame:
        return ShiftClass("identical", path=())
    path = relation_path(lexicon, source_frame, target_frame, RELATION_KINDS)
    if path is not None and len(path) <= threshold:
        return ShiftClass("related", path=tuple(path))
    return ShiftClass("unrelated", path=None)


def analysis_report(
    table: ShiftTable, lexicon: FrameLexicon, threshold: int = DEFAULT_RELATEDNESS_THRESHOLD
) -> AnalysisReport:
    """Partition the table into same-frame, related-shift and unrelated-shift
    counts and compute the parallelism ratio (absent for an empty table)."""
    same = related = unrelated = 0
    for row in table.rows:
        if row.source_frame == row.target_frame:
            same += row.count
        elif classify_shift(row.source_frame, row.target_frame, lexicon, threshold).kind == "related":
            related += row.count
        else:
            unrelated += row.count
    if table.total == 0:
        parallelism = percentage = None
    else:
        parallelism = Fraction(same, table.total)
        # round-half-up: 61/72 = 84.72% prints as 85%
        percentage = int(parallelism * 100 + Fraction(1, 2))
    return AnalysisReport(
        table=table,
        same_frame=same,
        related_shift=related,
        unrelated_shift=unrelated,
        parallelism=parallelism,
        percentage=percentage,
    )


def _csv_field(value: str) -> str:
    if any(ch in value for ch in ',"\n'):
        return '"' + value.replace('"', '""') + '"'
    return value


def export_table(report: AnalysisReport, format: str = "markdown") -> str:
    """Render the report as locale-independent text ('csv' or 'markdown')."""
    rows = report.table.rows
    if format == "csv":
        lines = ["source_frame,target_frame,count,example_lemmas"]
        for row in rows:
            lemmas = '"' + ", ".join(row.example_lemmas).replace('"', '""') + '"' if row.example_lemmas else '""'
            lines.append(f"{_csv_field(row.source_frame)},{_csv_field(row.target_frame)},{row.count},{lemmas}")
        if rows:
            lines.append(f"total,,{report.table.total},")
        return "\n".join(lines) + "\n"
    if format == "markdown":
        lines = [
            "| Source frame | Target frame | Count | Example lemmas |",
            "| --- | --- | ---: | --- |",
        ]
        for row in rows:
            lemmas = ", ".join(row.example_lemmas)
            lines.append(f"| {row.source_frame} | {row.target_frame} | {row.count} | {lemmas} |")
        lines.append(f"| total |  | {report.table.total} |  |")
        lines.append("")
        lines.append(
            f"Same frame: {report.same_frame} · related shifts: {report.related_shift}"
            f" · unrelated shifts: {report.unrelated_shift}"
        )
        if report.parallelism is None:
            lines.append("Framing parallelism: undefined (no pairs)")
        else:
            lines.append(
                f"Framing parallelism: {report.parallelism.numerator}/{report.parallelism.denominator}"
                f" ({report.percentage}%)"
            )
        return "\n".join(lines) + "\n"
    raise ValueError(f"unknown export format {format!r}")
