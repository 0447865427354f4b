"""Paragraph-aligned multilingual corpus: parse, build, validate, serialize.

One corpus XML file holds one document (a novel chapter). The format wraps
``<prg pID="pN">`` paragraphs holding ``<p lang="XX" ID="n">text</p>``
sentence versions; the ``<corpus novel=".." chapter="..">`` root element is
this toolkit's addition (the per-paragraph vocabulary is fixed). Corpus
values are immutable snapshots and can be shared freely across threads.
"""

from __future__ import annotations

import re
import xml.etree.ElementTree as ET
from dataclasses import dataclass
from xml.sax.saxutils import escape, quoteattr

from .diagnostics import Diagnostic, ERROR, WARNING, errors_in
from .errors import AlignmentError, IntegrityError, ParseError

DEFAULT_LANGUAGES = ("AR", "EN", "FR")

_PID_RE = re.compile(r"^p\d+$")
_LANG_RE = re.compile(r"^[A-Z]{2}$")


@dataclass(frozen=True)
class SentenceVersion:
    id: int
    language: str
    text: str


@dataclass(frozen=True)
class Paragraph:
    pid: str
    versions: tuple[SentenceVersion, ...] = ()

    def version_for(self, language: str) -> SentenceVersion | None:
        for version in self.versions:
            if version.language == language:
                return version
        return None


@dataclass(frozen=True)
class Document:
    novel: str
    chapter: str
    paragraphs: tuple[Paragraph, ...] = ()


@dataclass(frozen=True)
class Corpus:
    documents: tuple[Document, ...] = ()

    def sentences(self):
        for document in self.documents:
            for paragraph in document.paragraphs:
                for version in paragraph.versions:
                    yield paragraph, version


def validate_corpus(corpus: Corpus, languages=DEFAULT_LANGUAGES) -> list[Diagnostic]:
    """Check corpus invariants; unknown language codes are warnings."""
    findings: list[Diagnostic] = []
    seen_docs: set[tuple[str, str]] = set()
    seen_ids: set[int] = set()
    known = set(languages)

    for document in corpus.documents:
        doc_key = (document.novel, document.chapter)
        doc_loc = f"document {document.novel}/{document.chapter}"
        if doc_key in seen_docs:
            findings.append(Diagnostic("COR007", ERROR, doc_loc, "duplicate (novel, chapter)"))
        seen_docs.add(doc_key)
        seen_pids: set[str] = set()
        for paragraph in document.paragraphs:
            loc = f"{doc_loc} paragraph {paragraph.pid}"
            if not _PID_RE.match(paragraph.pid):
                findings.append(Diagnostic("COR005", ERROR, loc, "pid must be of the form p<N>"))
            if paragraph.pid in seen_pids:
                findings.append(Diagnostic("COR001", ERROR, loc, f"duplicate paragraph id {paragraph.pid!r}"))
            seen_pids.add(paragraph.pid)
            langs_here: set[str] = set()
            for version in paragraph.versions:
                vloc = f"{loc} sentence {version.id}"
                if version.id in seen_ids:
                    findings.append(Diagnostic("COR002", ERROR, vloc, f"duplicate sentence id {version.id}"))
                seen_ids.add(version.id)
                if version.language in langs_here:
                    findings.append(
                        Diagnostic("COR003", ERROR, vloc, f"duplicate language {version.language!r} in paragraph")
                    )
                langs_here.add(version.language)
                if not _LANG_RE.match(version.language) or version.language not in known:
                    findings.append(
                        Diagnostic("COR004", WARNING, vloc, f"unknown language code {version.language!r}")
                    )
                if not version.text.strip():
                    findings.append(Diagnostic("COR006", ERROR, vloc, "sentence text empty after trimming"))
    return findings


def parse_corpus(xml_text: str | bytes, strict: bool = False, languages=DEFAULT_LANGUAGES) -> Corpus:
    """Parse one corpus document file.

    Text content is preserved exactly (including surrounding whitespace
    inside <p> elements). In strict mode unknown language codes are
    rejected; otherwise they only warn via validate_corpus.
    """
    if isinstance(xml_text, bytes):
        xml_text = xml_text.decode("utf-8")
    try:
        root = ET.fromstring(xml_text)
    except ET.ParseError as exc:
        line, column = exc.position if exc.position else (None, None)
        raise ParseError(f"malformed corpus XML: {exc.msg.split(':')[0]}", line, column) from exc
    if root.tag != "corpus":
        raise ParseError(f"expected <corpus> root element, found <{root.tag}>")

    paragraphs = []
    for prg in root:
        if prg.tag != "prg":
            raise ParseError(f"unexpected element <{prg.tag}> under <corpus>")
        pid = prg.get("pID")
        if pid is None:
            raise ParseError("<prg> element lacks pID attribute")
        versions = []
        for p in prg:
            if p.tag != "p":
                raise ParseError(f"unexpected element <{p.tag}> under <prg pID={pid!r}>")
            lang = p.get("lang")
            raw_id = p.get("ID")
            if lang is None or raw_id is None:
                raise ParseError(f"<p> in paragraph {pid!r} lacks lang or ID attribute")
            try:
                sentence_id = int(raw_id)
            except ValueError:
                raise ParseError(f"<p> in paragraph {pid!r} has non-integer ID {raw_id!r}") from None
            versions.append(SentenceVersion(id=sentence_id, language=lang, text=p.text or ""))
        paragraphs.append(Paragraph(pid=pid, versions=tuple(versions)))

    corpus = Corpus(documents=(Document(root.get("novel", ""), root.get("chapter", ""), tuple(paragraphs)),))
    findings = validate_corpus(corpus, languages)
    problems = errors_in(findings)
    if strict:
        problems = problems + [d for d in findings if d.code == "COR004"]
    if problems:
        raise IntegrityError("corpus failed integrity checks", problems)
    return corpus


def serialize_document(document: Document) -> str:
    attrs = ""
    if document.novel:
        attrs += f" novel={quoteattr(document.novel)}"
    if document.chapter:
        attrs += f" chapter={quoteattr(document.chapter)}"
    lines = ['<?xml version="1.0" encoding="UTF-8"?>']
    if not document.paragraphs:
        lines.append(f"<corpus{attrs}/>")
        return "\n".join(lines) + "\n"
    lines.append(f"<corpus{attrs}>")
    for paragraph in document.paragraphs:
        lines.append(f"  <prg pID={quoteattr(paragraph.pid)}>")
        for version in paragraph.versions:
            lines.append(
                f"    <p lang={quoteattr(version.language)} ID=\"{version.id}\">{escape(version.text)}</p>"
            )
        lines.append("  </prg>")
    lines.append("</corpus>")
    return "\n".join(lines) + "\n"


def serialize_corpus(corpus: Corpus) -> str:
    """Canonical XML for a one-document corpus; parse_corpus inverts it."""
    if len(corpus.documents) != 1:
        raise ValueError(f"a corpus file holds exactly one document, got {len(corpus.documents)}")
    return serialize_document(corpus.documents[0])


def _split_paragraphs(text: str) -> list[str]:
    # Blank-line separated; internal line breaks are reflowed to spaces.
    chunks = re.split(r"\n\s*\n", text)
    return [re.sub(r"\s*\n\s*", " ", chunk).strip() for chunk in chunks if chunk.strip()]


def ingest_plaintext(
    texts: dict[str, str | list[str]],
    novel: str,
    chapter: str,
    id_seed: int,
    pid_start: int = 1,
) -> Document:
    """Build a document from per-language paragraph texts.

    Sentence ids ascend from id_seed, interleaved paragraph by paragraph and
    within a paragraph by language code order (AR before EN before FR).
    """
    per_language: dict[str, list[str]] = {}
    for language, value in texts.items():
        language = language.strip().upper()
        per_language[language] = list(value) if isinstance(value, (list, tuple)) else _split_paragraphs(value)

    counts = {language: len(paragraphs) for language, paragraphs in per_language.items()}
    if len(set(counts.values())) > 1:
        raise AlignmentError(counts)

    ordered_languages = sorted(per_language)
    count = next(iter(counts.values()), 0)
    paragraphs = []
    next_id = id_seed
    for index in range(count):
        versions = []
        for language in ordered_languages:
            versions.append(SentenceVersion(id=next_id, language=language, text=per_language[language][index]))
            next_id += 1
        paragraphs.append(Paragraph(pid=f"p{pid_start + index}", versions=tuple(versions)))
    return Document(novel=novel, chapter=chapter, paragraphs=tuple(paragraphs))


def aligned_pairs(
    corpus: Corpus, src: str, tgt: str
) -> tuple[list[tuple[SentenceVersion, SentenceVersion]], list[str]]:
    """One (src, tgt) sentence pair per paragraph holding both languages, in
    paragraph order; pids missing either language come back in a side list."""
    pairs: list[tuple[SentenceVersion, SentenceVersion]] = []
    skipped: list[str] = []
    for document in corpus.documents:
        for paragraph in document.paragraphs:
            source = paragraph.version_for(src)
            target = paragraph.version_for(tgt)
            if source is not None and target is not None:
                pairs.append((source, target))
            else:
                skipped.append(paragraph.pid)
    return pairs, skipped
