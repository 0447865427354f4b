"""On-disk workspace: lexicon, corpus documents, annotations, pairings.

Layout under the workspace root:

    config.json           languages, relatedness threshold
    state.json            persistent id counters (sentences, annotation sets)
    lexicon.json          the frame lexicon
    documents/<key>.xml   one corpus document per file
    annotations/<key>.xml annotation sets for that document
    pairings/<key>.csv    explicit (source set id, target set id) records
    tokens/<id>.json      optional per-sentence token sidecars

All writes go through write-then-rename, so a completed call leaves the
workspace loadable even if the process dies right after. The CLI assumes
exclusive access; the HTTP service serializes writes per document.
"""

from __future__ import annotations

import json
import os
import re
import tempfile
from dataclasses import dataclass, field
from pathlib import Path

from . import analysis, annotations, corpus as corpus_mod, evocation, lexicon as lexicon_mod
from .diagnostics import Diagnostic, ERROR
from .errors import FrameAlignError, ParseError

ENV_WORKSPACE = "FRAMEALIGN_WORKSPACE"

DEFAULT_CONFIG = {
    "languages": ["AR", "EN", "FR"],
    "relatedness_threshold": analysis.DEFAULT_RELATEDNESS_THRESHOLD,
}
DEFAULT_STATE = {"next_sentence_id": 1, "next_set_id": 1}


def atomic_write(path: Path, text: str):
    path.parent.mkdir(parents=True, exist_ok=True)
    handle, tmp_name = tempfile.mkstemp(dir=path.parent, prefix=".tmp-", suffix=path.suffix)
    try:
        with os.fdopen(handle, "w", encoding="utf-8") as tmp:
            tmp.write(text)
        os.replace(tmp_name, path)
    except BaseException:
        if os.path.exists(tmp_name):
            os.unlink(tmp_name)
        raise


def document_key(novel: str, chapter: str) -> str:
    slug = lambda value: re.sub(r"[^A-Za-z0-9؀-ۿ_-]+", "_", value).strip("_") or "untitled"
    return f"{slug(novel)}__{slug(chapter)}"


@dataclass
class Workspace:
    root: Path
    config: dict = field(default_factory=lambda: dict(DEFAULT_CONFIG))
    state: dict = field(default_factory=lambda: dict(DEFAULT_STATE))

    # ------------------------------------------------------------ lifecycle

    @classmethod
    def init(cls, root, languages=None) -> "Workspace":
        root = Path(root)
        if (root / "config.json").exists():
            raise FrameAlignError(f"workspace already initialized at {root}")
        workspace = cls(root=root)
        if languages:
            workspace.config["languages"] = list(languages)
        for sub in ("documents", "annotations", "pairings", "tokens"):
            (root / sub).mkdir(parents=True, exist_ok=True)
        atomic_write(root / "lexicon.json", lexicon_mod.serialize_lexicon(lexicon_mod.FrameLexicon()))
        workspace.save_config()
        workspace.save_state()
        return workspace

    @classmethod
    def open(cls, root) -> "Workspace":
        root = Path(root)
        config_path = root / "config.json"
        if not config_path.exists():
            raise FrameAlignError(f"not a workspace (no config.json): {root}")
        config = dict(DEFAULT_CONFIG)
        config.update(json.loads(config_path.read_text(encoding="utf-8")))
        state = dict(DEFAULT_STATE)
        state_path = root / "state.json"
        if state_path.exists():
            state.update(json.loads(state_path.read_text(encoding="utf-8")))
        return cls(root=root, config=config, state=state)

    def save_config(self):
        atomic_write(self.root / "config.json", json.dumps(self.config, indent=2) + "\n")

    def save_state(self):
        atomic_write(self.root / "state.json", json.dumps(self.state, indent=2) + "\n")

    # ------------------------------------------------------------ id counters

    def take_sentence_ids(self, count: int) -> int:
        first = self.state["next_sentence_id"]
        self.state["next_sentence_id"] = first + count
        self.save_state()
        return first

    def take_set_ids(self, count: int) -> int:
        first = self.state["next_set_id"]
        self.state["next_set_id"] = first + count
        self.save_state()
        return first

    # ------------------------------------------------------------ loading

    @property
    def languages(self) -> list[str]:
        return list(self.config["languages"])

    def lexicon_path(self) -> Path:
        return self.root / "lexicon.json"

    def load_lexicon(self) -> lexicon_mod.FrameLexicon:
        return lexicon_mod.load_lexicon(self.lexicon_path().read_text(encoding="utf-8"))

    def save_lexicon(self, lexicon: lexicon_mod.FrameLexicon):
        atomic_write(self.lexicon_path(), lexicon_mod.serialize_lexicon(lexicon))

    def document_keys(self) -> list[str]:
        directory = self.root / "documents"
        return sorted(path.stem for path in directory.glob("*.xml"))

    def document_path(self, key: str) -> Path:
        return self.root / "documents" / f"{key}.xml"

    def annotations_path(self, key: str) -> Path:
        return self.root / "annotations" / f"{key}.xml"

    def pairings_path(self, key: str) -> Path:
        return self.root / "pairings" / f"{key}.csv"

    def load_document(self, key: str) -> corpus_mod.Document:
        text = self.document_path(key).read_text(encoding="utf-8")
        parsed = corpus_mod.parse_corpus(text, languages=self.languages)
        return parsed.documents[0]

    def load_corpus(self) -> corpus_mod.Corpus:
        return corpus_mod.Corpus(documents=tuple(self.load_document(key) for key in self.document_keys()))

    def save_document(self, document: corpus_mod.Document) -> str:
        key = document_key(document.novel, document.chapter)
        atomic_write(self.document_path(key), corpus_mod.serialize_document(document))
        annotations_path = self.annotations_path(key)
        if not annotations_path.exists():
            atomic_write(annotations_path, annotations.serialize_annotations_file([]))
        return key

    def load_annotations(self, key: str) -> list[annotations.AnnotationSet]:
        path = self.annotations_path(key)
        if not path.exists():
            return []
        return annotations.parse_annotations_file(path.read_text(encoding="utf-8"))

    def load_all_annotations(self) -> list[annotations.AnnotationSet]:
        sets: list[annotations.AnnotationSet] = []
        for key in self.document_keys():
            sets.extend(self.load_annotations(key))
        return sets

    def save_annotations(self, key: str, sets):
        atomic_write(self.annotations_path(key), annotations.serialize_annotations_file(sets))

    def load_pairings(self, key: str) -> list[tuple[int, int]]:
        path = self.pairings_path(key)
        if not path.exists():
            return []
        records = []
        for number, line in enumerate(path.read_text(encoding="utf-8").splitlines(), start=1):
            line = line.strip()
            if not line or line.startswith("source_set_id"):
                continue
            try:
                source_id, target_id = (int(part) for part in line.split(","))
            except ValueError:
                raise ParseError(f"bad pairing record in {path.name}", line=number) from None
            records.append((source_id, target_id))
        return records

    def load_all_pairings(self) -> list[tuple[int, int]]:
        records = []
        for key in self.document_keys():
            records.extend(self.load_pairings(key))
        return records

    def save_pairings(self, key: str, records):
        lines = ["source_set_id,target_set_id"]
        lines.extend(f"{source_id},{target_id}" for source_id, target_id in records)
        atomic_write(self.pairings_path(key), "\n".join(lines) + "\n")

    def find_sentence(self, sentence_id: int) -> tuple[str, str, corpus_mod.SentenceVersion] | None:
        """Locate a sentence id: returns (document key, pid, version)."""
        for key in self.document_keys():
            document = self.load_document(key)
            for paragraph in document.paragraphs:
                for version in paragraph.versions:
                    if version.id == sentence_id:
                        return key, paragraph.pid, version
        return None

    def load_tokens(self, sentence_id: int) -> list[annotations.TokenLabel] | None:
        path = self.root / "tokens" / f"{sentence_id}.json"
        if not path.exists():
            return None
        return evocation.parse_token_sidecar(path.read_text(encoding="utf-8"))

    def save_tokens(self, sentence_id: int, tokens):
        atomic_write(self.root / "tokens" / f"{sentence_id}.json", evocation.serialize_token_sidecar(tokens))

    # ------------------------------------------------------------ operations

    def ingest(self, texts: dict[str, str], novel: str, chapter: str) -> str:
        document = corpus_mod.ingest_plaintext(texts, novel, chapter, id_seed=0)
        needed = sum(len(p.versions) for p in document.paragraphs)
        id_seed = self.take_sentence_ids(needed)
        document = corpus_mod.ingest_plaintext(texts, novel, chapter, id_seed=id_seed)
        return self.save_document(document)

    def validate(self) -> list[Diagnostic]:
        """Validate lexicon, every document, and every annotation set."""
        findings: list[Diagnostic] = []
        try:
            lexicon = self.load_lexicon()
        except FrameAlignError as exc:
            lexicon = None
            findings.extend(getattr(exc, "diagnostics", ()) or [Diagnostic("LEX000", ERROR, "lexicon.json", str(exc))])
        if lexicon is not None:
            findings.extend(lexicon_mod.validate_lexicon(lexicon))

        sentences: dict[int, str] = {}
        for key in self.document_keys():
            try:
                document = self.load_document(key)
            except FrameAlignError as exc:
                findings.extend(
                    getattr(exc, "diagnostics", ()) or [Diagnostic("COR000", ERROR, f"{key}.xml", str(exc))]
                )
                continue
            findings.extend(
                corpus_mod.validate_corpus(corpus_mod.Corpus(documents=(document,)), self.languages)
            )
            for paragraph in document.paragraphs:
                for version in paragraph.versions:
                    sentences[version.id] = version.text

            try:
                sets = self.load_annotations(key)
            except FrameAlignError as exc:
                findings.extend(
                    getattr(exc, "diagnostics", ()) or [Diagnostic("ANN000", ERROR, f"{key}.xml", str(exc))]
                )
                continue
            for annotation_set in sets:
                text = sentences.get(annotation_set.sentence_id)
                if text is None:
                    findings.append(
                        Diagnostic(
                            "ANN015", ERROR, f"set {annotation_set.id}",
                            f"references unknown sentence {annotation_set.sentence_id}",
                        )
                    )
                    continue
                findings.extend(annotations.validate_annotation(annotation_set, text, lexicon))
        return findings

    def propose_for_sentence(self, version: corpus_mod.SentenceVersion, key: str, created_date: str = ""):
        """Run target finding over one sentence and persist the AUTO sets."""
        lexicon = self.load_lexicon()
        tokens = self.load_tokens(version.id)
        new_sets = []
        for candidate in evocation.find_targets(version, lexicon, tokens):
            first_id = self.take_set_ids(len(candidate.candidate_frames))
            new_sets.extend(evocation.propose(version, candidate, first_id, created_date))
        if new_sets:
            existing = self.load_annotations(key)
            self.save_annotations(key, existing + new_sets)
        return new_sets

    def propose_document(self, key: str, language: str | None = None, created_date: str = ""):
        document = self.load_document(key)
        created = []
        for paragraph in document.paragraphs:
            for version in paragraph.versions:
                if language is not None and version.language != language:
                    continue
                created.extend(self.propose_for_sentence(version, key, created_date))
        return created

    def analyze(self, src: str, tgt: str, threshold: int | None = None) -> tuple[analysis.AnalysisReport, list[Diagnostic]]:
        lexicon = self.load_lexicon()
        corpus = self.load_corpus()
        sets = self.load_all_annotations()
        pairings = self.load_all_pairings()
        pairs, diagnostics = analysis.pair_annotations(corpus, sets, src, tgt, pairings=pairings, lexicon=lexicon)
        table = analysis.shift_table(pairs)
        if threshold is None:
            threshold = int(self.config.get("relatedness_threshold", analysis.DEFAULT_RELATEDNESS_THRESHOLD))
        report = analysis.analysis_report(table, lexicon, threshold)
        return report, diagnostics


def resolve_workspace_root(explicit: str | None) -> Path:
    """FRAMEALIGN_WORKSPACE overrides --workspace; the cwd is the last resort."""
    env = os.environ.get(ENV_WORKSPACE)
    if env:
        return Path(env)
    if explicit:
        return Path(explicit)
    return Path.cwd()
