"""framealign: frame-semantic annotation and contrastive analysis of
paragraph-aligned multilingual corpora."""

from .analysis import (
    AnalysisReport,
    AnnotationPair,
    ShiftClass,
    ShiftRow,
    ShiftTable,
    analysis_report,
    classify_shift,
    export_table,
    pair_annotations,
    shift_table,
)
from .annotations import (
    AnnotationSet,
    FETriple,
    Layer,
    SpanLabel,
    TokenLabel,
    fe_triples,
    parse_annotation_set,
    parse_annotations_file,
    serialize_annotation_set,
    serialize_annotations_file,
    set_null_instantiation,
    transition_status,
    validate_annotation,
)
from .corpus import (
    Corpus,
    Document,
    Paragraph,
    SentenceVersion,
    aligned_pairs,
    ingest_plaintext,
    parse_corpus,
    serialize_corpus,
    validate_corpus,
)
from .diagnostics import Diagnostic
from .errors import (
    AlignmentError,
    AlreadyRealized,
    DuplicateLayer,
    FrameAlignError,
    IllegalTransition,
    IntegrityError,
    ParseError,
    SpanOutOfBounds,
    UnknownFrame,
)
from .evocation import TargetCandidate, attach_precomputed_layers, find_targets, propose
from .lexicon import (
    Frame,
    FrameElement,
    FrameLexicon,
    FrameRelation,
    LexicalUnit,
    SemanticType,
    evoked_frames,
    is_descendant,
    load_lexicon,
    lookup_lus,
    relation_path,
    serialize_lexicon,
    validate_lexicon,
)

__version__ = "0.1.0"
