"""Structured validation findings.

Diagnostic codes are stable across releases; tools may match on them.

Lexicon (LEX)
    LEX001  dangling frame reference (relation endpoint or lexical-unit frame)
    LEX002  inheritance cycle
    LEX003  frame element excludes an unknown FE, or excludes itself
    LEX004  duplicate lexical unit (lemma, pos, language, frame)
    LEX005  frame element names an undefined semantic type (warning)
    LEX006  relation source equals target
    LEX007  semantic-type parent undefined or parent chain cyclic
    LEX008  duplicate frame element name within a frame

Corpus (COR)
    COR001  duplicate paragraph id
    COR002  duplicate sentence id
    COR003  duplicate language within a paragraph
    COR004  unknown or malformed language code (warning unless strict)
    COR005  paragraph id not of the form p<N>
    COR006  sentence text empty after trimming
    COR007  duplicate (novel, chapter) pair in one corpus

Annotation (ANN)
    ANN001  inverted or negative span offsets
    ANN002  FE span with no grammatical-function or phrase-type label at
            the same offsets (misaligned triple)
    ANN003  span outside sentence bounds
    ANN004  FE name not defined in the assigned frame
    ANN005  label must carry exactly one of span offsets or itype; itype
            must be CNI, DNI or INI
    ANN006  duplicate (layer name, rank) within an annotation set
    ANN007  annotation set lacks exactly one Target layer with one label
    ANN008  unknown annotation status (strict mode only)
    ANN009  assigned frame not defined in the lexicon
    ANN010  two realized FEs violate an Excludes constraint
    ANN011  core FE neither realized by a span nor null-instantiated (warning)
    ANN012  dependency layer head links form a cycle
    ANN013  dependency layer does not have exactly one root token (warning)
    ANN014  duplicate annotation set id in one annotations file
    ANN015  annotation set references an unknown sentence id

Analysis (ANA)
    ANA001  approved annotation set left unpaired
    ANA002  pairing record references a missing or ineligible set
"""

from __future__ import annotations

from dataclasses import dataclass

ERROR = "error"
WARNING = "warning"


@dataclass(frozen=True)
class Diagnostic:
    code: str
    severity: str
    location: str
    message: str

    def __str__(self) -> str:
        return f"{self.severity} {self.code} at {self.location}: {self.message}"


def errors_in(diagnostics) -> list[Diagnostic]:
    return [d for d in diagnostics if d.severity == ERROR]
