"""In-memory frame lexicon.

Frames with their frame elements and semantic types, lexical units per
language, and a typed frame-to-frame relation graph with closure queries.
Lexicons are immutable once built; every operation returns new values, so
instances may be shared across threads without locking.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass

from .diagnostics import Diagnostic, ERROR, WARNING, errors_in
from .errors import IntegrityError, ParseError, UnknownFrame
from .textnorm import normalize_language, normalize_lemma

CORENESS_VALUES = ("core", "peripheral", "extra_thematic")
RELATION_KINDS = ("inherits_from", "uses", "has_subframe", "causative_of", "inchoative_of", "precedes")
POS_VALUES = ("v", "n", "a", "adv", "prep")


@dataclass(frozen=True)
class SemanticType:
    name: str
    parent: str | None = None


@dataclass(frozen=True)
class FrameElement:
    name: str
    coreness: str = "core"
    semantic_type: str | None = None
    excludes: frozenset[str] = frozenset()


@dataclass(frozen=True)
class Frame:
    name: str
    definition: str = ""
    frame_elements: tuple[FrameElement, ...] = ()

    def element(self, name: str) -> FrameElement | None:
        for fe in self.frame_elements:
            if fe.name == name:
                return fe
        return None

    def core_elements(self) -> tuple[FrameElement, ...]:
        return tuple(fe for fe in self.frame_elements if fe.coreness == "core")


@dataclass(frozen=True)
class FrameRelation:
    kind: str
    source: str
    target: str


@dataclass(frozen=True)
class LexicalUnit:
    lemma: str
    pos: str
    language: str
    frame: str


class FrameLexicon:
    """Indexed, read-only view over frames, relations and lexical units."""

    def __init__(self, frames=(), relations=(), lexical_units=(), semantic_types=()):
        if isinstance(frames, dict):
            self.frames: dict[str, Frame] = dict(frames)
        else:
            self.frames = {frame.name: frame for frame in frames}
        self.relations: tuple[FrameRelation, ...] = tuple(relations)
        self.lexical_units: tuple[LexicalUnit, ...] = tuple(lexical_units)
        if isinstance(semantic_types, dict):
            self.semantic_types: dict[str, SemanticType] = dict(semantic_types)
        else:
            self.semantic_types = {st.name: st for st in semantic_types}

        self._lu_index: dict[tuple[str, str], list[LexicalUnit]] = {}
        for lu in self.lexical_units:
            key = (normalize_language(lu.language), normalize_lemma(lu.lemma, lu.language))
            self._lu_index.setdefault(key, []).append(lu)
        # child -> direct inheritance parents
        self._parents: dict[str, set[str]] = {}
        for rel in self.relations:
            if rel.kind == "inherits_from":
                self._parents.setdefault(rel.source, set()).add(rel.target)

    def __eq__(self, other):
        if not isinstance(other, FrameLexicon):
            return NotImplemented
        return (
            self.frames == other.frames
            and self.relations == other.relations
            and self.lexical_units == other.lexical_units
            and self.semantic_types == other.semantic_types
        )

    def __repr__(self):
        return (
            f"FrameLexicon(frames={len(self.frames)}, relations={len(self.relations)}, "
            f"lexical_units={len(self.lexical_units)})"
        )


def _require(condition: bool, message: str):
    if not condition:
        raise ParseError(message)


def _parse_frame_element(raw, frame_name: str) -> FrameElement:
    _require(isinstance(raw, dict), f"frame element of {frame_name!r} must be an object")
    name = raw.get("name")
    _require(isinstance(name, str) and name != "", f"frame element of {frame_name!r} needs a name")
    coreness = raw.get("coreness", "core")
    _require(coreness in CORENESS_VALUES, f"FE {frame_name}.{name}: bad coreness {coreness!r}")
    semantic_type = raw.get("semantic_type")
    _require(
        semantic_type is None or isinstance(semantic_type, str),
        f"FE {frame_name}.{name}: semantic_type must be a string",
    )
    excludes = raw.get("excludes", [])
    _require(
        isinstance(excludes, list) and all(isinstance(x, str) for x in excludes),
        f"FE {frame_name}.{name}: excludes must be a list of FE names",
    )
    return FrameElement(name=name, coreness=coreness, semantic_type=semantic_type, excludes=frozenset(excludes))


def load_lexicon(source: str | bytes) -> FrameLexicon:
    """Parse a lexicon file and return a fully validated lexicon.

    Raises ParseError for malformed input and IntegrityError (listing every
    violation) when cross-references do not resolve.
    """
    if isinstance(source, bytes):
        source = source.decode("utf-8")
    try:
        doc = json.loads(source)
    except json.JSONDecodeError as exc:
        raise ParseError(f"not valid lexicon JSON: {exc.msg}", exc.lineno, exc.colno) from exc
    _require(isinstance(doc, dict), "lexicon document must be an object")

    semantic_types = []
    for raw in doc.get("semantic_types", []):
        _require(isinstance(raw, dict) and isinstance(raw.get("name"), str), "semantic type needs a name")
        parent = raw.get("parent")
        _require(parent is None or isinstance(parent, str), f"semantic type {raw['name']!r}: bad parent")
        semantic_types.append(SemanticType(name=raw["name"], parent=parent))

    frames = []
    for raw in doc.get("frames", []):
        _require(isinstance(raw, dict) and isinstance(raw.get("name"), str), "frame needs a name")
        name = raw["name"]
        definition = raw.get("definition", "")
        _require(isinstance(definition, str), f"frame {name!r}: definition must be a string")
        elements = tuple(_parse_frame_element(fe, name) for fe in raw.get("frame_elements", []))
        frames.append(Frame(name=name, definition=definition, frame_elements=elements))
    _require(len({f.name for f in frames}) == len(frames), "frame names must be globally unique")

    relations = []
    for raw in doc.get("relations", []):
        _require(isinstance(raw, dict), "relation must be an object")
        kind, source_name, target_name = raw.get("kind"), raw.get("source"), raw.get("target")
        _require(kind in RELATION_KINDS, f"bad relation kind {kind!r}")
        _require(isinstance(source_name, str) and isinstance(target_name, str), "relation needs source and target")
        relations.append(FrameRelation(kind=kind, source=source_name, target=target_name))

    lexical_units = []
    for raw in doc.get("lexical_units", []):
        _require(isinstance(raw, dict), "lexical unit must be an object")
        lemma, pos, language, frame = (raw.get(k) for k in ("lemma", "pos", "language", "frame"))
        _require(isinstance(lemma, str) and lemma != "", "lexical unit needs a lemma")
        _require(pos in POS_VALUES, f"lexical unit {lemma!r}: bad pos {pos!r}")
        _require(isinstance(language, str) and isinstance(frame, str), f"lexical unit {lemma!r}: needs language and frame")
        lexical_units.append(
            LexicalUnit(lemma=lemma, pos=pos, language=normalize_language(language), frame=frame)
        )

    lexicon = FrameLexicon(
        frames=frames, relations=relations, lexical_units=lexical_units, semantic_types=semantic_types
    )
    problems = errors_in(validate_lexicon(lexicon))
    if problems:
        raise IntegrityError("lexicon failed integrity checks", problems)
    return lexicon


def serialize_lexicon(lexicon: FrameLexicon) -> str:
    """Emit the canonical lexicon file: fixed key order, name-sorted
    collections, UTF-8 text. load_lexicon(serialize_lexicon(x)) == x."""
    doc = {
        "semantic_types": [
            {"name": st.name, **({"parent": st.parent} if st.parent is not None else {})}
            for st in sorted(lexicon.semantic_types.values(), key=lambda st: st.name)
        ],
        "frames": [
            {
                "name": frame.name,
                "definition": frame.definition,
                "frame_elements": [
                    {
                        "name": fe.name,
                        "coreness": fe.coreness,
                        **({"semantic_type": fe.semantic_type} if fe.semantic_type is not None else {}),
                        "excludes": sorted(fe.excludes),
                    }
                    for fe in frame.frame_elements
                ],
            }
            for frame in sorted(lexicon.frames.values(), key=lambda f: f.name)
        ],
        "relations": [
            {"kind": rel.kind, "source": rel.source, "target": rel.target} for rel in lexicon.relations
        ],
        "lexical_units": [
            {"lemma": lu.lemma, "pos": lu.pos, "language": lu.language, "frame": lu.frame}
            for lu in lexicon.lexical_units
        ],
    }
    return json.dumps(doc, ensure_ascii=False, indent=2) + "\n"


def lookup_lus(lexicon: FrameLexicon, language: str, lemma: str, pos: str | None = None) -> list[LexicalUnit]:
    """All lexical units matching (language, lemma) after lemma
    normalization, optionally filtered by pos. Unknown lemmas yield []."""
    key = (normalize_language(language), normalize_lemma(lemma, language))
    hits = lexicon._lu_index.get(key, [])
    if pos is not None:
        hits = [lu for lu in hits if lu.pos == pos]
    return sorted(hits, key=lambda lu: (lu.frame, lu.pos, lu.lemma))


def evoked_frames(lexicon: FrameLexicon, language: str, lemma: str) -> set[str]:
    return {lu.frame for lu in lookup_lus(lexicon, language, lemma)}


def is_descendant(lexicon: FrameLexicon, child: str, ancestor: str) -> bool:
    """True iff inherits_from edges lead from child to ancestor. Reflexive:
    a frame is its own descendant."""
    for name in (child, ancestor):
        if name not in lexicon.frames:
            raise UnknownFrame(name)
    if child == ancestor:
        return True
    seen = {child}
    queue = deque([child])
    while queue:
        for parent in lexicon._parents.get(queue.popleft(), ()):
            if parent == ancestor:
                return True
            if parent not in seen:
                seen.add(parent)
                queue.append(parent)
    return False


def relation_path(
    lexicon: FrameLexicon, source: str, target: str, kinds
) -> list[FrameRelation] | None:
    """Shortest chain of relations (edge count) connecting two frames using
    only the given kinds, traversed in either direction.

    Returns [] when source == target and None when unreachable. Ties are
    broken by expanding neighbors in lexicographic frame-name order.
    """
    for name in (source, target):
        if name not in lexicon.frames:
            raise UnknownFrame(name)
    kinds = set(kinds)
    if not kinds:
        raise ValueError("kinds must be non-empty")
    if source == target:
        return []

    neighbors: dict[str, list[tuple[str, FrameRelation]]] = {}
    for rel in lexicon.relations:
        if rel.kind in kinds:
            neighbors.setdefault(rel.source, []).append((rel.target, rel))
            neighbors.setdefault(rel.target, []).append((rel.source, rel))
    for adjacency in neighbors.values():
        adjacency.sort(key=lambda pair: pair[0])

    came_from: dict[str, tuple[str, FrameRelation]] = {}
    seen = {source}
    queue = deque([source])
    while queue:
        current = queue.popleft()
        for nxt, rel in neighbors.get(current, ()):
            if nxt in seen:
                continue
            seen.add(nxt)
            came_from[nxt] = (current, rel)
            if nxt == target:
                path = []
                node = nxt
                while node != source:
                    node, edge = came_from[node]
                    path.append(edge)
                path.reverse()
                return path
            queue.append(nxt)
    return None


def validate_lexicon(lexicon: FrameLexicon) -> list[Diagnostic]:
    """Check every lexicon invariant; the returned list is empty iff all hold."""
    findings: list[Diagnostic] = []

    def report(code, severity, location, message):
        findings.append(Diagnostic(code, severity, location, message))

    for st in lexicon.semantic_types.values():
        if st.parent is not None and st.parent not in lexicon.semantic_types:
            report("LEX007", ERROR, f"semantic_type {st.name}", f"parent {st.parent!r} is not defined")
    for st in lexicon.semantic_types.values():
        seen, node = {st.name}, st.parent
        while node is not None:
            if node in seen:
                report("LEX007", ERROR, f"semantic_type {st.name}", f"parent chain cycles at {node!r}")
                break
            seen.add(node)
            parent = lexicon.semantic_types.get(node)
            node = parent.parent if parent else None

    for frame in lexicon.frames.values():
        names = [fe.name for fe in frame.frame_elements]
        for name in sorted({n for n in names if names.count(n) > 1}):
            report("LEX008", ERROR, f"frame {frame.name}", f"duplicate frame element {name!r}")
        for fe in frame.frame_elements:
            if fe.name in fe.excludes:
                report("LEX003", ERROR, f"frame {frame.name} / FE {fe.name}", "FE excludes itself")
            for other in sorted(fe.excludes - {fe.name}):
                if other not in names:
                    report(
                        "LEX003", ERROR, f"frame {frame.name} / FE {fe.name}",
                        f"excludes unknown FE {other!r}",
                    )
            if fe.semantic_type is not None and fe.semantic_type not in lexicon.semantic_types:
                report(
                    "LEX005", WARNING, f"frame {frame.name} / FE {fe.name}",
                    f"semantic type {fe.semantic_type!r} is not defined",
                )

    for index, rel in enumerate(lexicon.relations):
        location = f"relation {index} ({rel.source} {rel.kind} {rel.target})"
        if rel.source == rel.target:
            report("LEX006", ERROR, location, "relation source equals target")
        for endpoint in (rel.source, rel.target):
            if endpoint not in lexicon.frames:
                report("LEX001", ERROR, location, f"frame {endpoint!r} is not defined")

    # Inheritance cycles: iterative DFS with three-color marking.
    WHITE, GRAY, BLACK = 0, 1, 2
    color = {name: WHITE for name in lexicon.frames}
    for start in sorted(lexicon.frames):
        if color.get(start) != WHITE:
            continue
        stack = [(start, iter(sorted(lexicon._parents.get(start, ()))))]
        color[start] = GRAY
        while stack:
            node, parents = stack[-1]
            advanced = False
            for parent in parents:
                if parent not in color:
                    continue  # dangling edge, reported as LEX001
                if color[parent] == GRAY:
                    report("LEX002", ERROR, f"frame {parent}", "inheritance cycle detected")
                elif color[parent] == WHITE:
                    color[parent] = GRAY
                    stack.append((parent, iter(sorted(lexicon._parents.get(parent, ())))))
                    advanced = True
                    break
            if not advanced:
                color[node] = BLACK
                stack.pop()

    seen_units: set[tuple[str, str, str, str]] = set()
    for index, lu in enumerate(lexicon.lexical_units):
        location = f"lexical_unit {index} ({lu.lemma}.{lu.pos}, {lu.language})"
        if lu.frame not in lexicon.frames:
            report("LEX001", ERROR, location, f"frame {lu.frame!r} is not defined")
        quad = (lu.lemma, lu.pos, lu.language, lu.frame)
        if quad in seen_units:
            report("LEX004", ERROR, location, "duplicate lexical unit")
        seen_units.add(quad)

    return findings
