"""Review HTTP service over a workspace.

JSON resources mirror the domain types field for field. Every write is
persisted (write-then-rename) before the response goes out, so an
acknowledged change survives a crash. Reads are lock-free; writes are
serialized through per-document locks.
"""

from __future__ import annotations

import json
import re
import threading
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from urllib.parse import parse_qs, urlparse

from .annotations import (
    AnnotationSet,
    Layer,
    SpanLabel,
    TokenLabel,
    SDL_LAYER,
    transition_status,
    set_null_instantiation,
    validate_annotation,
)
from .diagnostics import errors_in
from .errors import AlreadyRealized, FrameAlignError, IllegalTransition, UnknownFrame
from .workspace import Workspace

RTL_LANGUAGES = {"AR", "FA", "HE", "UR"}


def direction_for(language: str) -> str:
    return "rtl" if language.upper() in RTL_LANGUAGES else "ltr"


# ------------------------------------------------------------ JSON views


def span_label_json(label: SpanLabel) -> dict:
    return {
        "name": label.name,
        "start": label.start,
        "end": label.end,
        "fe_id": label.fe_id,
        "created_by": label.created_by,
        "itype": label.itype,
    }


def token_label_json(token: TokenLabel) -> dict:
    return {
        "token_id": token.token_id,
        "head_id": token.head_id,
        "label": token.label,
        "pos": token.pos,
        "lemma": token.lemma,
        "form": token.form,
        "morph": token.morph,
    }


def layer_json(layer: Layer) -> dict:
    if layer.name == SDL_LAYER:
        labels = [token_label_json(t) for t in layer.labels]
    else:
        labels = [span_label_json(l) for l in layer.labels]
    return {"name": layer.name, "rank": layer.rank, "labels": labels}


def annotation_set_json(annotation_set: AnnotationSet) -> dict:
    return {
        "id": annotation_set.id,
        "sentence_id": annotation_set.sentence_id,
        "frame": annotation_set.frame,
        "status": annotation_set.status,
        "created_date": annotation_set.created_date,
        "layers": [layer_json(layer) for layer in annotation_set.layers],
    }


def diagnostic_json(diagnostic) -> dict:
    return {
        "code": diagnostic.code,
        "severity": diagnostic.severity,
        "location": diagnostic.location,
        "message": diagnostic.message,
    }


def span_label_from_json(raw: dict) -> SpanLabel:
    return SpanLabel(
        name=raw.get("name", ""),
        start=raw.get("start"),
        end=raw.get("end"),
        fe_id=raw.get("fe_id"),
        created_by=raw.get("created_by"),
        itype=raw.get("itype"),
    )


# ------------------------------------------------------------ service


class ReviewService:
    """The operations behind the HTTP resources; also used directly by tests
    so the CLI/HTTP code paths stay identical."""

    def __init__(self, workspace: Workspace):
        self.workspace = workspace
        self._locks: dict[str, threading.Lock] = {}
        self._locks_guard = threading.Lock()

    def _lock_for(self, key: str) -> threading.Lock:
        with self._locks_guard:
            return self._locks.setdefault(key, threading.Lock())

    # ---- reads

    def list_documents(self):
        documents = []
        for key in self.workspace.document_keys():
            document = self.workspace.load_document(key)
            documents.append(
                {
                    "key": key,
                    "novel": document.novel,
                    "chapter": document.chapter,
                    "paragraphs": len(document.paragraphs),
                }
            )
        return 200, {"documents": documents}

    def get_document(self, key: str):
        if key not in self.workspace.document_keys():
            return 404, {"error": f"unknown document {key!r}"}
        document = self.workspace.load_document(key)
        return 200, {
            "key": key,
            "novel": document.novel,
            "chapter": document.chapter,
            "paragraphs": [paragraph.pid for paragraph in document.paragraphs],
        }

    def get_paragraph(self, key: str, pid: str):
        if key not in self.workspace.document_keys():
            return 404, {"error": f"unknown document {key!r}"}
        document = self.workspace.load_document(key)
        paragraph = next((p for p in document.paragraphs if p.pid == pid), None)
        if paragraph is None:
            return 404, {"error": f"unknown paragraph {pid!r}"}
        sets = self.workspace.load_annotations(key)
        sentences = []
        for version in paragraph.versions:
            sentences.append(
                {
                    "id": version.id,
                    "language": version.language,
                    "direction": direction_for(version.language),
                    "text": version.text,
                    "annotation_sets": [
                        annotation_set_json(s) for s in sets if s.sentence_id == version.id
                    ],
                }
            )
        return 200, {"pid": paragraph.pid, "sentences": sentences}

    def get_set(self, set_id: int):
        located = self._locate(set_id)
        if located is None:
            return 404, {"error": f"unknown annotation set {set_id}"}
        _, _, annotation_set = located
        return 200, annotation_set_json(annotation_set)

    def get_analysis(self, src: str, tgt: str, threshold: int | None = None):
        try:
            report, diagnostics = self.workspace.analyze(src, tgt, threshold=threshold)
        except UnknownFrame as exc:
            return 422, {"error": str(exc)}
        parallelism = None
        if report.parallelism is not None:
            parallelism = {
                "numerator": report.parallelism.numerator,
                "denominator": report.parallelism.denominator,
                "percentage": report.percentage,
            }
        return 200, {
            "src": src,
            "tgt": tgt,
            "total": report.table.total,
            "same_frame": report.same_frame,
            "related_shift": report.related_shift,
            "unrelated_shift": report.unrelated_shift,
            "parallelism": parallelism,
            "rows": [
                {
                    "source_frame": row.source_frame,
                    "target_frame": row.target_frame,
                    "count": row.count,
                    "example_lemmas": list(row.example_lemmas),
                }
                for row in report.table.rows
            ],
            "diagnostics": [diagnostic_json(d) for d in diagnostics],
        }

    # ---- writes

    def _locate(self, set_id: int):
        for key in self.workspace.document_keys():
            for index, annotation_set in enumerate(self.workspace.load_annotations(key)):
                if annotation_set.id == set_id:
                    return key, index, annotation_set
        return None

    def _replace_set(self, key: str, set_id: int, updated: AnnotationSet):
        sets = self.workspace.load_annotations(key)
        sets = [updated if s.id == set_id else s for s in sets]
        self.workspace.save_annotations(key, sets)

    def transition(self, set_id: int, action: str):
        located = self._locate(set_id)
        if located is None:
            return 404, {"error": f"unknown annotation set {set_id}"}
        key, _, annotation_set = located
        with self._lock_for(key):
            try:
                updated = transition_status(annotation_set, action)
            except IllegalTransition as exc:
                return 409, {"error": str(exc), "status": annotation_set.status}
            self._replace_set(key, set_id, updated)
        return 200, annotation_set_json(updated)

    def mark_null_instantiation(self, set_id: int, fe_name: str, itype: str):
        located = self._locate(set_id)
        if located is None:
            return 404, {"error": f"unknown annotation set {set_id}"}
        key, _, annotation_set = located
        with self._lock_for(key):
            try:
                updated = set_null_instantiation(annotation_set, fe_name, itype)
            except AlreadyRealized as exc:
                return 409, {"error": str(exc)}
            except ValueError as exc:
                return 422, {"error": str(exc)}
            self._replace_set(key, set_id, updated)
        return 200, annotation_set_json(updated)

    def put_layers(self, set_id: int, layers: dict):
        located = self._locate(set_id)
        if located is None:
            return 404, {"error": f"unknown annotation set {set_id}"}
        key, _, annotation_set = located
        with self._lock_for(key):
            try:
                updated = transition_status(annotation_set, "edit")
            except IllegalTransition as exc:
                return 409, {"error": str(exc), "status": annotation_set.status}
            new_layers = []
            replaced = set()
            for layer in updated.layers:
                if layer.name in layers and layer.rank == 1:
                    new_layers.append(
                        Layer(layer.name, 1, tuple(span_label_from_json(raw) for raw in layers[layer.name]))
                    )
                    replaced.add(layer.name)
                else:
                    new_layers.append(layer)
            for name in layers:
                if name not in replaced:
                    new_layers.append(Layer(name, 1, tuple(span_label_from_json(raw) for raw in layers[name])))
            updated = AnnotationSet(
                id=updated.id,
                sentence_id=updated.sentence_id,
                frame=updated.frame,
                status=updated.status,
                created_date=updated.created_date,
                layers=tuple(new_layers),
            )
            located_sentence = self.workspace.find_sentence(updated.sentence_id)
            if located_sentence is not None:
                _, _, version = located_sentence
                lexicon = self.workspace.load_lexicon()
                problems = errors_in(validate_annotation(updated, version.text, lexicon))
                if problems:
                    return 422, {"error": "validation failed", "diagnostics": [diagnostic_json(d) for d in problems]}
            self._replace_set(key, set_id, updated)
        return 200, annotation_set_json(updated)

    def propose_for_sentence(self, sentence_id: int, created_date: str = ""):
        located = self.workspace.find_sentence(sentence_id)
        if located is None:
            return 404, {"error": f"unknown sentence {sentence_id}"}
        key, _, version = located
        with self._lock_for(key):
            created = self.workspace.propose_for_sentence(version, key, created_date)
        return 200, {"created": [annotation_set_json(s) for s in created]}


# ------------------------------------------------------------ HTTP plumbing

_GET_ROUTES = [
    (re.compile(r"^/documents$"), lambda service, m, q: service.list_documents()),
    (re.compile(r"^/documents/([^/]+)$"), lambda service, m, q: service.get_document(m.group(1))),
    (
        re.compile(r"^/documents/([^/]+)/paragraphs/([^/]+)$"),
        lambda service, m, q: service.get_paragraph(m.group(1), m.group(2)),
    ),
    (re.compile(r"^/sets/(\d+)$"), lambda service, m, q: service.get_set(int(m.group(1)))),
    (
        re.compile(r"^/analysis$"),
        lambda service, m, q: service.get_analysis(
            q.get("src", [""])[0],
            q.get("tgt", [""])[0],
            int(q["threshold"][0]) if "threshold" in q else None,
        ),
    ),
]

_POST_ROUTES = [
    (
        re.compile(r"^/sets/(\d+)/(approve|reject|edit)$"),
        lambda service, m, body: service.transition(int(m.group(1)), m.group(2)),
    ),
    (
        re.compile(r"^/sets/(\d+)/null_instantiation$"),
        lambda service, m, body: service.mark_null_instantiation(
            int(m.group(1)), body.get("fe_name", ""), body.get("itype", "")
        ),
    ),
    (
        re.compile(r"^/sentences/(\d+)/propose$"),
        lambda service, m, body: service.propose_for_sentence(int(m.group(1)), body.get("date", "")),
    ),
]

_PUT_ROUTES = [
    (
        re.compile(r"^/sets/(\d+)/layers$"),
        lambda service, m, body: service.put_layers(int(m.group(1)), body.get("layers", body)),
    ),
]


class _Handler(BaseHTTPRequestHandler):
    service: ReviewService  # set by make_server

    def log_message(self, format, *args):  # quiet by default
        pass

    def _reply(self, status: int, payload: dict):
        data = json.dumps(payload, ensure_ascii=False).encode("utf-8")
        self.send_response(status)
        self.send_header("Content-Type", "application/json; charset=utf-8")
        self.send_header("Content-Length", str(len(data)))
        self.send_header("Access-Control-Allow-Origin", "*")
        self.end_headers()
        self.wfile.write(data)

    def _body(self) -> dict:
        length = int(self.headers.get("Content-Length") or 0)
        if length == 0:
            return {}
        try:
            return json.loads(self.rfile.read(length).decode("utf-8"))
        except json.JSONDecodeError:
            return {}

    def _dispatch(self, routes, body=None):
        parsed = urlparse(self.path)
        query = parse_qs(parsed.query)
        for pattern, handler in routes:
            match = pattern.match(parsed.path)
            if match:
                try:
                    argument = body if body is not None else query
                    status, payload = handler(self.service, match, argument)
                except FrameAlignError as exc:
                    status, payload = 422, {"error": str(exc)}
                self._reply(status, payload)
                return
        self._reply(404, {"error": f"no such resource {parsed.path!r}"})

    def do_GET(self):
        self._dispatch(_GET_ROUTES)

    def do_POST(self):
        self._dispatch(_POST_ROUTES, body=self._body())

    def do_PUT(self):
        self._dispatch(_PUT_ROUTES, body=self._body())

    def do_OPTIONS(self):
        self.send_response(204)
        self.send_header("Access-Control-Allow-Origin", "*")
        self.send_header("Access-Control-Allow-Methods", "GET, POST, PUT, OPTIONS")
        self.send_header("Access-Control-Allow-Headers", "Content-Type")
        self.end_headers()


def make_server(workspace: Workspace, host: str = "127.0.0.1", port: int = 0) -> ThreadingHTTPServer:
    service = ReviewService(workspace)
    handler = type("BoundHandler", (_Handler,), {"service": service})
    return ThreadingHTTPServer((host, port), handler)


def serve(workspace: Workspace, host: str = "127.0.0.1", port: int = 8710, stdout=None):
    server = make_server(workspace, host, port)
    if stdout is not None:
        print(f"serving workspace {workspace.root} on http://{host}:{server.server_address[1]}/", file=stdout)
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        server.server_close()
