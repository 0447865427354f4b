"""Command-line interface.

Exit codes: 0 success, 1 validation failure, 2 usage error, 3 I/O error.
Machine-readable error lines go to stderr as `error\t<code>\t<message>`.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import analysis
from .diagnostics import errors_in
from .errors import AlignmentError, FrameAlignError, IntegrityError, ParseError
from .workspace import Workspace, resolve_workspace_root

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_USAGE = 2
EXIT_IO = 3


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="framealign",
        description="Frame-semantic annotation and contrastive analysis of aligned multilingual corpora.",
    )
    parser.add_argument(
        "--workspace", "-w", help="workspace root (the FRAMEALIGN_WORKSPACE env var overrides this)"
    )
    commands = parser.add_subparsers(dest="command", required=True)

    init = commands.add_parser("init", help="create an empty workspace")
    init.add_argument("--languages", default=None, help="comma-separated language codes (default AR,EN,FR)")

    ingest = commands.add_parser("ingest", help="turn aligned plaintext into a corpus document")
    ingest.add_argument("--novel", required=True)
    ingest.add_argument("--chapter", required=True)
    ingest.add_argument(
        "--text",
        action="append",
        required=True,
        metavar="LANG=FILE",
        help="per-language plaintext with blank-line paragraph breaks; repeatable",
    )

    commands.add_parser("validate", help="validate lexicon, corpus and annotations")

    propose = commands.add_parser("propose", help="write AUTO annotation proposals for a document")
    propose.add_argument("--document", required=True, help="document key (see `framealign documents`)")
    propose.add_argument("--language", default=None, help="restrict proposals to one language")
    propose.add_argument("--date", default="", help="cDate recorded on proposed sets")

    commands.add_parser("documents", help="list document keys in the workspace")

    analyze = commands.add_parser("analyze", help="compute the cross-language frame-shift report")
    analyze.add_argument("--src", required=True, help="source language code, e.g. EN")
    analyze.add_argument("--tgt", required=True, help="target language code, e.g. AR")
    analyze.add_argument("--format", choices=("csv", "markdown"), default="markdown")
    analyze.add_argument("--out", default=None, help="write the table to this file instead of stdout")
    analyze.add_argument("--figures", default=None, metavar="DIR", help="also render charts into DIR")
    analyze.add_argument("--threshold", type=int, default=None, help="relatedness path-length threshold")

    serve = commands.add_parser("serve", help="start the review HTTP service")
    serve.add_argument("--port", type=int, default=8710)
    serve.add_argument("--bind", default="127.0.0.1")

    return parser


def _fail(stream, code: str, message: str) -> None:
    print(f"error\t{code}\t{message}", file=stream)


def cli_dispatch(argv, stdout=None, stderr=None) -> int:
    stdout = stdout if stdout is not None else sys.stdout
    stderr = stderr if stderr is not None else sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK

    root = resolve_workspace_root(args.workspace)
    try:
        return _run(args, root, stdout, stderr)
    except (ParseError, IntegrityError) as exc:
        _fail(stderr, type(exc).__name__, str(exc))
        return EXIT_VALIDATION
    except AlignmentError as exc:
        _fail(stderr, "AlignmentError", str(exc))
        return EXIT_VALIDATION
    except FrameAlignError as exc:
        _fail(stderr, type(exc).__name__, str(exc))
        return EXIT_IO
    except OSError as exc:
        _fail(stderr, "IOError", str(exc))
        return EXIT_IO


def _run(args, root: Path, stdout, stderr) -> int:
    if args.command == "init":
        languages = args.languages.split(",") if args.languages else None
        Workspace.init(root, languages=languages)
        print(f"initialized workspace at {root}", file=stdout)
        return EXIT_OK

    workspace = Workspace.open(root)

    if args.command == "ingest":
        texts = {}
        for entry in args.text:
            if "=" not in entry:
                _fail(stderr, "Usage", f"--text wants LANG=FILE, got {entry!r}")
                return EXIT_USAGE
            language, _, filename = entry.partition("=")
            texts[language.upper()] = Path(filename).read_text(encoding="utf-8")
        key = workspace.ingest(texts, novel=args.novel, chapter=args.chapter)
        print(f"ingested document {key}", file=stdout)
        return EXIT_OK

    if args.command == "documents":
        for key in workspace.document_keys():
            print(key, file=stdout)
        return EXIT_OK

    if args.command == "validate":
        findings = workspace.validate()
        for diagnostic in findings:
            print(
                f"{diagnostic.severity}\t{diagnostic.code}\t{diagnostic.location}\t{diagnostic.message}",
                file=stdout,
            )
        errors = errors_in(findings)
        warnings = len(findings) - len(errors)
        print(f"{len(errors)} errors, {warnings} warnings", file=stdout)
        # any finding fails the gate: a clean workspace has neither
        return EXIT_VALIDATION if findings else EXIT_OK

    if args.command == "propose":
        created = workspace.propose_document(args.document, language=args.language, created_date=args.date)
        print(f"proposed {len(created)} annotation sets", file=stdout)
        return EXIT_OK

    if args.command == "analyze":
        report, diagnostics = workspace.analyze(args.src, args.tgt, threshold=args.threshold)
        for diagnostic in diagnostics:
            print(f"{diagnostic.severity}\t{diagnostic.code}\t{diagnostic.location}\t{diagnostic.message}", file=stderr)
        rendered = analysis.export_table(report, args.format)
        if args.out:
            Path(args.out).write_text(rendered, encoding="utf-8")
            print(f"wrote {args.out}", file=stdout)
        else:
            stdout.write(rendered)
        if args.figures:
            from .figures import render_report_figures

            for path in render_report_figures(report, args.figures):
                print(f"wrote {path}", file=stdout)
        return EXIT_OK

    if args.command == "serve":
        from .server import serve

        serve(workspace, host=args.bind, port=args.port, stdout=stdout)
        return EXIT_OK

    _fail(stderr, "Usage", f"unknown command {args.command!r}")
    return EXIT_USAGE


def main() -> None:
    sys.exit(cli_dispatch(sys.argv[1:]))


if __name__ == "__main__":
    main()
