"""Exception types shared across the toolkit."""

from __future__ import annotations


class FrameAlignError(Exception):
    """Base class for all toolkit errors."""


class ParseError(FrameAlignError):
    """A source document is syntactically malformed."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        if line is not None:
            where = f"line {line}" if column is None else f"line {line}, column {column}"
            message = f"{message} ({where})"
        super().__init__(message)
        self.line = line
        self.column = column


class IntegrityError(FrameAlignError):
    """A document parsed but violates structural invariants.

    Carries every violation found, not just the first.
    """

    def __init__(self, message: str, diagnostics=()):
        self.diagnostics = list(diagnostics)
        if self.diagnostics:
            details = "; ".join(f"{d.code}: {d.message}" for d in self.diagnostics)
            message = f"{message}: {details}"
        super().__init__(message)


class AlignmentError(FrameAlignError):
    """Per-language paragraph counts disagree during ingestion."""

    def __init__(self, counts: dict[str, int]):
        self.counts = dict(counts)
        listing = ", ".join(f"{lang}={n}" for lang, n in sorted(self.counts.items()))
        super().__init__(f"paragraph counts differ across languages: {listing}")


class UnknownFrame(FrameAlignError):
    """A frame name does not resolve in the lexicon."""

    def __init__(self, name: str):
        super().__init__(f"unknown frame: {name!r}")
        self.name = name


class IllegalTransition(FrameAlignError):
    """The annotation status machine forbids the requested action."""

    def __init__(self, status: str, action: str):
        super().__init__(f"action {action!r} is not allowed from status {status!r}")
        self.status = status
        self.action = action


class AlreadyRealized(FrameAlignError):
    """A frame element cannot be null-instantiated: it already carries a label."""


class DuplicateLayer(FrameAlignError):
    """A layer with the same (name, rank) is already attached."""


class SpanOutOfBounds(FrameAlignError):
    """A span does not fit in the sentence it annotates."""
