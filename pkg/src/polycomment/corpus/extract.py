"""Comment extraction: a small scanner that respects string literals."""

from __future__ import annotations

from .syntax import CommentSyntax, SyntaxTable
from .types import CommentSample, CommentSpan, SourceFile, sample_from_span


class UnterminatedCommentError(ValueError):
    """A block comment is opened but never closed."""

    def __init__(self, position: int, marker: str):
        super().__init__(f"block comment opened at offset {position} ({marker!r}) never closes")
        self.position = position
        self.marker = marker


def _skip_string(content: str, i: int, delimiter: str, escapes: bool) -> int:
    """Return the index just past the string opened at i.

    Unterminated strings run to end of file; harvested files are not always
    well formed and that should not abort extraction.
    """
    j = i + len(delimiter)
    while j < len(content):
        if escapes and content[j] == "\\":
            j += 2
            continue
        if content.startswith(delimiter, j):
            return j + len(delimiter)
        j += 1
    return len(content)


def _trimmed(content: str, start: int, end: int, kind: str) -> CommentSpan | None:
    while start < end and content[start].isspace():
        start += 1
    while end > start and content[end - 1].isspace():
        end -= 1
    if start >= end:
        return None
    return CommentSpan(byte_start=start, byte_end=end, text=content[start:end], kind=kind)


def scan_comments(content: str, syntax: CommentSyntax) -> list[CommentSpan]:
    """All comment bodies in order of appearance.

    Spans cover the trimmed body only; adjacent line comments stay separate
    spans.  Comment markers inside string literals are ignored.
    """
    spans: list[CommentSpan] = []
    line_markers = sorted(syntax.line_markers, key=len, reverse=True)
    i = 0
    n = len(content)
    while i < n:
        string = next(
            (s for s in syntax.strings if content.startswith(s.delimiter, i)), None
        )
        if string is not None:
            i = _skip_string(content, i, string.delimiter, string.backslash_escapes)
            continue
        block = next(
            (pair for pair in syntax.block_markers if content.startswith(pair[0], i)), None
        )
        if block is not None:
            opener, closer = block
            close_at = content.find(closer, i + len(opener))
            if close_at < 0:
                raise UnterminatedCommentError(i, opener)
            span = _trimmed(content, i + len(opener), close_at, "block")
            if span is not None:
                spans.append(span)
            i = close_at + len(closer)
            continue
        marker = next((m for m in line_markers if content.startswith(m, i)), None)
        if marker is not None:
            line_end = content.find("\n", i)
            if line_end < 0:
                line_end = n
            span = _trimmed(content, i + len(marker), line_end, "line")
            if span is not None:
                spans.append(span)
            i = line_end
            continue
        i += 1
    return spans


def extract_comments(source: SourceFile, table: SyntaxTable) -> list[CommentSpan]:
    """Comment spans of one harvested file, using its pl's syntax entry."""
    return scan_comments(source.content, table.for_pl(source.pl))


def samples_from_file(source: SourceFile, table: SyntaxTable) -> list[CommentSample]:
    """One sample per extracted comment, ids ``file_id:k`` in file order."""
    return [
        sample_from_span(source, span, k)
        for k, span in enumerate(extract_comments(source, table))
    ]
