"""Core corpus types: harvested files, comment spans and samples."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping


@dataclass(frozen=True)
class SourceFile:
    """One harvested source file.

    ``language`` is the natural-language tag the file was harvested for,
    ``pl`` the programming language, ``origin`` a free-form provenance string
    (for example ``repo:path``).
    """

    id: str
    language: str
    pl: str
    content: str
    origin: str = ""


@dataclass(frozen=True)
class CommentSpan:
    """Location of one comment body inside a file's text.

    Offsets delimit the body only: delimiters and the whitespace around the
    body stay outside, so splitting the file at the span reassembles it
    exactly.  ``kind`` is ``line`` or ``block``.
    """

    byte_start: int
    byte_end: int
    text: str
    kind: str

    def __post_init__(self) -> None:
        if not 0 <= self.byte_start < self.byte_end:
            raise ValueError(f"invalid span [{self.byte_start}, {self.byte_end})")
        if self.kind not in ("line", "block"):
            raise ValueError(f"kind must be 'line' or 'block', got {self.kind!r}")
        if not self.text:
            raise ValueError("empty comment body")


@dataclass(frozen=True)
class CommentSample:
    """One evaluation unit: a file split around a single comment.

    ``prefix + ground_truth + suffix`` reconstructs the file text.
    ``predictions`` maps a model key to its generated comment; ``label`` is
    the ordinal grade wire name when annotated, ``error_codes`` the annotated
    taxonomy codes.
    """

    id: str
    language: str
    pl: str
    prefix: str
    suffix: str
    ground_truth: str
    predictions: Mapping[str, str] = field(default_factory=dict)
    label: str | None = None
    error_codes: tuple[str, ...] | None = None
    origin: str = ""

    def __post_init__(self) -> None:
        if not self.ground_truth:
            raise ValueError("ground_truth must be non-empty")

    @property
    def content(self) -> str:
        return self.prefix + self.ground_truth + self.suffix

    @property
    def span(self) -> tuple[int, int]:
        start = len(self.prefix)
        return (start, start + len(self.ground_truth))


def sample_from_span(source: SourceFile, span: CommentSpan, index: int) -> CommentSample:
    """Split a file around one extracted span; ids are ``file_id:index``."""
    if source.content[span.byte_start : span.byte_end] != span.text:
        raise ValueError("span does not match file content")
    return CommentSample(
        id=f"{source.id}:{index}",
        language=source.language,
        pl=source.pl,
        prefix=source.content[: span.byte_start],
        suffix=source.content[span.byte_end :],
        ground_truth=span.text,
        origin=source.origin,
    )
