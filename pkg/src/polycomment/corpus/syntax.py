"""Comment and string syntax per programming language, from a bundled table."""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Mapping


class UnknownProgrammingLanguageError(KeyError):
    """The syntax table has no entry for the requested language."""


@dataclass(frozen=True)
class StringDelimiter:
    delimiter: str
    backslash_escapes: bool


@dataclass(frozen=True)
class CommentSyntax:
    """Markers for one programming language.

    String delimiters are tracked so comment markers inside string literals
    are not mistaken for comments.
    """

    pl: str
    extensions: tuple[str, ...]
    line_markers: tuple[str, ...]
    block_markers: tuple[tuple[str, str], ...]
    strings: tuple[StringDelimiter, ...]


class SyntaxTable:
    def __init__(self, entries: Mapping[str, CommentSyntax]):
        self._entries = dict(entries)
        self._by_extension = {
            ext: syntax for syntax in self._entries.values() for ext in syntax.extensions
        }

    def languages(self) -> tuple[str, ...]:
        return tuple(sorted(self._entries))

    def for_pl(self, pl: str) -> CommentSyntax:
        try:
            return self._entries[pl]
        except KeyError:
            raise UnknownProgrammingLanguageError(
                f"no syntax entry for {pl!r}; known: {self.languages()}"
            ) from None

    def for_extension(self, ext: str) -> CommentSyntax | None:
        return self._by_extension.get(ext.lower())


def _parse_entry(pl: str, obj: Mapping) -> CommentSyntax:
    strings = tuple(
        StringDelimiter(delimiter=d, backslash_escapes=bool(esc)) for d, esc in obj["strings"]
    )
    # longest-first so triple quotes win over single quotes during scanning
    strings = tuple(sorted(strings, key=lambda s: -len(s.delimiter)))
    return CommentSyntax(
        pl=pl,
        extensions=tuple(obj["extensions"]),
        line_markers=tuple(obj["line"]),
        block_markers=tuple((o, c) for o, c in obj["block"]),
        strings=strings,
    )


def load_syntax_table(path: "str | Path | None" = None) -> SyntaxTable:
    """Load the bundled table, or a custom JSON file with the same shape."""
    if path is None:
        data = json.loads(
            resources.files("polycomment.corpus").joinpath("data/comment_syntax.json").read_text()
        )
    else:
        data = json.loads(Path(path).read_text())
    return SyntaxTable({pl: _parse_entry(pl, obj) for pl, obj in data.items()})
