"""Tokenizers shared by metric computation, corpus filtering and FIM priming."""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Protocol, runtime_checkable


@runtime_checkable
class TokenizerHandle(Protocol):
    """Anything that can split text into tokens and report their offsets."""

    name: str

    def tokenize(self, text: str) -> list[str]:
        ...

    def token_spans(self, text: str) -> list[tuple[int, int]]:
        ...


class RegexTokenizer:
    """Tokenizer defined by a regular expression, one match per token."""

    def __init__(self, name: str, pattern: str):
        self.name = name
        self._rx = re.compile(pattern)

    def tokenize(self, text: str) -> list[str]:
        return [m.group(0) for m in self._rx.finditer(text)]

    def token_spans(self, text: str) -> list[tuple[int, int]]:
        return [m.span() for m in self._rx.finditer(text)]

    def __repr__(self) -> str:
        return f"RegexTokenizer({self.name!r})"


WHITESPACE = RegexTokenizer("whitespace", r"\S+")
WHITESPACE_PUNCT = RegexTokenizer("whitespace_punct", r"\w+|[^\w\s]")
PER_CHARACTER = RegexTokenizer("per_character", r"\S")

TOKENIZERS: dict[str, RegexTokenizer] = {
    t.name: t for t in (WHITESPACE, WHITESPACE_PUNCT, PER_CHARACTER)
}


def get_tokenizer(name: str) -> RegexTokenizer:
    try:
        return TOKENIZERS[name]
    except KeyError:
        raise KeyError(f"unknown tokenizer {name!r}; known: {sorted(TOKENIZERS)}") from None


# Languages whose script has no word boundaries; they are split per character.
SPACELESS_LANGUAGES = frozenset({"zh"})


@dataclass(frozen=True)
class TokenizedText:
    """Token sequence plus the scheme that produced it.

    Metrics refuse to compare texts tokenized under different schemes, so the
    scheme travels with the tokens.
    """

    tokens: tuple[str, ...]
    scheme: str
    language: str = "und"

    def __len__(self) -> int:
        return len(self.tokens)


def tokenize_for_metrics(text: str, language: str = "und") -> TokenizedText:
    """Split text for n-gram metrics.

    Spaceless scripts are split per character; everything else is case folded
    and split on word/punctuation boundaries.
    """
    if language in SPACELESS_LANGUAGES:
        return TokenizedText(tuple(PER_CHARACTER.tokenize(text)), PER_CHARACTER.name, language)
    tokens = WHITESPACE_PUNCT.tokenize(text.casefold())
    return TokenizedText(tuple(tokens), WHITESPACE_PUNCT.name, language)
