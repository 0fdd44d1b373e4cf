"""Types for context-aware neural scoring."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Protocol, Sequence

import numpy as np


class ContextSetting(str, enum.Enum):
    NO_CONTEXT = "no_context"
    MINIMAL_CONTEXT = "minimal_context"
    FULL_CONTEXT = "full_context"


@dataclass(frozen=True)
class TokenSpan:
    """Half-open token index range [start, end)."""

    start: int
    end: int

    def __post_init__(self) -> None:
        if self.start < 0 or self.end <= self.start:
            raise ValueError(f"span must be non-empty and non-negative, got [{self.start}, {self.end})")

    def __len__(self) -> int:
        return self.end - self.start

    def as_slice(self) -> slice:
        return slice(self.start, self.end)


@dataclass(frozen=True)
class BackendInfo:
    backend_id: str
    model_name: str
    context_window: int
    vocab_size: int


@dataclass(frozen=True)
class ScoringInput:
    """One rendered text plus the token span covering the comment."""

    text: str
    span: TokenSpan
    setting: ContextSetting
    token_count: int

    def __post_init__(self) -> None:
        if self.span.end > self.token_count:
            raise ValueError(
                f"span [{self.span.start}, {self.span.end}) exceeds "
                f"token count {self.token_count}"
            )


class EmbeddingMatrix:
    """Per-token embedding vectors, one row per token."""

    def __init__(self, vectors: "np.ndarray | Sequence[Sequence[float]]"):
        arr = np.asarray(vectors, dtype=float)
        if arr.ndim != 2 or arr.shape[0] == 0 or arr.shape[1] == 0:
            raise ValueError(f"expected a non-empty 2-D matrix, got shape {arr.shape}")
        if not np.isfinite(arr).all():
            raise ValueError("embedding vectors must be finite")
        self.vectors = arr

    @property
    def token_count(self) -> int:
        return int(self.vectors.shape[0])

    @property
    def dimension(self) -> int:
        return int(self.vectors.shape[1])


class LikelihoodTrace:
    """Per-token log-probabilities with the span that is actually scored."""

    def __init__(self, logprobs: Sequence[float], span: TokenSpan):
        values = tuple(float(x) for x in logprobs)
        if not values:
            raise ValueError("empty trace")
        for v in values:
            if not math.isfinite(v) or v > 0.0:
                raise ValueError(f"log-probabilities must be finite and <= 0, got {v}")
        if span.end > len(values):
            raise ValueError(f"span end {span.end} exceeds trace length {len(values)}")
        self.logprobs = values
        self.span = span


class BackendError(Exception):
    """The backend rejected a request for a non-transport reason."""


class ContextOverflowError(BackendError):
    """The rendered input does not fit the backend's context window."""

    def __init__(self, limit: int, needed: int | None = None):
        detail = f"context_overflow: limit {limit}"
        if needed is not None:
            detail += f", needed {needed}"
        super().__init__(detail)
        self.limit = limit
        self.needed = needed


class ScorerBackend(Protocol):
    """Wire-protocol shape of a scoring backend."""

    def info(self) -> BackendInfo:
        ...

    def tokenize(self, text: str) -> list[str]:
        ...

    def embed(self, text: str, span: TokenSpan) -> EmbeddingMatrix:
        ...

    def loglik(self, source: str, target: str, target_span: TokenSpan) -> list[float]:
        ...
