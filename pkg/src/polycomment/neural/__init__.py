"""Context-aware neural scoring against a backend speaking the wire protocol."""

from .backend import HttpScorerBackend
from .scoring import (
    DEFAULT_LANGUAGE_PREFIXES,
    DIRECTIONS,
    EmbeddingScore,
    EmptySpanError,
    ScoreRequest,
    build_scoring_input,
    embedding_score,
    likelihood_score,
    render_context,
    score_pair,
)
from .types import (
    BackendError,
    BackendInfo,
    ContextOverflowError,
    ContextSetting,
    EmbeddingMatrix,
    LikelihoodTrace,
    ScorerBackend,
    ScoringInput,
    TokenSpan,
)

__all__ = [
    "BackendError",
    "BackendInfo",
    "ContextOverflowError",
    "ContextSetting",
    "DEFAULT_LANGUAGE_PREFIXES",
    "DIRECTIONS",
    "EmbeddingMatrix",
    "EmbeddingScore",
    "EmptySpanError",
    "HttpScorerBackend",
    "LikelihoodTrace",
    "ScoreRequest",
    "ScorerBackend",
    "ScoringInput",
    "TokenSpan",
    "build_scoring_input",
    "embedding_score",
    "likelihood_score",
    "render_context",
    "score_pair",
]
