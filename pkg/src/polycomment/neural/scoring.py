"""Span-masked embedding and likelihood scores.

Both scores read only the token positions inside the comment span; the
context shapes the representations upstream but its positions never enter
the arithmetic here.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Mapping, NamedTuple

import numpy as np

from ..records import MetricScore
from .types import (
    BackendError,
    ContextOverflowError,
    ContextSetting,
    EmbeddingMatrix,
    LikelihoodTrace,
    ScorerBackend,
    ScoringInput,
    TokenSpan,
)

# Fixed per-language lead-in used by the minimal context setting; it tells
# the scorer which language the comment is in without showing any code.
DEFAULT_LANGUAGE_PREFIXES: Mapping[str, str] = {
    "en": "English code comment: ",
    "nl": "Nederlandse codecommentaar: ",
    "el": "Σχόλιο κώδικα στα ελληνικά: ",
    "pl": "Polski komentarz do kodu: ",
    "zh": "中文代码注释：",
}
FALLBACK_LANGUAGE_PREFIX = "Code comment: "

DIRECTIONS = (
    "candidate_given_reference",
    "reference_given_candidate",
    "bidirectional",
)


class EmptySpanError(ValueError):
    """The comment tokenizes to nothing, so there is no span to score."""


def render_context(
    prefix: str,
    suffix: str,
    setting: ContextSetting,
    language: str = "und",
    language_prefixes: Mapping[str, str] | None = None,
) -> tuple[str, str]:
    """(context_before, context_after) around the comment for a setting."""
    setting = ContextSetting(setting)
    if setting is ContextSetting.NO_CONTEXT:
        return "", ""
    if setting is ContextSetting.MINIMAL_CONTEXT:
        table = DEFAULT_LANGUAGE_PREFIXES if language_prefixes is None else language_prefixes
        return table.get(language, FALLBACK_LANGUAGE_PREFIX), ""
    return prefix, suffix


def build_scoring_input(
    prefix: str,
    suffix: str,
    comment: str,
    setting: ContextSetting,
    tokenize: Callable[[str], list[str]],
    language: str = "und",
    language_prefixes: Mapping[str, str] | None = None,
    context_window: int | None = None,
) -> ScoringInput:
    """Render the comment in its context and locate its token span.

    The span start is the token count of the leading context, its length the
    comment's own token count; this assumes the tokenizer splits the
    concatenation the same way as the parts (true for the shipped
    whitespace-family tokenizers).
    """
    before, after = render_context(prefix, suffix, setting, language, language_prefixes)
    comment_tokens = len(tokenize(comment))
    if comment_tokens == 0:
        raise EmptySpanError("comment has no tokens to score")
    start = len(tokenize(before))
    text = before + comment + after
    total = len(tokenize(text))
    if context_window is not None and total > context_window:
        raise ContextOverflowError(limit=context_window, needed=total)
    return ScoringInput(
        text=text,
        span=TokenSpan(start, start + comment_tokens),
        setting=ContextSetting(setting),
        token_count=total,
    )


class EmbeddingScore(NamedTuple):
    precision: float
    recall: float
    f1: float


def _normalize_rows(matrix: np.ndarray) -> np.ndarray:
    norms = np.linalg.norm(matrix, axis=1, keepdims=True)
    safe = np.where(norms > 0.0, norms, 1.0)
    return matrix / safe


def embedding_score(
    candidate: EmbeddingMatrix,
    candidate_span: TokenSpan,
    reference: EmbeddingMatrix,
    reference_span: TokenSpan,
) -> EmbeddingScore:
    """Greedy cosine matching between the two comment spans.

    Precision averages each candidate token's best match in the reference,
    recall the reverse; zero vectors contribute zero similarity.
    """
    if candidate.dimension != reference.dimension:
        raise ValueError(
            f"dimension mismatch: {candidate.dimension} vs {reference.dimension}"
        )
    if candidate_span.end > candidate.token_count:
        raise ValueError("candidate span exceeds matrix")
    if reference_span.end > reference.token_count:
        raise ValueError("reference span exceeds matrix")
    cand = _normalize_rows(candidate.vectors[candidate_span.as_slice()])
    ref = _normalize_rows(reference.vectors[reference_span.as_slice()])
    similarity = cand @ ref.T
    precision = float(similarity.max(axis=1).mean())
    recall = float(similarity.max(axis=0).mean())
    if precision + recall == 0.0:
        return EmbeddingScore(precision, recall, 0.0)
    return EmbeddingScore(precision, recall, 2 * precision * recall / (precision + recall))


def likelihood_score(trace: LikelihoodTrace) -> float:
    """Mean log-probability over the trace's span, and only the span."""
    window = trace.logprobs[trace.span.start : trace.span.end]
    return sum(window) / len(window)


@dataclass(frozen=True)
class ScoreRequest:
    """Everything needed to score one prediction against its ground truth."""

    sample_id: str
    prediction_key: str
    language: str
    prefix: str
    suffix: str
    prediction: str
    ground_truth: str


def score_pair(
    request: ScoreRequest,
    backend: ScorerBackend,
    setting: ContextSetting = ContextSetting.FULL_CONTEXT,
    mode: str = "embedding",
    direction: str = "candidate_given_reference",
    language_prefixes: Mapping[str, str] | None = None,
) -> MetricScore:
    """Score one (prediction, ground truth) pair; unscorable pairs come back
    as records with a reason instead of raising."""
    if mode not in ("embedding", "likelihood"):
        raise ValueError(f"unknown mode {mode!r}")
    if direction not in DIRECTIONS:
        raise ValueError(f"unknown direction {direction!r}")
    info = backend.info()
    params: dict = {
        "setting": ContextSetting(setting).value,
        "mode": mode,
        "backend_id": info.backend_id,
        "model_name": info.model_name,
    }

    def build(comment: str) -> ScoringInput:
        return build_scoring_input(
            prefix=request.prefix,
            suffix=request.suffix,
            comment=comment,
            setting=setting,
            tokenize=backend.tokenize,
            language=request.language,
            language_prefixes=language_prefixes,
            context_window=info.context_window,
        )

    try:
        cand_input = build(request.prediction)
        ref_input = build(request.ground_truth)
        if mode == "embedding":
            cand_matrix = backend.embed(cand_input.text, cand_input.span)
            ref_matrix = backend.embed(ref_input.text, ref_input.span)
            score = embedding_score(cand_matrix, cand_input.span, ref_matrix, ref_input.span)
            params.update(
                precision=score.precision,
                recall=score.recall,
                dimension=cand_matrix.dimension,
            )
            value = score.f1
        else:
            params["direction"] = direction
            values: list[float] = []
            if direction in ("candidate_given_reference", "bidirectional"):
                logprobs = backend.loglik(ref_input.text, cand_input.text, cand_input.span)
                trace = LikelihoodTrace(logprobs, TokenSpan(0, len(logprobs)))
                values.append(likelihood_score(trace))
            if direction in ("reference_given_candidate", "bidirectional"):
                logprobs = backend.loglik(cand_input.text, ref_input.text, ref_input.span)
                trace = LikelihoodTrace(logprobs, TokenSpan(0, len(logprobs)))
                values.append(likelihood_score(trace))
            value = sum(values) / len(values)
    except ContextOverflowError as exc:
        return MetricScore(
            sample_id=request.sample_id,
            prediction_key=request.prediction_key,
            metric=mode,
            value=None,
            params=params,
            reason=str(exc),
        )
    except EmptySpanError:
        return MetricScore(
            sample_id=request.sample_id,
            prediction_key=request.prediction_key,
            metric=mode,
            value=None,
            params=params,
            reason="empty_span",
        )
    return MetricScore(
        sample_id=request.sample_id,
        prediction_key=request.prediction_key,
        metric=mode,
        value=value,
        params=params,
    )
