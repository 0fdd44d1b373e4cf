"""Length and budget filtering over a per-language sample pool.

Pool statistics are computed over the full pool first and then applied per
sample, which makes filtering independent of sample order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np

from ..tokenization import TokenizerHandle
from .types import CommentSample

DEFAULT_MAX_CONTEXT = 4096
DEFAULT_SIGMA_BUDGET = 3.0
DEFAULT_MIN_TOKENS = 10


@dataclass(frozen=True)
class PoolStatistics:
    """Mean and population stddev of ground-truth token counts per tokenizer."""

    by_tokenizer: Mapping[str, tuple[float, float]]
    sample_count: int
    language: str | None = None

    def allowance(self, tokenizer_name: str, sigma_budget: float) -> float:
        mean, std = self.by_tokenizer[tokenizer_name]
        return mean + sigma_budget * std


def compute_pool_statistics(
    samples: Sequence[CommentSample],
    tokenizers: Sequence[TokenizerHandle],
    language: str | None = None,
) -> PoolStatistics:
    if not samples:
        raise ValueError("empty pool")
    stats: dict[str, tuple[float, float]] = {}
    for tok in tokenizers:
        counts = np.array([len(tok.tokenize(s.ground_truth)) for s in samples], dtype=float)
        stats[tok.name] = (float(counts.mean()), float(counts.std()))
    return PoolStatistics(by_tokenizer=stats, sample_count=len(samples), language=language)


@dataclass(frozen=True)
class FilterDecision:
    keep: bool
    reason: str | None = None  # too_short | budget_exceeded | tokenization_error
    details: Mapping[str, object] = field(default_factory=dict)


def filter_sample(
    sample: CommentSample,
    tokenizers: Sequence[TokenizerHandle],
    stats: PoolStatistics,
    max_context: int = DEFAULT_MAX_CONTEXT,
    sigma_budget: float = DEFAULT_SIGMA_BUDGET,
    min_tokens: int = DEFAULT_MIN_TOKENS,
) -> FilterDecision:
    """Keep a sample only if it is long enough and fits every token budget.

    A sample is too short when its ground truth is under ``min_tokens`` for
    every tokenizer; it blows the budget when, for any tokenizer, its context
    plus the pool's mean + sigma_budget * stddev comment allowance exceeds
    ``max_context``.
    """
    gt_counts: dict[str, int] = {}
    ctx_counts: dict[str, int] = {}
    for tok in tokenizers:
        if tok.name not in stats.by_tokenizer:
            raise KeyError(f"pool statistics missing tokenizer {tok.name!r}")
        try:
            gt_counts[tok.name] = len(tok.tokenize(sample.ground_truth))
            ctx_counts[tok.name] = len(tok.tokenize(sample.prefix)) + len(
                tok.tokenize(sample.suffix)
            )
        except Exception as exc:  # tokenizers may reject pathological input
            return FilterDecision(
                keep=False,
                reason="tokenization_error",
                details={"tokenizer": tok.name, "error": str(exc)},
            )
    if all(count < min_tokens for count in gt_counts.values()):
        return FilterDecision(
            keep=False, reason="too_short", details={"counts": gt_counts}
        )
    for tok in tokenizers:
        needed = ctx_counts[tok.name] + stats.allowance(tok.name, sigma_budget)
        if needed > max_context:
            return FilterDecision(
                keep=False,
                reason="budget_exceeded",
                details={
                    "tokenizer": tok.name,
                    "context_tokens": ctx_counts[tok.name],
                    "needed": needed,
                    "max_context": max_context,
                },
            )
    return FilterDecision(keep=True)
