"""Fill-in-the-middle prompt assembly with a short ground-truth prime."""

from __future__ import annotations

from dataclasses import dataclass

from ..tokenization import WHITESPACE, TokenizerHandle
from .types import CommentSample

DEFAULT_PRIME_TOKENS = 3


class PrimeTooLongError(ValueError):
    """Asked for more priming tokens than the ground truth has."""


@dataclass(frozen=True)
class SentinelSet:
    """The three control strings a model family uses for infilling."""

    prefix: str
    suffix: str
    middle: str

    def __post_init__(self) -> None:
        parts = (self.prefix, self.suffix, self.middle)
        if any(not p for p in parts):
            raise ValueError("sentinels must be non-empty")
        if len(set(parts)) != 3:
            raise ValueError("sentinels must be distinct")


SENTINELS: dict[str, SentinelSet] = {
    "codegemma": SentinelSet("<|fim_prefix|>", "<|fim_suffix|>", "<|fim_middle|>"),
    "codellama": SentinelSet("<PRE>", "<SUF>", "<MID>"),
    "codeqwen": SentinelSet("<fim_prefix>", "<fim_suffix>", "<fim_middle>"),
    "granite-code": SentinelSet("<fim_prefix>", "<fim_suffix>", "<fim_middle>"),
    "starcoder2": SentinelSet("<fim_prefix>", "<fim_suffix>", "<fim_middle>"),
}
DEFAULT_SENTINELS = SENTINELS["codegemma"]


@dataclass(frozen=True)
class FimPrompt:
    sample_id: str
    text: str
    prime: str
    prime_token_count: int
    sentinels: SentinelSet
    tokenizer: str


def build_fim_prompt(
    sample: CommentSample,
    sentinels: SentinelSet = DEFAULT_SENTINELS,
    prime_token_count: int = DEFAULT_PRIME_TOKENS,
    tokenizer: TokenizerHandle = WHITESPACE,
) -> FimPrompt:
    """Render prefix-suffix-middle order with the first ground-truth tokens.

    The prime is the ground truth cut after its ``prime_token_count``-th
    token, so the true comment always starts with the prime.  Zero asks for
    no priming.
    """
    if prime_token_count < 0:
        raise ValueError("prime_token_count must be >= 0")
    spans = tokenizer.token_spans(sample.ground_truth)
    if prime_token_count > len(spans):
        raise PrimeTooLongError(
            f"asked for {prime_token_count} priming tokens, "
            f"ground truth has {len(spans)} under {tokenizer.name!r}"
        )
    prime = "" if prime_token_count == 0 else sample.ground_truth[: spans[prime_token_count - 1][1]]
    text = (
        f"{sentinels.prefix}{sample.prefix}"
        f"{sentinels.suffix}{sample.suffix}"
        f"{sentinels.middle}{prime}"
    )
    return FimPrompt(
        sample_id=sample.id,
        text=text,
        prime=prime,
        prime_token_count=prime_token_count,
        sentinels=sentinels,
        tokenizer=tokenizer.name,
    )
