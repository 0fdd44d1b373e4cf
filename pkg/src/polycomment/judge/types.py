"""Task, decoding and verdict types for LLM-as-a-judge runs."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from ..calibration import OrdinalLabel
from ..corpus.types import CommentSample

STRATEGIES = ("standard", "cot", "rubric", "hierarchical")

OUTCOME_OK = "ok"
OUTCOME_PARSE_FAILURE = "parse_failure"
OUTCOME_EMPTY = "empty_response"

FAILURE_KINDS = ("malformed", "truncated", "refusal")


@dataclass(frozen=True)
class DecodingConfig:
    """Decoding parameters sent with every judge request."""

    temperature: float = 0.0
    seed: int = 42
    max_output_tokens: int = 10_000

    def __post_init__(self) -> None:
        if self.temperature < 0.0:
            raise ValueError("temperature must be >= 0")
        if self.max_output_tokens <= 0:
            raise ValueError("max_output_tokens must be > 0")

    def to_json(self) -> dict:
        return {
            "temperature": self.temperature,
            "seed": self.seed,
            "max_output_tokens": self.max_output_tokens,
        }


@dataclass(frozen=True)
class JudgeTask:
    """One judge invocation: a sample, a strategy and a target judge model."""

    sample: CommentSample
    strategy: str
    judge_model: str

    def __post_init__(self) -> None:
        if self.strategy not in STRATEGIES:
            raise ValueError(f"unknown strategy {self.strategy!r}; known: {STRATEGIES}")
        if not self.sample.predictions:
            raise ValueError("task sample has no predictions to judge")

    @property
    def language(self) -> str:
        return self.sample.language

    @property
    def task_id(self) -> str:
        return f"{self.sample.id}:{self.strategy}:{self.judge_model}"


@dataclass(frozen=True)
class ErrorMark:
    """One error assignment, optionally with confidence and justification."""

    code: str
    confidence: float | None = None
    justification: str | None = None


@dataclass(frozen=True)
class PredictionVerdict:
    """The judge's output for a single prediction."""

    overall: OrdinalLabel | None
    errors: tuple[ErrorMark, ...] = ()
    reasoning: str | None = None

    @property
    def codes(self) -> tuple[str, ...]:
        return tuple(mark.code for mark in self.errors)


@dataclass(frozen=True)
class JudgeVerdict:
    """Per-prediction verdicts keyed by the prediction key."""

    predictions: Mapping[str, PredictionVerdict]

    def __post_init__(self) -> None:
        if not self.predictions:
            raise ValueError("a verdict must cover at least one prediction")


@dataclass(frozen=True)
class JudgeOutcome:
    """Totality envelope around parsing: ok, parse_failure or empty_response."""

    status: str
    verdict: JudgeVerdict | None = None
    failure_kind: str | None = None
    warnings: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        if self.status not in (OUTCOME_OK, OUTCOME_PARSE_FAILURE, OUTCOME_EMPTY):
            raise ValueError(f"unknown status {self.status!r}")
        if self.status == OUTCOME_OK and self.verdict is None:
            raise ValueError("ok outcome requires a verdict")
        if self.status == OUTCOME_PARSE_FAILURE and self.failure_kind not in FAILURE_KINDS:
            raise ValueError(f"parse_failure requires a kind from {FAILURE_KINDS}")
        if self.status != OUTCOME_PARSE_FAILURE and self.failure_kind is not None:
            raise ValueError("failure_kind only applies to parse_failure")
