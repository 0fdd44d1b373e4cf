"""Bounded-concurrency execution of judge tasks."""

from __future__ import annotations

import threading
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

from ..taxonomy import Taxonomy
from ..transport import TransportFailure
from .client import ChatClient, RawResponse, invoke_judge
from .hierarchy import hierarchical_evaluate
from .parsing import check_cot_order, parse_response
from .prompts import build_prompt
from .translations import TranslationTable
from .types import DecodingConfig, JudgeOutcome, JudgeTask

RECORD_TRANSPORT_FAILURE = "transport_failure"


class TokenRateLimiter:
    """Token bucket over an estimated tokens-per-minute budget.

    Character count / 4 is a crude token estimate, but the budget only has
    to keep a run under a provider ceiling, not be exact.
    """

    def __init__(self, tokens_per_minute: int, clock=time.monotonic, sleep=time.sleep):
        if tokens_per_minute <= 0:
            raise ValueError("tokens_per_minute must be > 0")
        self.rate = tokens_per_minute / 60.0
        self.capacity = float(tokens_per_minute)
        self._tokens = self.capacity
        self._last = clock()
        self._clock = clock
        self._sleep = sleep
        self._lock = threading.Lock()

    @staticmethod
    def estimate(messages: Sequence[dict]) -> int:
        return max(1, sum(len(m.get("content", "")) for m in messages) // 4)

    def acquire(self, tokens: int) -> None:
        while True:
            with self._lock:
                now = self._clock()
                self._tokens = min(self.capacity, self._tokens + (now - self._last) * self.rate)
                self._last = now
                if self._tokens >= tokens:
                    self._tokens -= tokens
                    return
                wait = (tokens - self._tokens) / self.rate
            self._sleep(wait)


@dataclass(frozen=True)
class JudgeRecord:
    """One executed task: identity keys, outcome and raw replies."""

    task_id: str
    sample_id: str
    judge_model: str
    language: str
    strategy: str
    kind: str  # "outcome" | "transport_failure"
    outcome: JudgeOutcome | None = None
    raw: RawResponse | None = None
    cluster_raw: dict = field(default_factory=dict)
    error: str | None = None
    warnings: tuple[str, ...] = ()


def run_judge_task(
    task: JudgeTask,
    client: ChatClient,
    taxonomy: Taxonomy,
    translations: TranslationTable,
    decoding: DecodingConfig | None = None,
    max_retries: int = 4,
    backoff_base: float = 0.5,
    sleep=None,
) -> JudgeRecord:
    decoding = decoding or DecodingConfig()
    base = dict(
        task_id=task.task_id,
        sample_id=task.sample.id,
        judge_model=task.judge_model,
        language=task.language,
        strategy=task.strategy,
    )
    kwargs = {"max_retries": max_retries, "backoff_base": backoff_base}
    if sleep is not None:
        kwargs["sleep"] = sleep
    try:
        if task.strategy == "hierarchical":
            result = hierarchical_evaluate(
                task, taxonomy, translations, client, decoding, **kwargs
            )
            return JudgeRecord(
                **base,
                kind="outcome",
                outcome=result.outcome,
                cluster_raw={k: v for k, v in result.raw_responses.items()},
            )
        messages = build_prompt(task, taxonomy, translations)
        raw = invoke_judge(client, messages, decoding, **kwargs)
        field_map = translations.field_map(task.language)
        outcome = parse_response(
            raw.text,
            field_map,
            taxonomy,
            label_map=translations.label_map(task.language),
            refusal_patterns=translations.refusal_patterns(task.language),
        )
        warnings: tuple[str, ...] = ()
        if task.strategy == "cot" and outcome.status == "ok":
            if check_cot_order(raw.text, field_map) is False:
                warnings = ("reasoning does not precede errors in the raw reply",)
        return JudgeRecord(**base, kind="outcome", outcome=outcome, raw=raw, warnings=warnings)
    except TransportFailure as exc:
        return JudgeRecord(**base, kind=RECORD_TRANSPORT_FAILURE, error=str(exc))


def run_judge_tasks(
    tasks: Sequence[JudgeTask],
    client: ChatClient,
    taxonomy: Taxonomy,
    translations: TranslationTable,
    decoding: DecodingConfig | None = None,
    max_in_flight: int = 4,
    rate_limiter: TokenRateLimiter | None = None,
    max_retries: int = 4,
    backoff_base: float = 0.5,
    sleep=None,
) -> list[JudgeRecord]:
    """Execute tasks concurrently; output is sorted by task id regardless of
    completion order, so runs are comparable."""
    ids = [t.task_id for t in tasks]
    if len(set(ids)) != len(ids):
        raise ValueError("duplicate task ids")

    def one(task: JudgeTask) -> JudgeRecord:
        if rate_limiter is not None:
            messages = build_prompt(
                task,
                taxonomy,
                translations,
                cluster=taxonomy.cluster_ids()[0] if task.strategy == "hierarchical" else None,
            )
            rate_limiter.acquire(TokenRateLimiter.estimate(messages))
        return run_judge_task(
            task,
            client,
            taxonomy,
            translations,
            decoding,
            max_retries=max_retries,
            backoff_base=backoff_base,
            sleep=sleep,
        )

    with ThreadPoolExecutor(max_workers=max(1, max_in_flight)) as pool:
        records = list(pool.map(one, tasks))
    return sorted(records, key=lambda r: r.task_id)
