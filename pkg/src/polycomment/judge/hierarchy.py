"""Hierarchical judging: one call per cluster, then severity-min aggregation."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

from ..taxonomy import Taxonomy
from .client import ChatClient, RawResponse, invoke_judge
from .parsing import parse_response
from .prompts import build_prompt
from .translations import TranslationTable
from .types import (
    OUTCOME_EMPTY,
    OUTCOME_OK,
    OUTCOME_PARSE_FAILURE,
    DecodingConfig,
    ErrorMark,
    JudgeOutcome,
    JudgeTask,
    JudgeVerdict,
    PredictionVerdict,
)


def aggregate_cluster_outcomes(
    outcomes: Mapping[str, JudgeOutcome], cluster_order: Sequence[str]
) -> JudgeOutcome:
    """Fold per-cluster outcomes into one instance outcome.

    Degradation precedence: any parse_failure first (the first failing
    cluster in the given order decides the kind), then any empty_response,
    else ok.  For ok instances, each prediction's error marks are the union
    over clusters and its overall grade the minimum severity over the
    clusters that graded it; a single bad cluster can therefore lower the
    final grade but never raise it.
    """
    for name in cluster_order:
        outcome = outcomes.get(name)
        if outcome is not None and outcome.status == OUTCOME_PARSE_FAILURE:
            return JudgeOutcome(
                status=OUTCOME_PARSE_FAILURE,
                failure_kind=outcome.failure_kind,
                warnings=(f"cluster {name} failed to parse", *outcome.warnings),
            )
    for name in cluster_order:
        outcome = outcomes.get(name)
        if outcome is not None and outcome.status == OUTCOME_EMPTY:
            return JudgeOutcome(
                status=OUTCOME_EMPTY,
                warnings=(f"cluster {name} returned no verdicts", *outcome.warnings),
            )
    merged: dict[str, dict] = {}
    warnings: list[str] = []
    for name in cluster_order:
        outcome = outcomes.get(name)
        if outcome is None:
            continue
        warnings.extend(outcome.warnings)
        assert outcome.verdict is not None
        for key, verdict in outcome.verdict.predictions.items():
            slot = merged.setdefault(key, {"errors": [], "overall": None, "reasoning": []})
            slot["errors"].extend(verdict.errors)
            if verdict.overall is not None:
                current = slot["overall"]
                slot["overall"] = (
                    verdict.overall if current is None else min(current, verdict.overall)
                )
            if verdict.reasoning:
                slot["reasoning"].append(verdict.reasoning)
    if not merged:
        return JudgeOutcome(status=OUTCOME_EMPTY, warnings=tuple(warnings))
    predictions = {}
    for key, slot in merged.items():
        seen: set[ErrorMark] = set()
        unique: list[ErrorMark] = []
        for mark in slot["errors"]:
            if mark not in seen:
                seen.add(mark)
                unique.append(mark)
        predictions[key] = PredictionVerdict(
            overall=slot["overall"],
            errors=tuple(unique),
            reasoning="\n".join(slot["reasoning"]) or None,
        )
    return JudgeOutcome(
        status=OUTCOME_OK,
        verdict=JudgeVerdict(predictions=predictions),
        warnings=tuple(warnings),
    )


@dataclass(frozen=True)
class HierarchicalResult:
    outcome: JudgeOutcome
    cluster_outcomes: Mapping[str, JudgeOutcome]
    raw_responses: Mapping[str, RawResponse] = field(default_factory=dict)


def hierarchical_evaluate(
    task: JudgeTask,
    taxonomy: Taxonomy,
    translations: TranslationTable,
    client: ChatClient,
    decoding: DecodingConfig | None = None,
    max_retries: int = 4,
    backoff_base: float = 0.5,
    sleep=None,
) -> HierarchicalResult:
    """One judge call per cluster in the schema's declared order."""
    if task.strategy != "hierarchical":
        raise ValueError("task strategy must be 'hierarchical'")
    decoding = decoding or DecodingConfig()
    field_map = translations.field_map(task.language)
    label_map = translations.label_map(task.language)
    refusals = translations.refusal_patterns(task.language)
    cluster_order = taxonomy.cluster_ids()
    outcomes: dict[str, JudgeOutcome] = {}
    raws: dict[str, RawResponse] = {}
    kwargs = {"max_retries": max_retries, "backoff_base": backoff_base}
    if sleep is not None:
        kwargs["sleep"] = sleep
    for cluster in cluster_order:
        messages = build_prompt(task, taxonomy, translations, cluster=cluster)
        raw = invoke_judge(client, messages, decoding, **kwargs)
        raws[cluster] = raw
        outcomes[cluster] = parse_response(
            raw.text, field_map, taxonomy, label_map=label_map, refusal_patterns=refusals
        )
    return HierarchicalResult(
        outcome=aggregate_cluster_outcomes(outcomes, cluster_order),
        cluster_outcomes=outcomes,
        raw_responses=raws,
    )
