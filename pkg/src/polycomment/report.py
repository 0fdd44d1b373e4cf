"""Reporting: per-code precision/recall, taxonomy counts, strips, alignment."""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path
from typing import Collection, Iterable, Mapping, Sequence

from .calibration import OrdinalLabel
from .corpus.types import CommentSample
from .taxonomy import Taxonomy


@dataclass(frozen=True)
class CodePR:
    code: str
    agreed: int
    judge_count: int
    human_count: int
    precision: float | None
    recall: float | None
    low_support_judge: bool
    low_support_human: bool


def per_code_pr(
    judge_assignments: Mapping[str, Collection[str]],
    human_assignments: Mapping[str, Collection[str]],
    min_support: int = 10,
    exclude_codes: Collection[str] = (),
) -> dict[str, CodePR]:
    """Per-code precision/recall of judge assignments against human ones.

    Both mappings go from an instance key to the codes assigned to it; the
    instance universe is the union of both keys (a missing instance means no
    codes).  Precision or recall with a zero denominator is None; counts
    below ``min_support`` raise the corresponding low-support flag.
    """
    excluded = set(exclude_codes)
    instances = set(judge_assignments) | set(human_assignments)
    codes: set[str] = set()
    for mapping in (judge_assignments, human_assignments):
        for assigned in mapping.values():
            codes.update(assigned)
    codes -= excluded
    table: dict[str, CodePR] = {}
    for code in sorted(codes):
        judged = {k for k in instances if code in set(judge_assignments.get(k, ()))}
        annotated = {k for k in instances if code in set(human_assignments.get(k, ()))}
        agreed = len(judged & annotated)
        precision = agreed / len(judged) if judged else None
        recall = agreed / len(annotated) if annotated else None
        table[code] = CodePR(
            code=code,
            agreed=agreed,
            judge_count=len(judged),
            human_count=len(annotated),
            precision=precision,
            recall=recall,
            low_support_judge=len(judged) < min_support,
            low_support_human=len(annotated) < min_support,
        )
    return table


@dataclass(frozen=True)
class AggregatedPR:
    """Cross-setup aggregation; macro averages per-setup values, micro pools counts."""

    macro_precision: float | None
    macro_recall: float | None
    micro_precision: float | None
    micro_recall: float | None
    setups: int


def aggregate_pr(tables: Sequence[Mapping[str, CodePR]], code: str) -> AggregatedPR:
    precisions = [t[code].precision for t in tables if code in t and t[code].precision is not None]
    recalls = [t[code].recall for t in tables if code in t and t[code].recall is not None]
    agreed = sum(t[code].agreed for t in tables if code in t)
    judged = sum(t[code].judge_count for t in tables if code in t)
    annotated = sum(t[code].human_count for t in tables if code in t)
    return AggregatedPR(
        macro_precision=sum(precisions) / len(precisions) if precisions else None,
        macro_recall=sum(recalls) / len(recalls) if recalls else None,
        micro_precision=agreed / judged if judged else None,
        micro_recall=agreed / annotated if annotated else None,
        setups=len(tables),
    )


@dataclass(frozen=True)
class TaxonomyCounts:
    """Assignment counts accumulated up the hierarchy.

    A leaf assignment counts for the leaf, its group (when it has one) and
    its category; an assignment made directly at group level counts for the
    group and category only and stays visible as its own row.
    """

    codes: Mapping[str, int]
    groups: Mapping[str, int]
    categories: Mapping[str, int]
    total: int


def taxonomy_counts(
    code_lists: Iterable[Sequence[str]], taxonomy: Taxonomy
) -> TaxonomyCounts:
    code_counter: Counter = Counter()
    group_counter: Counter = Counter()
    category_counter: Counter = Counter()
    total = 0
    for codes in code_lists:
        for code_id in codes:
            total += 1
            if taxonomy.is_code(code_id):
                code_counter[code_id] += 1
                group = taxonomy.group_of(code_id)
                if group is not None:
                    group_counter[group] += 1
                category_counter[taxonomy.category_of(code_id)] += 1
            elif taxonomy.is_group(code_id):
                group_counter[code_id] += 1
                category_counter[taxonomy.category_of(code_id)] += 1
            elif taxonomy.is_category(code_id):
                category_counter[code_id] += 1
            else:
                raise KeyError(f"unknown taxonomy id {code_id!r}")
    return TaxonomyCounts(
        codes=dict(code_counter),
        groups=dict(group_counter),
        categories=dict(category_counter),
        total=total,
    )


def taxonomy_counts_by_language(
    samples: Iterable[CommentSample], taxonomy: Taxonomy
) -> dict[str, TaxonomyCounts]:
    by_language: dict[str, list[Sequence[str]]] = {}
    for sample in samples:
        if sample.error_codes:
            by_language.setdefault(sample.language, []).append(sample.error_codes)
    return {
        language: taxonomy_counts(lists, taxonomy)
        for language, lists in sorted(by_language.items())
    }


def label_counts(labels: Iterable) -> tuple[int, int, int]:
    """(correct, partially_correct, incorrect) occurrence counts."""
    counts = Counter(OrdinalLabel.parse(label) for label in labels)
    return (
        counts.get(OrdinalLabel.CORRECT, 0),
        counts.get(OrdinalLabel.PARTIALLY_CORRECT, 0),
        counts.get(OrdinalLabel.INCORRECT, 0),
    )


def prediction_label_table(
    samples: Iterable[CommentSample],
) -> tuple[dict[tuple[str, str], tuple[int, int, int]], int]:
    """Label counts per (model, language) over single-prediction samples.

    A label on a sample with several predictions is ambiguous; such samples
    are skipped and counted in the second return value.
    """
    grouped: dict[tuple[str, str], list] = {}
    skipped = 0
    for sample in samples:
        if sample.label is None:
            continue
        if len(sample.predictions) != 1:
            skipped += 1
            continue
        (model,) = sample.predictions
        grouped.setdefault((model, sample.language), []).append(sample.label)
    return (
        {key: label_counts(labels) for key, labels in sorted(grouped.items())},
        skipped,
    )


@dataclass(frozen=True)
class StripSeries:
    """Min-max normalized score strip for one metric.

    ``normalized`` is None when the raw scores were constant (normalization
    undefined); the labels always travel along so plots can color by grade.
    """

    metric: str
    normalized: tuple[float, ...] | None
    labels: tuple
    degenerate: bool


def export_strip(
    per_metric: Mapping[str, Sequence[tuple[float, object]]]
) -> dict[str, StripSeries]:
    strips: dict[str, StripSeries] = {}
    for metric, points in per_metric.items():
        values = [v for v, _ in points]
        labels = tuple(label for _, label in points)
        if not values:
            strips[metric] = StripSeries(metric, None, labels, True)
            continue
        lo, hi = min(values), max(values)
        if hi == lo:
            strips[metric] = StripSeries(metric, None, labels, True)
            continue
        normalized = tuple((v - lo) / (hi - lo) for v in values)
        strips[metric] = StripSeries(metric, normalized, labels, False)
    return strips


@dataclass(frozen=True)
class AlignmentCell:
    """One agreement measurement: a kappa in a (language, strategy, scorer) cell."""

    language: str
    strategy: str
    scorer: str
    kappa: float
    excluded: int = 0


@dataclass(frozen=True)
class GroupSummary:
    mean: float
    minimum: float
    maximum: float
    count: int
    excluded: int


def alignment_summary(
    cells: Sequence[AlignmentCell], group_by: Sequence[str] = ("strategy",)
) -> dict[tuple, GroupSummary]:
    """Kappa summaries grouped by any subset of the cell keys."""
    valid = {"language", "strategy", "scorer"}
    unknown = set(group_by) - valid
    if unknown:
        raise ValueError(f"cannot group by {sorted(unknown)}")
    groups: dict[tuple, list[AlignmentCell]] = {}
    for cell in cells:
        key = tuple(getattr(cell, attr) for attr in group_by)
        groups.setdefault(key, []).append(cell)
    return {
        key: GroupSummary(
            mean=sum(c.kappa for c in members) / len(members),
            minimum=min(c.kappa for c in members),
            maximum=max(c.kappa for c in members),
            count=len(members),
            excluded=sum(c.excluded for c in members),
        )
        for key, members in sorted(groups.items())
    }


def write_manifest(
    path: "str | Path",
    inputs: Sequence[str],
    params: Mapping,
    outputs: Sequence[str],
) -> dict:
    """Machine-readable record of what produced a report directory."""
    from . import __version__

    manifest = {
        "inputs": list(inputs),
        "params": dict(params),
        "outputs": list(outputs),
        "package_version": __version__,
        "created_at": datetime.now(timezone.utc).isoformat(),
    }
    Path(path).write_text(json.dumps(manifest, indent=2, ensure_ascii=False, sort_keys=True))
    return manifest
