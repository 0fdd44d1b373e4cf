"""Run-level statistics over judge records."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

from ..calibration import OrdinalLabel
from .runner import RECORD_TRANSPORT_FAILURE, JudgeRecord
from .types import OUTCOME_EMPTY, OUTCOME_OK, OUTCOME_PARSE_FAILURE


@dataclass(frozen=True)
class CellStats:
    """Outcome counts for one (judge model, language, strategy) cell.

    Transport failures are infrastructure, not judge behavior, so they are
    excluded from the rate denominators.
    """

    total: int
    ok: int
    empty: int
    parse_failures: Mapping[str, int]
    transport_failures: int

    @property
    def judged(self) -> int:
        return self.total - self.transport_failures

    @property
    def parse_failure_rate(self) -> float | None:
        if self.judged == 0:
            return None
        return sum(self.parse_failures.values()) / self.judged

    @property
    def empty_response_rate(self) -> float | None:
        if self.judged == 0:
            return None
        return self.empty / self.judged


def run_stats(records: Sequence[JudgeRecord]) -> dict[tuple[str, str, str], CellStats]:
    """Per-cell counts keyed by (judge_model, language, strategy)."""
    cells: dict[tuple[str, str, str], dict] = {}
    for record in records:
        key = (record.judge_model, record.language, record.strategy)
        cell = cells.setdefault(
            key, {"total": 0, "ok": 0, "empty": 0, "parse": {}, "transport": 0}
        )
        cell["total"] += 1
        if record.kind == RECORD_TRANSPORT_FAILURE:
            cell["transport"] += 1
            continue
        assert record.outcome is not None
        if record.outcome.status == OUTCOME_OK:
            cell["ok"] += 1
        elif record.outcome.status == OUTCOME_EMPTY:
            cell["empty"] += 1
        elif record.outcome.status == OUTCOME_PARSE_FAILURE:
            kind = record.outcome.failure_kind or "malformed"
            cell["parse"][kind] = cell["parse"].get(kind, 0) + 1
    return {
        key: CellStats(
            total=cell["total"],
            ok=cell["ok"],
            empty=cell["empty"],
            parse_failures=dict(cell["parse"]),
            transport_failures=cell["transport"],
        )
        for key, cell in cells.items()
    }


def verdict_labels(
    records: Sequence[JudgeRecord],
) -> tuple[dict[tuple[str, str], OrdinalLabel], int]:
    """Per-(sample, prediction) overall labels from ok records.

    Returns the labels plus the count of records excluded because they did
    not parse (or carried no grade); agreement statistics run on the labels
    and report the exclusion count alongside.
    """
    labels: dict[tuple[str, str], OrdinalLabel] = {}
    excluded = 0
    for record in records:
        if record.kind != "outcome" or record.outcome is None:
            excluded += 1
            continue
        if record.outcome.status != OUTCOME_OK:
            excluded += 1
            continue
        assert record.outcome.verdict is not None
        got_any = False
        for key, verdict in record.outcome.verdict.predictions.items():
            if verdict.overall is not None:
                labels[(record.sample_id, key)] = verdict.overall
                got_any = True
        if not got_any:
            excluded += 1
    return labels, excluded
