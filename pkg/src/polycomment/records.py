"""Score records shared by the classical and neural scoring paths."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Mapping


@dataclass(frozen=True)
class MetricScore:
    """One (sample, prediction, metric) scalar with its provenance.

    ``value`` is None when the pair could not be scored; ``reason`` then says
    why (for example ``context_overflow: limit 512``).  ``params`` carries
    whatever is needed to reproduce the number: tokenization scheme, metric
    parameters, backend id, context setting and so on.
    """

    sample_id: str
    prediction_key: str
    metric: str
    value: float | None
    params: Mapping[str, Any] = field(default_factory=dict)
    reason: str | None = None

    def __post_init__(self) -> None:
        if (self.value is None) == (self.reason is None):
            raise ValueError("exactly one of value and reason must be set")

    def to_json(self) -> dict[str, Any]:
        return {
            "sample_id": self.sample_id,
            "prediction_key": self.prediction_key,
            "metric": self.metric,
            "value": self.value,
            "params": dict(self.params),
            "reason": self.reason,
        }

    @classmethod
    def from_json(cls, obj: Mapping[str, Any]) -> "MetricScore":
        return cls(
            sample_id=obj["sample_id"],
            prediction_key=obj["prediction_key"],
            metric=obj["metric"],
            value=obj["value"],
            params=dict(obj.get("params") or {}),
            reason=obj.get("reason"),
        )
