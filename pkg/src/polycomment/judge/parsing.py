"""Total parsing of judge replies: every string maps to exactly one outcome.

The extraction ladder tries, in order: the whole body as JSON, the first
fenced code block, and the first brace-balanced region.  Failures classify
as truncated (the JSON structure never closes), refusal (no structure at all
plus a refusal phrase) or malformed (everything else).  A reply that parses
but carries no usable verdict is an empty_response.
"""

from __future__ import annotations

import json
import re
from typing import Iterable, Mapping

from ..calibration import OrdinalLabel
from ..taxonomy import Taxonomy
from .types import (
    OUTCOME_EMPTY,
    OUTCOME_OK,
    OUTCOME_PARSE_FAILURE,
    ErrorMark,
    JudgeOutcome,
    JudgeVerdict,
    PredictionVerdict,
)

_FENCE_OPEN_RX = re.compile(r"```[a-zA-Z0-9_-]*[ \t]*\n")

_CANONICAL_LABELS = {
    "correct": OrdinalLabel.CORRECT,
    "partially_correct": OrdinalLabel.PARTIALLY_CORRECT,
    "partially correct": OrdinalLabel.PARTIALLY_CORRECT,
    "incorrect": OrdinalLabel.INCORRECT,
}


def _balanced_region(text: str, start: int) -> tuple[str | None, bool]:
    """(region, ran_out): the brace-balanced JSON region opening at start.

    ran_out is True when the text ends before the region closes, which is
    the signature of a truncated reply.
    """
    depth = 0
    in_string = False
    escaped = False
    for i in range(start, len(text)):
        c = text[i]
        if in_string:
            if escaped:
                escaped = False
            elif c == "\\":
                escaped = True
            elif c == '"':
                in_string = False
            continue
        if c == '"':
            in_string = True
        elif c == "{":
            depth += 1
        elif c == "}":
            depth -= 1
            if depth == 0:
                return text[start : i + 1], False
    return None, True


def _extract_json(raw: str) -> tuple[dict | None, str | None]:
    """(parsed object, failure kind hint).

    The hint is only meaningful when the object is None.
    """
    body = raw.strip()
    if not body:
        return None, "malformed"
    try:
        obj = json.loads(body)
        if isinstance(obj, dict):
            return obj, None
        return None, "malformed"
    except json.JSONDecodeError:
        pass
    fence = _FENCE_OPEN_RX.search(body)
    if fence:
        closing = body.find("```", fence.end())
        if closing < 0:
            inner = body[fence.end() :]
            truncated_hint = True
        else:
            inner = body[fence.end() : closing]
            truncated_hint = False
        inner = inner.strip()
        if inner:
            try:
                obj = json.loads(inner)
                if isinstance(obj, dict):
                    return obj, None
            except json.JSONDecodeError:
                pass
            first = inner.find("{")
            if first >= 0:
                region, ran_out = _balanced_region(inner, first)
                if region is not None:
                    try:
                        obj = json.loads(region)
                        if isinstance(obj, dict):
                            return obj, None
                    except json.JSONDecodeError:
                        return None, "malformed"
                return None, "truncated"
        if truncated_hint:
            return None, "truncated"
    first = body.find("{")
    if first < 0:
        return None, "no_structure"
    region, ran_out = _balanced_region(body, first)
    if region is None:
        return None, "truncated" if ran_out else "malformed"
    try:
        obj = json.loads(region)
        if isinstance(obj, dict):
            return obj, None
        return None, "malformed"
    except json.JSONDecodeError:
        return None, "malformed"


def _remap_keys(obj, field_map_folded: Mapping[str, str]):
    if isinstance(obj, dict):
        return {
            field_map_folded.get(str(k).strip().casefold(), k): _remap_keys(v, field_map_folded)
            for k, v in obj.items()
        }
    if isinstance(obj, list):
        return [_remap_keys(v, field_map_folded) for v in obj]
    return obj


def _parse_overall(value, label_map_folded: Mapping[str, OrdinalLabel], warnings: list[str]):
    if value is None:
        return None
    key = str(value).strip().casefold()
    label = label_map_folded.get(key)
    if label is None:
        warnings.append(f"unknown overall value {value!r}")
    return label


def _parse_errors(value, taxonomy: Taxonomy, warnings: list[str]) -> tuple[ErrorMark, ...] | None:
    """None means the errors field was absent or unusable."""
    if value is None:
        return None
    if not isinstance(value, list):
        warnings.append(f"errors field is not a list: {type(value).__name__}")
        return None
    marks: list[ErrorMark] = []
    for item in value:
        if isinstance(item, str):
            code = item.strip()
            if not code:
                continue
            if not taxonomy.is_known(code):
                warnings.append(f"unknown error code {code!r}")
            marks.append(ErrorMark(code=code))
            continue
        if not isinstance(item, dict):
            warnings.append("error entry is neither an object nor a string")
            continue
        code = item.get("code")
        if not code:
            warnings.append("error entry without a code")
            continue
        code = str(code).strip()
        if not taxonomy.is_known(code):
            warnings.append(f"unknown error code {code!r}")
        confidence = None
        if item.get("confidence") is not None:
            try:
                confidence = float(item["confidence"])
            except (TypeError, ValueError):
                warnings.append(f"bad confidence {item['confidence']!r}")
        justification = item.get("justification")
        if justification is not None:
            justification = str(justification)
        marks.append(ErrorMark(code=code, confidence=confidence, justification=justification))
    return tuple(marks)


def parse_response(
    raw: str,
    field_map: Mapping[str, str],
    taxonomy: Taxonomy,
    label_map: Mapping[str, str] | None = None,
    refusal_patterns: Iterable[str] = (),
) -> JudgeOutcome:
    """Classify one raw reply; never raises on untrusted input.

    ``field_map`` maps localized JSON keys to canonical ones, ``label_map``
    localized overall values to canonical wire names.  Unknown error codes
    are warnings, not failures.  An entry counts as usable when it has an
    overall grade or an errors list (an empty list is a usable statement:
    no errors found).
    """
    obj, hint = _extract_json(raw)
    if obj is None:
        if hint == "no_structure":
            folded = raw.casefold()
            if any(p.casefold() in folded for p in refusal_patterns):
                return JudgeOutcome(status=OUTCOME_PARSE_FAILURE, failure_kind="refusal")
            return JudgeOutcome(status=OUTCOME_PARSE_FAILURE, failure_kind="malformed")
        kind = hint if hint in ("truncated", "malformed") else "malformed"
        return JudgeOutcome(status=OUTCOME_PARSE_FAILURE, failure_kind=kind)

    folded_fields = {k.strip().casefold(): v for k, v in field_map.items()}
    # canonical names always work, even when the reply ignored localization
    for canonical in ("predictions", "model", "overall", "errors", "code", "confidence", "justification", "reasoning"):
        folded_fields.setdefault(canonical, canonical)
    remapped = _remap_keys(obj, folded_fields)

    label_map_folded: dict[str, OrdinalLabel] = dict(_CANONICAL_LABELS)
    for localized, canonical in (label_map or {}).items():
        parsed = _CANONICAL_LABELS.get(str(canonical).strip().casefold())
        if parsed is not None:
            label_map_folded[str(localized).strip().casefold()] = parsed

    warnings: list[str] = []
    predictions = remapped.get("predictions")
    if predictions is None:
        return JudgeOutcome(
            status=OUTCOME_PARSE_FAILURE,
            failure_kind="malformed",
            warnings=("no predictions field",),
        )
    if isinstance(predictions, dict):
        predictions = [
            {"model": key, **value} if isinstance(value, dict) else {"model": key}
            for key, value in predictions.items()
        ]
    if not isinstance(predictions, list):
        return JudgeOutcome(
            status=OUTCOME_PARSE_FAILURE,
            failure_kind="malformed",
            warnings=("predictions is neither a list nor an object",),
        )

    verdicts: dict[str, PredictionVerdict] = {}
    for entry in predictions:
        if not isinstance(entry, dict):
            warnings.append("prediction entry is not an object")
            continue
        key = entry.get("model")
        if key is None:
            warnings.append("prediction entry without a model key")
            continue
        key = str(key)
        overall = _parse_overall(entry.get("overall"), label_map_folded, warnings)
        errors = _parse_errors(entry.get("errors"), taxonomy, warnings)
        reasoning = entry.get("reasoning")
        if reasoning is not None:
            reasoning = str(reasoning)
        if overall is None and errors is None:
            warnings.append(f"prediction {key!r} carries no verdict content")
            continue
        if key in verdicts:
            warnings.append(f"duplicate prediction key {key!r}; keeping the last")
        verdicts[key] = PredictionVerdict(
            overall=overall,
            errors=errors if errors is not None else (),
            reasoning=reasoning,
        )
    if not verdicts:
        return JudgeOutcome(status=OUTCOME_EMPTY, warnings=tuple(warnings))
    return JudgeOutcome(
        status=OUTCOME_OK,
        verdict=JudgeVerdict(predictions=verdicts),
        warnings=tuple(warnings),
    )


def _first_key_position(folded: str, keys: Iterable[str]) -> int:
    positions = [p for p in (folded.find(f'"{k.casefold()}"') for k in keys) if p >= 0]
    return min(positions) if positions else -1


def check_cot_order(raw: str, field_map: Mapping[str, str]) -> bool | None:
    """Whether the reasoning key appears before the errors key in the raw text.

    None when either key never appears (nothing to check).
    """
    reasoning_keys = [k for k, v in field_map.items() if v == "reasoning"] + ["reasoning"]
    error_keys = [k for k, v in field_map.items() if v == "errors"] + ["errors"]
    folded = raw.casefold()
    r_pos = _first_key_position(folded, reasoning_keys)
    e_pos = _first_key_position(folded, error_keys)
    if r_pos < 0 or e_pos < 0:
        return None
    return r_pos < e_pos
