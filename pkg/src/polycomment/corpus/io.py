"""JSON-lines serialization for source files and comment samples."""

from __future__ import annotations

import json
from pathlib import Path
from typing import Iterable, Mapping

from .types import CommentSample, SourceFile

SAMPLE_FIELDS = (
    "id",
    "language",
    "pl",
    "prefix",
    "suffix",
    "ground_truth",
    "predictions",
    "label",
    "error_codes",
    "origin",
)

SOURCE_FIELDS = ("id", "language", "pl", "content", "origin")


def sample_to_json(sample: CommentSample) -> dict:
    return {
        "id": sample.id,
        "language": sample.language,
        "pl": sample.pl,
        "prefix": sample.prefix,
        "suffix": sample.suffix,
        "ground_truth": sample.ground_truth,
        "predictions": dict(sample.predictions),
        "label": sample.label,
        "error_codes": list(sample.error_codes) if sample.error_codes is not None else None,
        "origin": sample.origin,
    }


def sample_from_json(obj: Mapping) -> CommentSample:
    unknown = set(obj) - set(SAMPLE_FIELDS)
    if unknown:
        raise ValueError(f"unknown corpus fields: {sorted(unknown)}")
    missing = {"id", "language", "pl", "prefix", "suffix", "ground_truth"} - set(obj)
    if missing:
        raise ValueError(f"missing corpus fields: {sorted(missing)}")
    codes = obj.get("error_codes")
    return CommentSample(
        id=obj["id"],
        language=obj["language"],
        pl=obj["pl"],
        prefix=obj["prefix"],
        suffix=obj["suffix"],
        ground_truth=obj["ground_truth"],
        predictions=dict(obj.get("predictions") or {}),
        label=obj.get("label"),
        error_codes=tuple(codes) if codes is not None else None,
        origin=obj.get("origin", ""),
    )


def write_corpus(samples: Iterable[CommentSample], path: "str | Path") -> int:
    count = 0
    with open(path, "w", encoding="utf-8") as fh:
        for sample in samples:
            fh.write(json.dumps(sample_to_json(sample), ensure_ascii=False) + "\n")
            count += 1
    return count


def read_corpus(path: "str | Path") -> list[CommentSample]:
    samples = []
    with open(path, encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                samples.append(sample_from_json(json.loads(line)))
            except (ValueError, KeyError) as exc:
                raise ValueError(f"{path}:{line_no}: {exc}") from exc
    return samples


def source_to_json(source: SourceFile) -> dict:
    return {
        "id": source.id,
        "language": source.language,
        "pl": source.pl,
        "content": source.content,
        "origin": source.origin,
    }


def source_from_json(obj: Mapping) -> SourceFile:
    return SourceFile(
        id=obj["id"],
        language=obj["language"],
        pl=obj["pl"],
        content=obj["content"],
        origin=obj.get("origin", ""),
    )


def write_source_files(files: Iterable[SourceFile], path: "str | Path") -> int:
    count = 0
    with open(path, "w", encoding="utf-8") as fh:
        for source in files:
            fh.write(json.dumps(source_to_json(source), ensure_ascii=False) + "\n")
            count += 1
    return count


def read_source_files(path: "str | Path") -> list[SourceFile]:
    files = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if line:
                files.append(source_from_json(json.loads(line)))
    return files
