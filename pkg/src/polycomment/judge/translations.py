"""Loader for the judge's localized strings, field names and label values."""

from __future__ import annotations

import json
from importlib import resources
from pathlib import Path
from typing import Mapping, Sequence


class TranslationTable:
    """Per-language prompt strings with English fallback.

    field_map gives localized JSON key -> canonical key; label_map gives
    localized overall-grade value -> canonical wire name.
    """

    def __init__(self, data: Mapping):
        self.languages: tuple[str, ...] = tuple(data["languages"])
        self._strings = {k: dict(v) for k, v in data["strings"].items()}
        self._field_maps = {k: dict(v) for k, v in data["field_maps"].items()}
        self._label_values = {k: dict(v) for k, v in data["label_values"].items()}
        self._refusals = {k: list(v) for k, v in data.get("refusal_patterns", {}).items()}
        if "en" not in self._strings or "en" not in self._field_maps:
            raise ValueError("translation table must cover 'en'")

    def string(self, key: str, language: str) -> str:
        table = self._strings.get(language, {})
        if key in table:
            value = table[key]
        else:
            value = self._strings["en"][key]
        if isinstance(value, list):
            raise TypeError(f"{key!r} is a list; use strings_list")
        return value

    def strings_list(self, key: str, language: str) -> list[str]:
        table = self._strings.get(language, {})
        value = table.get(key, self._strings["en"][key])
        if not isinstance(value, list):
            raise TypeError(f"{key!r} is not a list")
        return list(value)

    def field_map(self, language: str) -> dict[str, str]:
        """Localized key -> canonical key for a language (en if unknown)."""
        return dict(self._field_maps.get(language, self._field_maps["en"]))

    def localized_field(self, canonical: str, language: str) -> str:
        for localized, canon in self.field_map(language).items():
            if canon == canonical:
                return localized
        return canonical

    def label_map(self, language: str) -> dict[str, str]:
        """Localized overall value -> canonical wire name, including English."""
        merged = dict(self._label_values["en"])
        merged.update(self._label_values.get(language, {}))
        return merged

    def localized_labels(self, language: str) -> list[str]:
        return list(self._label_values.get(language, self._label_values["en"]))

    def refusal_patterns(self, language: str) -> list[str]:
        patterns = list(self._refusals.get("en", []))
        if language != "en":
            patterns.extend(self._refusals.get(language, []))
        return patterns


def load_translations(path: "str | Path | None" = None) -> TranslationTable:
    if path is None:
        text = resources.files("polycomment.judge").joinpath("data/translations.json").read_text()
    else:
        text = Path(path).read_text()
    return TranslationTable(json.loads(text))
