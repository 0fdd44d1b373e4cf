"""Natural-language verification for extracted comments.

The detector interface is a plain callable so an external detector can be
plugged in; the built-in one is a small heuristic (script ranges for Greek
and Han, stopword voting for Latin-script languages) that needs no model
downloads.
"""

from __future__ import annotations

import re
from typing import Callable, NamedTuple


class DetectionResult(NamedTuple):
    tag: str
    confidence: float


LanguageDetector = Callable[[str], DetectionResult]


class LanguageCheck(NamedTuple):
    detected: str
    confidence: float
    accepted: bool


_WORD_RX = re.compile(r"[^\W\d_]+", re.UNICODE)

_STOPWORDS: dict[str, frozenset[str]] = {
    "en": frozenset(
        "the of and to is in that it for this with are as be not on an or if "
        "returns return when from by a each all".split()
    ),
    "nl": frozenset(
        "de het een van en is in dat voor met wordt niet zijn deze om te als "
        "geeft terug bij aan der naar worden ook".split()
    ),
    "pl": frozenset(
        "i w z na do nie jest się że to dla jako przez lub oraz czy zwraca "
        "gdy od po być są jeśli".split()
    ),
}

_POLISH_MARKS = set("ąćęłńóśźż")


def _script_ratio(text: str, predicate: Callable[[str], bool]) -> float:
    meaningful = [c for c in text if not c.isspace()]
    if not meaningful:
        return 0.0
    return sum(1 for c in meaningful if predicate(c)) / len(meaningful)


def _is_greek(c: str) -> bool:
    return "Ͱ" <= c <= "Ͽ" or "ἀ" <= c <= "῿"


def _is_han(c: str) -> bool:
    return "一" <= c <= "鿿" or "㐀" <= c <= "䶿" or "　" <= c <= "〿"


def detect_language(text: str) -> DetectionResult:
    """Best-effort language guess for a short comment."""
    greek = _script_ratio(text, _is_greek)
    if greek > 0.25:
        return DetectionResult("el", min(1.0, greek * 1.5))
    han = _script_ratio(text, _is_han)
    if han > 0.25:
        return DetectionResult("zh", min(1.0, han * 1.5))
    words = [w.lower() for w in _WORD_RX.findall(text)]
    if not words:
        return DetectionResult("und", 0.0)
    votes = {tag: sum(1 for w in words if w in stop) for tag, stop in _STOPWORDS.items()}
    diacritics = sum(1 for c in text.lower() if c in _POLISH_MARKS)
    if diacritics:
        votes["pl"] = votes.get("pl", 0) + diacritics
    total = sum(votes.values())
    if total == 0:
        return DetectionResult("und", 0.0)
    top = max(votes.values())
    best = min(tag for tag, v in votes.items() if v == top)
    return DetectionResult(best, votes[best] / total)


def verify_language(
    text: str,
    expected: str,
    detector: LanguageDetector = detect_language,
    threshold: float = 0.5,
) -> LanguageCheck:
    """Accept a comment only when the detector agrees confidently.

    Mismatches and low-confidence detections are both rejected; the caller
    decides what to do with rejects (drop, or queue for manual review).
    """
    detected, confidence = detector(text)
    accepted = detected == expected and confidence >= threshold
    return LanguageCheck(detected=detected, confidence=confidence, accepted=accepted)
