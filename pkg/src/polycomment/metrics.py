"""Classical overlap metrics with pinned formulas.

BLEU is the modified n-gram precision with a brevity penalty; smoothing adds
one to numerator and denominator, only for orders n >= 2 and only when that
order's precision would otherwise be zero.  ROUGE-L is the LCS variant,
computed in exact rational arithmetic and converted to float at the end.
METEOR uses the classic parameterization: harmonic mean weighted 9:1 toward
recall and fragmentation penalty gamma * (chunks/matches) ** beta with
gamma = 0.5, beta = 3.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from .tokenization import TokenizedText


class SchemeMismatchError(ValueError):
    """Candidate and reference were tokenized under different schemes."""


def _check_schemes(candidate: TokenizedText, references: Sequence[TokenizedText]) -> None:
    for ref in references:
        if ref.scheme != candidate.scheme:
            raise SchemeMismatchError(
                f"cannot compare scheme {candidate.scheme!r} against {ref.scheme!r}"
            )


def _ngram_counts(tokens: Sequence[str], n: int) -> Counter:
    return Counter(tuple(tokens[i : i + n]) for i in range(len(tokens) - n + 1))


def bleu(candidate: TokenizedText, references: Sequence[TokenizedText], max_n: int = 4) -> float:
    """Modified n-gram precision BLEU against one or more references.

    The brevity penalty uses the reference length closest to the candidate
    (ties resolved toward the shorter reference).  Orders longer than the
    candidate contribute smoothed full precision; the brevity penalty
    dominates for such short candidates.
    """
    if not references:
        raise ValueError("bleu needs at least one reference")
    if max_n < 1:
        raise ValueError("max_n must be >= 1")
    _check_schemes(candidate, references)
    cand = candidate.tokens
    c = len(cand)
    if c == 0:
        return 0.0
    log_sum = 0.0
    for n in range(1, max_n + 1):
        cand_counts = _ngram_counts(cand, n)
        total = sum(cand_counts.values())
        best: Counter = Counter()
        for ref in references:
            for gram, k in _ngram_counts(ref.tokens, n).items():
                if k > best[gram]:
                    best[gram] = k
        matched = sum(min(k, best[gram]) for gram, k in cand_counts.items())
        if matched == 0:
            if n == 1:
                return 0.0
            precision = (matched + 1) / (total + 1)
        else:
            precision = matched / total
        log_sum += math.log(precision)
    r = min((abs(len(ref.tokens) - c), len(ref.tokens)) for ref in references)[1]
    brevity = 1.0 if c >= r else math.exp(1.0 - r / c)
    return brevity * math.exp(log_sum / max_n)


@dataclass(frozen=True)
class RougeScore:
    precision: float
    recall: float
    f1: float


def _lcs_length(a: Sequence[str], b: Sequence[str]) -> int:
    if not a or not b:
        return 0
    prev = [0] * (len(b) + 1)
    for x in a:
        cur = [0]
        for j, y in enumerate(b, start=1):
            if x == y:
                cur.append(prev[j - 1] + 1)
            else:
                cur.append(max(prev[j], cur[j - 1]))
        prev = cur
    return prev[-1]


def rouge_l(candidate: TokenizedText, reference: TokenizedText) -> RougeScore:
    """LCS-based precision, recall and F1 against a single reference."""
    _check_schemes(candidate, [reference])
    if not candidate.tokens or not reference.tokens:
        return RougeScore(0.0, 0.0, 0.0)
    lcs = _lcs_length(candidate.tokens, reference.tokens)
    if lcs == 0:
        return RougeScore(0.0, 0.0, 0.0)
    precision = Fraction(lcs, len(candidate.tokens))
    recall = Fraction(lcs, len(reference.tokens))
    f1 = 2 * precision * recall / (precision + recall)
    return RougeScore(float(precision), float(recall), float(f1))


Matcher = Callable[[str, str], bool]


def exact_match(a: str, b: str) -> bool:
    return a == b


def _align(
    cand: Sequence[str], ref: Sequence[str], matchers: Sequence[Matcher]
) -> list[tuple[int, int]]:
    """Greedy stage-by-stage alignment preferring the longest common runs.

    Within one stage, repeatedly picking the longest still-available run
    keeps the number of chunks low, which is what the fragmentation penalty
    measures.
    """
    matched: list[tuple[int, int]] = []
    used_c: set[int] = set()
    used_r: set[int] = set()
    for matcher in matchers:
        while True:
            best_len = 0
            best: tuple[int, int] | None = None
            for i in range(len(cand)):
                if i in used_c:
                    continue
                for j in range(len(ref)):
                    if j in used_r or not matcher(cand[i], ref[j]):
                        continue
                    k = 1
                    while (
                        i + k < len(cand)
                        and j + k < len(ref)
                        and i + k not in used_c
                        and j + k not in used_r
                        and matcher(cand[i + k], ref[j + k])
                    ):
                        k += 1
                    if k > best_len:
                        best_len, best = k, (i, j)
            if best is None:
                break
            i, j = best
            for t in range(best_len):
                matched.append((i + t, j + t))
                used_c.add(i + t)
                used_r.add(j + t)
    return sorted(matched)


def _chunk_count(pairs: Sequence[tuple[int, int]]) -> int:
    chunks = 0
    prev: tuple[int, int] | None = None
    for i, j in pairs:
        if prev is None or i != prev[0] + 1 or j != prev[1] + 1:
            chunks += 1
        prev = (i, j)
    return chunks


def meteor(
    candidate: TokenizedText,
    reference: TokenizedText,
    gamma: float = 0.5,
    beta: float = 3.0,
    matchers: Sequence[Matcher] = (exact_match,),
) -> float:
    """Single-reference METEOR.

    Additional matcher stages (stemming, synonyms) can be appended after the
    exact stage; each stage only sees tokens the earlier stages left
    unmatched.
    """
    _check_schemes(candidate, [reference])
    cand, ref = candidate.tokens, reference.tokens
    if not cand or not ref:
        return 0.0
    pairs = _align(cand, ref, matchers)
    m = len(pairs)
    if m == 0:
        return 0.0
    precision = Fraction(m, len(cand))
    recall = Fraction(m, len(ref))
    fmean = 10 * precision * recall / (recall + 9 * precision)
    penalty = gamma * (_chunk_count(pairs) / m) ** beta
    return float(fmean) * (1.0 - penalty)
