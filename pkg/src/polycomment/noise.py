"""Seeded noise sequences used as robustness floors for metric scores."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

NOISE_KINDS = ("uniform", "targeted")


@dataclass(frozen=True)
class NoiseSpec:
    """Recipe for one noise sequence: kind, target length and RNG seed."""

    kind: str
    target_length: int
    seed: int

    def __post_init__(self) -> None:
        if self.kind not in NOISE_KINDS:
            raise ValueError(f"kind must be one of {NOISE_KINDS}, got {self.kind!r}")
        if self.target_length < 0:
            raise ValueError("target_length must be >= 0")


def uniform_noise(vocabulary: Sequence[str], spec: NoiseSpec) -> list[str]:
    """Length-matched draw of tokens uniformly from the vocabulary."""
    if spec.kind != "uniform":
        raise ValueError(f"spec kind is {spec.kind!r}, expected 'uniform'")
    if not vocabulary:
        raise ValueError("empty vocabulary")
    rng = np.random.default_rng(spec.seed)
    idx = rng.integers(0, len(vocabulary), size=spec.target_length)
    return [vocabulary[i] for i in idx]


def targeted_noise(context_tokens: Sequence[str], spec: NoiseSpec) -> list[str]:
    """Length-matched draw from the context token multiset, with replacement.

    Sampling positions of the multiset keeps token frequencies: a token that
    appears three times in the context is three times as likely per draw.
    """
    if spec.kind != "targeted":
        raise ValueError(f"spec kind is {spec.kind!r}, expected 'targeted'")
    if not context_tokens:
        raise ValueError("empty context")
    rng = np.random.default_rng(spec.seed)
    idx = rng.integers(0, len(context_tokens), size=spec.target_length)
    return [context_tokens[i] for i in idx]
