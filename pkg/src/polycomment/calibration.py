"""Score calibration against ordinal labels, plus agreement statistics.

Per-label score distributions are modeled with Gaussian kernel density
estimates (Silverman's rule of thumb for the bandwidth).  Decision regions
come from the prior-weighted argmax over a fixed evaluation grid; agreement
is Cohen's kappa with quadratic (default) or linear disagreement weights.
"""

from __future__ import annotations

import bisect
import enum
import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Mapping, NamedTuple, Sequence

import numpy as np


class OrdinalLabel(enum.IntEnum):
    """Three-way quality grade, ordered worst to best."""

    INCORRECT = 0
    PARTIALLY_CORRECT = 1
    CORRECT = 2

    @classmethod
    def parse(cls, value: "int | str | OrdinalLabel") -> "OrdinalLabel":
        if isinstance(value, OrdinalLabel):
            return value
        if isinstance(value, int):
            return cls(value)
        key = value.strip().lower().replace(" ", "_")
        try:
            return cls[key.upper()]
        except KeyError:
            raise ValueError(f"not an ordinal label: {value!r}") from None

    @property
    def wire_name(self) -> str:
        return self.name.lower()


class InsufficientClassSupportError(ValueError):
    """A label has too few scores to fit a density."""


def silverman_bandwidth(points: np.ndarray) -> tuple[float, bool]:
    """0.9 * min(stddev, IQR/1.34) * n^(-1/5), with a floor for degenerate data.

    Returns (bandwidth, degenerate); degenerate means every point was equal
    and the floor was used.
    """
    n = len(points)
    std = float(np.std(points))
    q75, q25 = np.percentile(points, [75, 25])
    iqr_scale = float(q75 - q25) / 1.34
    scale = min(std, iqr_scale)
    if scale <= 0.0:
        scale = max(std, iqr_scale)
    if scale <= 0.0:
        return max(abs(float(np.mean(points))), 1.0) * 1e-3 * n ** (-0.2), True
    return 0.9 * scale * n ** (-0.2), False


@dataclass(frozen=True)
class DensityModel:
    """Gaussian KDE over one label's scores, carrying that label's prior."""

    points: np.ndarray
    bandwidth: float
    prior: float
    kernel: str = "gaussian"
    degenerate: bool = False

    def density(self, xs: "np.ndarray | float") -> np.ndarray:
        """Unweighted density evaluated at xs."""
        xs = np.asarray(xs, dtype=float)
        z = (xs[..., None] - self.points) / self.bandwidth
        total = np.exp(-0.5 * z * z).sum(axis=-1)
        return total / (len(self.points) * self.bandwidth * math.sqrt(2.0 * math.pi))

    def weighted_density(self, xs: "np.ndarray | float") -> np.ndarray:
        return self.prior * self.density(xs)


def fit_kde(scores: Sequence[float], prior: float) -> DensityModel:
    """Fit a Gaussian KDE to one label's scores.

    Requires at least two scores; the prior must lie in (0, 1].
    """
    points = np.asarray(list(scores), dtype=float)
    if points.ndim != 1 or len(points) < 2:
        raise InsufficientClassSupportError(
            f"need at least 2 scores to fit a density, got {points.size}"
        )
    if not np.isfinite(points).all():
        raise ValueError("scores must be finite")
    if not 0.0 < prior <= 1.0:
        raise ValueError(f"prior must be in (0, 1], got {prior}")
    bandwidth, degenerate = silverman_bandwidth(points)
    return DensityModel(points=points, bandwidth=bandwidth, prior=prior, degenerate=degenerate)


@dataclass(frozen=True)
class LabelRegions:
    """Decision regions over the score axis, derived from per-label KDEs.

    ``grid`` holds the ordered evaluation points, ``winners`` the winning
    label per point, ``boundaries`` the crossover scores (midpoints between
    adjacent grid points whose winner differs).  ``labels`` is the label
    alphabet in ascending ordinal order.
    """

    grid: np.ndarray
    winners: np.ndarray
    boundaries: tuple[float, ...]
    labels: tuple[int, ...]
    metadata: Mapping[str, Any] = field(default_factory=dict)

    @property
    def region_labels(self) -> tuple[int, ...]:
        """Winning label of each region, left to right (len(boundaries) + 1)."""
        out = [int(self.winners[0])]
        for i in range(1, len(self.winners)):
            if self.winners[i] != self.winners[i - 1]:
                out.append(int(self.winners[i]))
        return tuple(out)

    def to_json(self) -> dict[str, Any]:
        return {
            "grid": [float(x) for x in self.grid],
            "winners": [int(w) for w in self.winners],
            "boundaries": list(self.boundaries),
            "labels": list(self.labels),
            "metadata": dict(self.metadata),
        }

    @classmethod
    def from_json(cls, obj: Mapping[str, Any]) -> "LabelRegions":
        return cls(
            grid=np.asarray(obj["grid"], dtype=float),
            winners=np.asarray(obj["winners"], dtype=int),
            boundaries=tuple(obj["boundaries"]),
            labels=tuple(obj["labels"]),
            metadata=dict(obj.get("metadata") or {}),
        )

    def save(self, path: "str | Path") -> None:
        Path(path).write_text(json.dumps(self.to_json()))

    @classmethod
    def load(cls, path: "str | Path") -> "LabelRegions":
        return cls.from_json(json.loads(Path(path).read_text()))


def derive_regions(models: Mapping[int, DensityModel], grid_size: int = 1024) -> LabelRegions:
    """Prior-weighted argmax over a shared grid.

    The grid spans the pooled score support padded by three times the largest
    bandwidth.  Ties go to the lower ordinal label.
    """
    if len(models) < 2:
        raise ValueError("need densities for at least two labels")
    if grid_size < 2:
        raise ValueError("grid_size must be >= 2")
    labels = tuple(sorted(int(label) for label in models))
    pooled = np.concatenate([models[label].points for label in labels])
    pad = 3.0 * max(models[label].bandwidth for label in labels)
    grid = np.linspace(float(pooled.min()) - pad, float(pooled.max()) + pad, grid_size)
    densities = np.stack([models[label].weighted_density(grid) for label in labels])
    # argmax returns the first maximum, and rows are in ascending ordinal
    # order, so exact ties resolve to the lower label.
    winners = np.asarray(labels, dtype=int)[np.argmax(densities, axis=0)]
    boundaries = [
        float((grid[i - 1] + grid[i]) / 2.0)
        for i in range(1, grid_size)
        if winners[i] != winners[i - 1]
    ]
    metadata = {
        "kernel": "gaussian",
        "grid_size": grid_size,
        "bandwidths": {str(label): models[label].bandwidth for label in labels},
        "priors": {str(label): models[label].prior for label in labels},
        "degenerate": {str(label): models[label].degenerate for label in labels},
    }
    return LabelRegions(
        grid=grid,
        winners=winners,
        boundaries=tuple(boundaries),
        labels=labels,
        metadata=metadata,
    )


def classify(score: float, regions: LabelRegions) -> int:
    """Deterministic region lookup.

    Scores outside the grid clamp to the nearest end; a score exactly on a
    boundary takes the lower ordinal of the two adjacent regions.
    """
    if math.isnan(score):
        raise ValueError("cannot classify NaN")
    clamped = min(max(float(score), float(regions.grid[0])), float(regions.grid[-1]))
    region_labels = regions.region_labels
    k = bisect.bisect_left(regions.boundaries, clamped)
    if k < len(regions.boundaries) and clamped == regions.boundaries[k]:
        return min(region_labels[k], region_labels[k + 1])
    return region_labels[k]


class KappaResult(NamedTuple):
    value: float
    degenerate: bool = False


def weighted_kappa(
    rater_a: Sequence[int],
    rater_b: Sequence[int],
    weighting: str = "quadratic",
    labels: Sequence[int] | None = None,
) -> KappaResult:
    """Cohen's kappa with quadratic or linear disagreement weights.

    Weights come from positions on the label alphabet: w[i][j] =
    ((i - j) / (k - 1)) ** 2 for quadratic, |i - j| / (k - 1) for linear.
    The alphabet defaults to the sorted union of observed labels.  Zero
    expected disagreement is degenerate: the result is 1.0 when observed
    disagreement is also zero, else 0.0.
    """
    a = [int(x) for x in rater_a]
    b = [int(x) for x in rater_b]
    if len(a) != len(b):
        raise ValueError("rater sequences differ in length")
    if not a:
        raise ValueError("no ratings")
    if weighting not in ("quadratic", "linear"):
        raise ValueError(f"unknown weighting {weighting!r}")
    alphabet = tuple(sorted(set(a) | set(b))) if labels is None else tuple(labels)
    index = {label: i for i, label in enumerate(alphabet)}
    k = len(alphabet)
    if k == 1:
        return KappaResult(1.0, degenerate=True)
    observed = np.zeros((k, k), dtype=float)
    for x, y in zip(a, b):
        observed[index[x], index[y]] += 1.0
    n = float(len(a))
    expected = np.outer(observed.sum(axis=1), observed.sum(axis=0)) / n
    positions = np.arange(k, dtype=float)
    diff = np.abs(positions[:, None] - positions[None, :]) / (k - 1)
    weights = diff**2 if weighting == "quadratic" else diff
    disagreement_o = float((weights * observed).sum())
    disagreement_e = float((weights * expected).sum())
    if disagreement_e == 0.0:
        return KappaResult(1.0 if disagreement_o == 0.0 else 0.0, degenerate=True)
    return KappaResult(1.0 - disagreement_o / disagreement_e, False)


@dataclass(frozen=True)
class ConfusionResult:
    """Raw and normalized confusion counts between two label sequences."""

    matrix: np.ndarray
    row_normalized: np.ndarray
    col_normalized: np.ndarray
    labels: tuple[int, ...]
    empty_rows: tuple[int, ...]
    empty_cols: tuple[int, ...]


def confusion(
    reference: Sequence[int],
    predicted: Sequence[int],
    labels: Sequence[int] | None = None,
) -> ConfusionResult:
    """Confusion matrix with rows = reference labels, columns = predicted.

    Rows or columns with no mass normalize to zeros and are flagged.
    """
    ref = [int(x) for x in reference]
    pred = [int(x) for x in predicted]
    if len(ref) != len(pred):
        raise ValueError("label sequences differ in length")
    alphabet = tuple(sorted(set(ref) | set(pred))) if labels is None else tuple(labels)
    index = {label: i for i, label in enumerate(alphabet)}
    k = len(alphabet)
    matrix = np.zeros((k, k), dtype=int)
    for x, y in zip(ref, pred):
        matrix[index[x], index[y]] += 1
    row_sums = matrix.sum(axis=1, keepdims=True)
    col_sums = matrix.sum(axis=0, keepdims=True)
    row_norm = np.divide(matrix, row_sums, out=np.zeros(matrix.shape), where=row_sums > 0)
    col_norm = np.divide(matrix, col_sums, out=np.zeros(matrix.shape), where=col_sums > 0)
    empty_rows = tuple(alphabet[i] for i in range(k) if row_sums[i, 0] == 0)
    empty_cols = tuple(alphabet[i] for i in range(k) if col_sums[0, i] == 0)
    return ConfusionResult(matrix, row_norm, col_norm, alphabet, empty_rows, empty_cols)


class NoiseF1Result(NamedTuple):
    value: float
    degenerate: bool = False


def binary_noise_f1(
    genuine_scores: Sequence[float], noise_scores: Sequence[float]
) -> NoiseF1Result:
    """F1 for separating noise from genuine predictions by score alone.

    Fits one density per class (empirical priors), derives regions with
    genuine = 0 and noise = 1, classifies every score, and reports F1 with
    noise as the positive class.  Degenerate when either density collapsed or
    no boundary separates the classes.
    """
    genuine = list(genuine_scores)
    noise = list(noise_scores)
    total = len(genuine) + len(noise)
    if not genuine or not noise:
        raise ValueError("need scores for both classes")
    models = {
        0: fit_kde(genuine, len(genuine) / total),
        1: fit_kde(noise, len(noise) / total),
    }
    regions = derive_regions(models)
    tp = sum(1 for s in noise if classify(s, regions) == 1)
    fn = len(noise) - tp
    fp = sum(1 for s in genuine if classify(s, regions) == 1)
    degenerate = (
        models[0].degenerate or models[1].degenerate or not regions.boundaries
    )
    denom = 2 * tp + fp + fn
    if denom == 0:
        return NoiseF1Result(0.0, True)
    return NoiseF1Result(2 * tp / denom, degenerate)
