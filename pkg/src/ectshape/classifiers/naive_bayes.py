"""Gaussian naive Bayes with a range-scaled variance floor."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..dataset import LabeledDataset
from ..errors import DimensionMismatchError, EmptyClassError

# floor = _VAR_FLOOR_REL * (per-feature global range)^2 + _VAR_FLOOR_ABS,
# so constant-within-class features never produce a degenerate density
# spike and the floor stays unit-consistent.
_VAR_FLOOR_REL = 1e-9
_VAR_FLOOR_ABS = 1e-12


@dataclass(frozen=True)
class GnbModel:
    """Per-class feature means/variances and class priors."""

    means: np.ndarray      # (K, d)
    variances: np.ndarray  # (K, d), strictly positive
    priors: np.ndarray     # (K,), sums to 1

    def __post_init__(self) -> None:
        if not (self.variances > 0).all():
            raise ValueError("variances must be strictly positive")
        if abs(float(self.priors.sum()) - 1.0) > 1e-12:
            raise ValueError("priors must sum to 1")

    @property
    def num_classes(self) -> int:
        return int(self.means.shape[0])

    @property
    def n_features(self) -> int:
        return int(self.means.shape[1])


def train_gnb(data: LabeledDataset) -> GnbModel:
    """Fit per-class sample means and population variances.

    Variances are clamped below by a floor scaled with the squared global
    feature range; priors are the class frequencies.
    """
    n, d = data.features.shape
    k = data.num_classes
    counts = data.class_counts()
    for c in range(k):
        if counts[c] == 0:
            raise EmptyClassError(c)
    feature_range = data.features.max(axis=0) - data.features.min(axis=0)
    floor = _VAR_FLOOR_REL * feature_range**2 + _VAR_FLOOR_ABS
    means = np.empty((k, d))
    variances = np.empty((k, d))
    for c in range(k):
        rows = data.features[data.labels == c]
        means[c] = rows.mean(axis=0)
        variances[c] = np.maximum(rows.var(axis=0), floor)
    priors = counts.astype(np.float64) / n
    return GnbModel(means=means, variances=variances, priors=priors)


def gnb_log_joint(model: GnbModel, x: np.ndarray) -> np.ndarray:
    """log prior + log likelihood per class (unnormalized posterior)."""
    if x.shape != (model.n_features,):
        raise DimensionMismatchError(
            f"expected {model.n_features} features, got {x.shape}"
        )
    log_density = -0.5 * (
        np.log(2.0 * np.pi * model.variances)
        + (x - model.means) ** 2 / model.variances
    ).sum(axis=1)
    return np.log(model.priors) + log_density


def gnb_posterior(model: GnbModel, x: np.ndarray) -> np.ndarray:
    """Posterior over classes, normalized in log space."""
    log_joint = gnb_log_joint(model, x)
    shifted = np.exp(log_joint - log_joint.max())
    return shifted / shifted.sum()


def gnb_posterior_direct(model: GnbModel, x: np.ndarray) -> np.ndarray:
    """Posterior via direct density products; cross-check for the log path.

    Underflows for distant queries; only meaningful where the densities
    stay representable.
    """
    if x.shape != (model.n_features,):
        raise DimensionMismatchError(
            f"expected {model.n_features} features, got {x.shape}"
        )
    density = np.prod(
        np.exp(-((x - model.means) ** 2) / (2.0 * model.variances))
        / np.sqrt(2.0 * np.pi * model.variances),
        axis=1,
    )
    joint = model.priors * density
    return joint / joint.sum()
