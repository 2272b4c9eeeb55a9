"""Feature tables: labeled datasets for training and the feature CSV format.

The feature CSV is the interchange surface between extraction and the
classifiers: one row per record, all ten geometric features, full float
precision. Training selects either the basic (L, W, alpha) columns or
the full set.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .errors import MalformedLineError
from .geometry import FEATURE_NAMES_BASIC, FEATURE_NAMES_EXTENDED, ShapeFeatures
from .textio import format_float, iter_data_lines

FEATURE_CSV_HEADER = "record_id,label," + ",".join(FEATURE_NAMES_EXTENDED)

FEATURE_MODES = ("basic", "extended")


def feature_names_for_mode(mode: str) -> tuple[str, ...]:
    if mode == "basic":
        return FEATURE_NAMES_BASIC
    if mode == "extended":
        return FEATURE_NAMES_EXTENDED
    raise ValueError(f"feature mode must be one of {FEATURE_MODES}")


@dataclass(frozen=True)
class FeatureRow:
    """One feature vector, optionally labeled."""

    values: np.ndarray
    label_index: Optional[int] = None

    def __post_init__(self) -> None:
        values = np.asarray(self.values, dtype=np.float64)
        if values.ndim != 1:
            raise ValueError("values must be one-dimensional")
        if not np.isfinite(values).all():
            raise ValueError("feature values must be finite")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)


@dataclass(frozen=True)
class LabeledDataset:
    """Feature matrix with dense integer labels.

    features is (n, d) float64, labels is (n,) int with every value in
    [0, num_classes). A class may be empty here; training operations that
    need every class populated raise EmptyClassError themselves.
    """

    features: np.ndarray
    labels: np.ndarray
    num_classes: int
    feature_names: tuple[str, ...]

    def __post_init__(self) -> None:
        features = np.asarray(self.features, dtype=np.float64)
        labels = np.asarray(self.labels, dtype=np.int64)
        if features.ndim != 2:
            raise ValueError("features must be an (n, d) matrix")
        if labels.shape != (features.shape[0],):
            raise ValueError("labels must align with feature rows")
        if not np.isfinite(features).all():
            raise ValueError("features must be finite")
        if self.num_classes < 2:
            raise ValueError("need at least 2 classes")
        if features.shape[1] != len(self.feature_names):
            raise ValueError("feature_names must match feature columns")
        if labels.size and (labels.min() < 0 or labels.max() >= self.num_classes):
            raise ValueError("labels must lie in [0, num_classes)")
        features.setflags(write=False)
        labels.setflags(write=False)
        object.__setattr__(self, "features", features)
        object.__setattr__(self, "labels", labels)

    @classmethod
    def from_rows(
        cls,
        rows: Sequence[FeatureRow],
        num_classes: int,
        feature_names: Sequence[str],
    ) -> "LabeledDataset":
        if not rows:
            raise ValueError("need at least one row")
        if any(row.label_index is None for row in rows):
            raise ValueError("all rows must be labeled")
        features = np.stack([row.values for row in rows])
        labels = np.array([row.label_index for row in rows], dtype=np.int64)
        return cls(
            features=features,
            labels=labels,
            num_classes=num_classes,
            feature_names=tuple(feature_names),
        )

    @property
    def n_rows(self) -> int:
        return int(self.features.shape[0])

    @property
    def n_features(self) -> int:
        return int(self.features.shape[1])

    def class_counts(self) -> np.ndarray:
        return np.bincount(self.labels, minlength=self.num_classes)

    def subset(self, row_indices: np.ndarray) -> "LabeledDataset":
        return LabeledDataset(
            features=self.features[row_indices],
            labels=self.labels[row_indices],
            num_classes=self.num_classes,
            feature_names=self.feature_names,
        )


@dataclass(frozen=True)
class FeatureTable:
    """Parsed feature CSV: ids, label names and the full feature matrix."""

    record_ids: tuple[str, ...]
    label_names: tuple[str, ...]
    values: np.ndarray  # (n, 10) in FEATURE_NAMES_EXTENDED order

    @property
    def class_names(self) -> tuple[str, ...]:
        return tuple(sorted(set(self.label_names)))

    def to_dataset(self, mode: str = "basic") -> LabeledDataset:
        names = feature_names_for_mode(mode)
        cols = [FEATURE_NAMES_EXTENDED.index(n) for n in names]
        index_of = {name: i for i, name in enumerate(self.class_names)}
        labels = np.array([index_of[n] for n in self.label_names], dtype=np.int64)
        return LabeledDataset(
            features=self.values[:, cols],
            labels=labels,
            num_classes=len(self.class_names),
            feature_names=names,
        )


def feature_csv_row(record_id: str, label_name: str, feats: ShapeFeatures) -> str:
    values = feats.as_vector(extended=True)
    return ",".join([record_id, label_name] + [format_float(v) for v in values])


def parse_feature_csv(text: str) -> FeatureTable:
    """Parse a feature CSV (header required, '#' comments skipped)."""
    record_ids: list[str] = []
    label_names: list[str] = []
    rows: list[list[float]] = []
    header_seen = False
    for line_no, line in iter_data_lines(text):
        if not header_seen:
            if line != FEATURE_CSV_HEADER:
                raise MalformedLineError(
                    line_no, f"line {line_no}: expected feature CSV header"
                )
            header_seen = True
            continue
        parts = line.split(",")
        if len(parts) != 2 + len(FEATURE_NAMES_EXTENDED):
            raise MalformedLineError(
                line_no,
                f"line {line_no}: expected {2 + len(FEATURE_NAMES_EXTENDED)} fields",
            )
        record_ids.append(parts[0])
        label_names.append(parts[1])
        try:
            rows.append([float(v) for v in parts[2:]])
        except ValueError:
            raise MalformedLineError(
                line_no, f"line {line_no}: non-numeric feature value"
            ) from None
    if not header_seen:
        raise MalformedLineError(0, "feature CSV has no header line")
    values = (
        np.array(rows, dtype=np.float64)
        if rows
        else np.empty((0, len(FEATURE_NAMES_EXTENDED)))
    )
    return FeatureTable(
        record_ids=tuple(record_ids), label_names=tuple(label_names), values=values
    )
