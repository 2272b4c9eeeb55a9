"""Parsing of impedance records and dataset manifests.

A record file holds one acquisition: one "RE IM" (or "RE,IM") pair per
line, in ohms, in acquisition order. A manifest maps record files to
class labels, one "path,label" per line. Both formats skip blank lines
and '#' comments. Records and manifests are immutable once built and
safe to share across workers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

from .errors import (
    DuplicatePathError,
    EctShapeError,
    EmptyRecordError,
    FileUnreadableError,
    MalformedLineError,
    NonFiniteSampleError,
)
from .textio import format_float, iter_data_lines

DEFAULT_SAMPLE_RATE_HZ = 10_000.0


@dataclass(frozen=True)
class ClassLabel:
    """A defect class: human-readable name plus dense index."""

    name: str
    index: int

    def __post_init__(self) -> None:
        if not self.name:
            raise ValueError("class name must be non-empty")
        if self.index < 0:
            raise ValueError("class index must be non-negative")


@dataclass(frozen=True)
class ImpedanceRecord:
    """One acquisition: complex impedance samples plus metadata.

    samples is an (n, 2) float64 array of (resistance, reactance) pairs
    in acquisition order.
    """

    record_id: str
    samples: np.ndarray
    sample_rate_hz: float = DEFAULT_SAMPLE_RATE_HZ
    label: Optional[ClassLabel] = None

    def __post_init__(self) -> None:
        samples = np.asarray(self.samples, dtype=np.float64)
        if samples.ndim != 2 or samples.shape[1] != 2 or samples.shape[0] == 0:
            raise ValueError("samples must be a non-empty (n, 2) array")
        if not np.isfinite(samples).all():
            raise ValueError("samples must be finite")
        if not (self.sample_rate_hz > 0):
            raise ValueError("sample_rate_hz must be positive")
        samples.setflags(write=False)
        object.__setattr__(self, "samples", samples)

    @property
    def n_samples(self) -> int:
        return int(self.samples.shape[0])


@dataclass(frozen=True)
class DatasetManifest:
    """Ordered (path, label_name) entries plus the sorted class names."""

    entries: tuple[tuple[str, str], ...]
    class_names: tuple[str, ...]
    _index_of: dict = field(repr=False, compare=False, default_factory=dict)

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "_index_of", {name: i for i, name in enumerate(self.class_names)}
        )
        for _, label_name in self.entries:
            if label_name not in self._index_of:
                raise ValueError(f"label {label_name!r} missing from class_names")

    def label_for(self, name: str) -> ClassLabel:
        return ClassLabel(name=name, index=self._index_of[name])

    @property
    def num_classes(self) -> int:
        return len(self.class_names)


def parse_record(
    text: str,
    record_id: str,
    sample_rate_hz: float = DEFAULT_SAMPLE_RATE_HZ,
    label: Optional[ClassLabel] = None,
) -> ImpedanceRecord:
    """Parse record text into an :class:`ImpedanceRecord`.

    Data lines hold exactly two numeric fields (real part, imaginary
    part) separated by whitespace or commas; file order is preserved.

    Raises
    ------
    MalformedLineError
        Non-numeric or wrong-arity line (1-based file line number).
    NonFiniteSampleError
        A field parsed to NaN or infinity.
    EmptyRecordError
        No data lines at all.
    """
    rows: list[tuple[float, float]] = []
    for line_no, line in iter_data_lines(text):
        fields = line.replace(",", " ").split()
        if len(fields) != 2:
            raise MalformedLineError(
                line_no, f"line {line_no}: expected 2 fields, got {len(fields)}"
            )
        try:
            re_part, im_part = float(fields[0]), float(fields[1])
        except ValueError:
            raise MalformedLineError(
                line_no, f"line {line_no}: non-numeric field"
            ) from None
        if not (math.isfinite(re_part) and math.isfinite(im_part)):
            raise NonFiniteSampleError(line_no)
        rows.append((re_part, im_part))
    if not rows:
        raise EmptyRecordError(f"record {record_id!r} has no data lines")
    samples = np.array(rows, dtype=np.float64)
    return ImpedanceRecord(
        record_id=record_id, samples=samples, sample_rate_hz=sample_rate_hz, label=label
    )


def record_to_text(record: ImpedanceRecord) -> str:
    """Serialize a record to the canonical format at full precision.

    Re-parsing the output yields bitwise-equal sample values.
    """
    lines = [
        f"{format_float(re)} {format_float(im)}" for re, im in record.samples
    ]
    return "\n".join(lines) + "\n"


def load_manifest(text: str) -> DatasetManifest:
    """Parse manifest text ("path,label" lines) into a DatasetManifest.

    Class names are the sorted deduplicated label names; class indices
    follow that sorted order.
    """
    entries: list[tuple[str, str]] = []
    seen_paths: set[str] = set()
    for line_no, line in iter_data_lines(text):
        parts = line.split(",")
        if len(parts) != 2 or not parts[0].strip() or not parts[1].strip():
            raise MalformedLineError(
                line_no, f"line {line_no}: expected 'path,label'"
            )
        path, label_name = parts[0].strip(), parts[1].strip()
        if path in seen_paths:
            raise DuplicatePathError(path)
        seen_paths.add(path)
        entries.append((path, label_name))
    class_names = tuple(sorted({label for _, label in entries}))
    return DatasetManifest(entries=tuple(entries), class_names=class_names)


def manifest_to_text(manifest: DatasetManifest) -> str:
    return "\n".join(f"{path},{label}" for path, label in manifest.entries) + "\n"


def load_dataset(
    manifest: DatasetManifest,
    reader: Callable[[str], str],
    sample_rate_hz: float = DEFAULT_SAMPLE_RATE_HZ,
) -> list[ImpedanceRecord]:
    """Load one labeled record per manifest entry, in manifest order.

    `reader` maps a manifest path to that file's text; OSError from it is
    reported as FileUnreadableError. Parse errors are annotated with the
    offending path and re-raised unchanged otherwise.
    """
    records: list[ImpedanceRecord] = []
    for path, label_name in manifest.entries:
        try:
            text = reader(path)
        except OSError as exc:
            raise FileUnreadableError(path, f"cannot read {path}: {exc}") from exc
        try:
            record = parse_record(
                text,
                record_id=_record_id_from_path(path),
                sample_rate_hz=sample_rate_hz,
                label=manifest.label_for(label_name),
            )
        except EctShapeError as exc:
            exc.args = (f"{path}: {exc.args[0] if exc.args else ''}",)
            raise
        records.append(record)
    return records


def _record_id_from_path(path: str) -> str:
    name = path.replace("\\", "/").rsplit("/", 1)[-1]
    return name.rsplit(".", 1)[0] if "." in name else name
