"""Synthetic ellipse-arc record generator for desk-scale experiments.

Each class is an ellipse family: n_points samples (a*cos(theta_i),
b*sin(theta_i)) at equally spaced theta, rotated, translated, plus isotropic
Gaussian noise. Output mimics the structure of real probe sweeps closely
enough to exercise the whole pipeline without any acquisition hardware.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .errors import BadSpecError
from .ingest import ClassLabel
from .preprocess import PointCloud2D
from .rng import SplitMix64


@dataclass(frozen=True)
class SynthClassSpec:
    name: str
    n_points: int
    center: tuple[float, float]
    a: float
    b: float
    rotation_deg: float
    noise_sigma: float
    n_records: int

    def __post_init__(self) -> None:
        if not self.name or any(ch.isspace() for ch in self.name):
            raise BadSpecError(f"class name must be non-empty without spaces: {self.name!r}")
        if "," in self.name or self.name.startswith("#"):
            raise BadSpecError(f"class name may not contain ',' or start with '#': {self.name!r}")
        if self.n_points < 16:
            raise BadSpecError(f"n_points must be >= 16, got {self.n_points}")
        if not (self.a >= self.b > 0):
            raise BadSpecError(f"axis lengths must satisfy a >= b > 0, got ({self.a}, {self.b})")
        if self.noise_sigma < 0:
            raise BadSpecError(f"noise_sigma must be >= 0, got {self.noise_sigma}")
        if self.n_records < 1:
            raise BadSpecError(f"n_records must be >= 1, got {self.n_records}")


@dataclass(frozen=True)
class SynthSpec:
    classes: tuple[SynthClassSpec, ...]

    def __post_init__(self) -> None:
        if not self.classes:
            raise BadSpecError("spec needs at least one class")
        names = [c.name for c in self.classes]
        if len(set(names)) != len(names):
            raise BadSpecError("duplicate class names in spec")


def parse_synth_spec(text: str) -> SynthSpec:
    """Parse a JSON synthesis spec; full lines starting with '#' are ignored.

    {"classes": [{"name": ..., "n_points": ..., "center": [x, y],
                  "axis_lengths": [a, b], "rotation_deg": ...,
                  "noise_sigma": ..., "n_records": ...}, ...]}

    name, center, rotation_deg and noise_sigma are optional.
    """
    stripped = "\n".join(
        line for line in text.splitlines() if not line.lstrip().startswith("#")
    )
    try:
        doc = json.loads(stripped)
    except json.JSONDecodeError as exc:
        raise BadSpecError(f"spec is not valid JSON: {exc}") from exc
    if not isinstance(doc, dict) or "classes" not in doc:
        raise BadSpecError("spec must be an object with a 'classes' array")
    raw_classes = doc["classes"]
    if not isinstance(raw_classes, list):
        raise BadSpecError("'classes' must be an array")
    classes = []
    for i, entry in enumerate(raw_classes):
        if not isinstance(entry, dict):
            raise BadSpecError(f"class {i}: expected an object")
        try:
            axes = entry["axis_lengths"]
            n_points = int(entry["n_points"])
            n_records = int(entry["n_records"])
        except KeyError as exc:
            raise BadSpecError(f"class {i}: missing field {exc.args[0]!r}") from exc
        if not isinstance(axes, list) or len(axes) != 2:
            raise BadSpecError(f"class {i}: axis_lengths must be [a, b]")
        center = entry.get("center", [0.0, 0.0])
        if not isinstance(center, list) or len(center) != 2:
            raise BadSpecError(f"class {i}: center must be [x, y]")
        try:
            classes.append(
                SynthClassSpec(
                    name=str(entry.get("name", f"class{i:02d}")),
                    n_points=n_points,
                    center=(float(center[0]), float(center[1])),
                    a=float(axes[0]),
                    b=float(axes[1]),
                    rotation_deg=float(entry.get("rotation_deg", 0.0)),
                    noise_sigma=float(entry.get("noise_sigma", 0.0)),
                    n_records=n_records,
                )
            )
        except (TypeError, ValueError) as exc:
            raise BadSpecError(f"class {i}: {exc}") from exc
    return SynthSpec(classes=tuple(classes))


def generate_synthetic(
    spec: SynthSpec, seed: int
) -> list[tuple[PointCloud2D, ClassLabel]]:
    """One (cloud, label) pair per record, class by class, record by record.

    A single generator is streamed through the whole spec, so the output is
    a pure function of (spec, seed) and any change to an earlier class
    reshuffles everything after it.
    """
    rng = SplitMix64(seed)
    out: list[tuple[PointCloud2D, ClassLabel]] = []
    for index, cls in enumerate(spec.classes):
        label = ClassLabel(name=cls.name, index=index)
        theta = 2.0 * np.pi * np.arange(cls.n_points) / cls.n_points
        unit = np.column_stack((cls.a * np.cos(theta), cls.b * np.sin(theta)))
        phi = np.deg2rad(cls.rotation_deg)
        rot = np.array([[np.cos(phi), -np.sin(phi)], [np.sin(phi), np.cos(phi)]])
        base = unit @ rot.T + np.array(cls.center)
        for _ in range(cls.n_records):
            points = base
            if cls.noise_sigma > 0:
                noise = np.array(
                    [[rng.normal(), rng.normal()] for _ in range(cls.n_points)]
                )
                points = base + cls.noise_sigma * noise
            out.append((PointCloud2D(points=points), label))
    return out
