"""Versioned line-oriented text format for trained models.

Layout: a magic line "ectshape-model v1 <kind>", metadata lines, then
kind-specific parameter blocks, then "end". Blank lines and '#' comments
are ignored anywhere, so tools may prepend provenance headers. Floats
carry 17 significant digits; save -> load -> save is byte-stable and
load(save(model)) reproduces every parameter bit-for-bit.
"""

from __future__ import annotations

import numpy as np

from ..errors import ModelFormatError
from ..textio import format_float, iter_data_lines
from . import TrainedModel
from .decision_tree import TreeLeaf, TreeModel, TreeNode, TreeSplit
from .naive_bayes import GnbModel
from .perceptron import MlpModel

MAGIC = "ectshape-model"
FORMAT_VERSION = "v1"


def save_model(trained: TrainedModel) -> str:
    lines = [f"{MAGIC} {FORMAT_VERSION} {trained.kind}"]
    lines.append("feature_names " + ",".join(trained.feature_names))
    lines.append(f"num_classes {trained.num_classes}")
    if trained.class_names is not None:
        lines.append("class_names " + ",".join(trained.class_names))
    if trained.kind == "nb":
        _write_gnb(lines, trained.model)
    elif trained.kind == "tree":
        _write_tree(lines, trained.model)
    else:
        _write_mlp(lines, trained.model)
    lines.append("end")
    return "\n".join(lines) + "\n"


def load_model(text: str) -> TrainedModel:
    reader = _LineReader(text)
    magic = reader.next_fields()
    if len(magic) != 3 or magic[0] != MAGIC or magic[1] != FORMAT_VERSION:
        raise ModelFormatError(f"bad model header: {' '.join(magic)!r}")
    kind = magic[2]
    if kind not in ("nb", "tree", "mlp"):
        raise ModelFormatError(f"unknown model kind {kind!r}")

    feature_names: tuple[str, ...] | None = None
    num_classes: int | None = None
    class_names: tuple[str, ...] | None = None
    while True:
        fields = reader.peek_fields()
        if fields[0] == "feature_names":
            feature_names = tuple(reader.next_rest("feature_names").split(","))
        elif fields[0] == "num_classes":
            num_classes = int(reader.next_fields()[1])
        elif fields[0] == "class_names":
            class_names = tuple(reader.next_rest("class_names").split(","))
        else:
            break
    if feature_names is None or num_classes is None:
        raise ModelFormatError("model file missing feature_names or num_classes")

    if kind == "nb":
        model = _read_gnb(reader)
    elif kind == "tree":
        model = _read_tree(reader, num_classes, len(feature_names))
    else:
        model = _read_mlp(reader)
    if reader.next_fields() != ["end"]:
        raise ModelFormatError("model file missing trailing 'end'")
    return TrainedModel(
        kind=kind,
        model=model,
        feature_names=feature_names,
        num_classes=num_classes,
        class_names=class_names,
    )


class _LineReader:
    def __init__(self, text: str) -> None:
        self._lines = [line for _, line in iter_data_lines(text)]
        self._pos = 0

    def next_line(self) -> str:
        if self._pos >= len(self._lines):
            raise ModelFormatError("unexpected end of model file")
        line = self._lines[self._pos]
        self._pos += 1
        return line

    def next_fields(self) -> list[str]:
        return self.next_line().split()

    def peek_fields(self) -> list[str]:
        if self._pos >= len(self._lines):
            raise ModelFormatError("unexpected end of model file")
        return self._lines[self._pos].split()

    def next_rest(self, key: str) -> str:
        line = self.next_line()
        if not line.startswith(key + " "):
            raise ModelFormatError(f"expected {key!r} line")
        return line[len(key) + 1 :]

    def read_vector(self, name: str) -> np.ndarray:
        fields = self.next_fields()
        if len(fields) != 2 or fields[0] != name:
            raise ModelFormatError(f"expected vector block {name!r}")
        n = int(fields[1])
        values = self.next_fields()
        if len(values) != n:
            raise ModelFormatError(f"vector {name!r}: expected {n} values")
        return np.array([float(v) for v in values])

    def read_matrix(self, name: str) -> np.ndarray:
        fields = self.next_fields()
        if len(fields) != 3 or fields[0] != name:
            raise ModelFormatError(f"expected matrix block {name!r}")
        rows, cols = int(fields[1]), int(fields[2])
        data = []
        for _ in range(rows):
            values = self.next_fields()
            if len(values) != cols:
                raise ModelFormatError(f"matrix {name!r}: expected {cols} columns")
            data.append([float(v) for v in values])
        return np.array(data).reshape(rows, cols)


def _fmt_vec(vec: np.ndarray) -> str:
    return " ".join(format_float(float(v)) for v in vec)


def _write_vector(lines: list[str], name: str, vec: np.ndarray) -> None:
    lines.append(f"{name} {vec.shape[0]}")
    lines.append(_fmt_vec(vec))


def _write_matrix(lines: list[str], name: str, mat: np.ndarray) -> None:
    lines.append(f"{name} {mat.shape[0]} {mat.shape[1]}")
    for row in mat:
        lines.append(_fmt_vec(row))


def _write_gnb(lines: list[str], model: GnbModel) -> None:
    _write_vector(lines, "priors", model.priors)
    _write_matrix(lines, "means", model.means)
    _write_matrix(lines, "variances", model.variances)


def _read_gnb(reader: _LineReader) -> GnbModel:
    priors = reader.read_vector("priors")
    means = reader.read_matrix("means")
    variances = reader.read_matrix("variances")
    return GnbModel(means=means, variances=variances, priors=priors)


def _write_tree(lines: list[str], model: TreeModel) -> None:
    lines.append(f"n_features {model.n_features}")

    def walk(node: TreeNode) -> None:
        if isinstance(node, TreeLeaf):
            lines.append("leaf " + _fmt_vec(node.distribution))
        else:
            lines.append(f"split {node.feature_index} {format_float(node.threshold)}")
            walk(node.left)
            walk(node.right)

    walk(model.root)


def _read_tree(reader: _LineReader, num_classes: int, n_features: int) -> TreeModel:
    fields = reader.next_fields()
    if len(fields) != 2 or fields[0] != "n_features":
        raise ModelFormatError("tree model missing n_features")
    n_features = int(fields[1])

    def read_node() -> TreeNode:
        fields = reader.next_fields()
        if fields[0] == "leaf":
            dist = np.array([float(v) for v in fields[1:]])
            if dist.shape[0] != num_classes:
                raise ModelFormatError("leaf distribution length mismatch")
            return TreeLeaf(distribution=dist)
        if fields[0] == "split":
            if len(fields) != 3:
                raise ModelFormatError("split line needs feature and threshold")
            feature = int(fields[1])
            threshold = float(fields[2])
            left = read_node()
            right = read_node()
            return TreeSplit(
                feature_index=feature, threshold=threshold, left=left, right=right
            )
        raise ModelFormatError(f"unknown tree node kind {fields[0]!r}")

    root = read_node()
    return TreeModel(root=root, num_classes=num_classes, n_features=n_features)


def _write_mlp(lines: list[str], model: MlpModel) -> None:
    _write_vector(lines, "scaler_min", model.scaler_min)
    _write_vector(lines, "scaler_max", model.scaler_max)
    _write_matrix(lines, "w1", model.w1)
    _write_vector(lines, "b1", model.b1)
    _write_matrix(lines, "w2", model.w2)
    _write_vector(lines, "b2", model.b2)


def _read_mlp(reader: _LineReader) -> MlpModel:
    scaler_min = reader.read_vector("scaler_min")
    scaler_max = reader.read_vector("scaler_max")
    w1 = reader.read_matrix("w1")
    b1 = reader.read_vector("b1")
    w2 = reader.read_matrix("w2")
    b2 = reader.read_vector("b2")
    return MlpModel(
        w1=w1, b1=b1, w2=w2, b2=b2, scaler_min=scaler_min, scaler_max=scaler_max
    )
