"""Three classifiers behind one train/predict contract.

A trained model is a tagged union (naive Bayes, decision tree, or
perceptron) plus the feature names and class count it was trained with.
Prediction always returns a label index and a posterior distribution;
argmax ties break to the lowest class index.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

import numpy as np

from ..dataset import LabeledDataset
from ..errors import DimensionMismatchError
from .decision_tree import (
    TreeLeaf,
    TreeModel,
    TreeNode,
    TreeParams,
    TreeSplit,
    train_tree,
    tree_posterior,
)
from .naive_bayes import (
    GnbModel,
    gnb_posterior,
    gnb_posterior_direct,
    train_gnb,
)
from .perceptron import (
    MlpModel,
    MlpParams,
    train_mlp,
    mlp_posterior,
)

CLASSIFIER_KINDS = ("nb", "tree", "mlp")

__all__ = [
    "CLASSIFIER_KINDS",
    "GnbModel",
    "MlpModel",
    "MlpParams",
    "TrainedModel",
    "TreeLeaf",
    "TreeModel",
    "TreeNode",
    "TreeParams",
    "TreeSplit",
    "gnb_posterior",
    "gnb_posterior_direct",
    "mlp_posterior",
    "predict",
    "train_model",
    "train_gnb",
    "train_mlp",
    "train_tree",
    "tree_posterior",
]


@dataclass(frozen=True)
class TrainedModel:
    """Tagged union over the classifier kinds, with training metadata."""

    kind: str
    model: Union[GnbModel, TreeModel, MlpModel]
    feature_names: tuple[str, ...]
    num_classes: int
    class_names: Optional[tuple[str, ...]] = None

    def __post_init__(self) -> None:
        if self.kind not in CLASSIFIER_KINDS:
            raise ValueError(f"kind must be one of {CLASSIFIER_KINDS}")
        if self.class_names is not None and len(self.class_names) != self.num_classes:
            raise ValueError("class_names must match num_classes")

    def label_name(self, index: int) -> str:
        if self.class_names is not None:
            return self.class_names[index]
        return str(index)


def train_model(
    kind: str,
    data: LabeledDataset,
    params: Optional[dict] = None,
    seed: int = 0,
    class_names: Optional[tuple[str, ...]] = None,
) -> TrainedModel:
    """Train one classifier kind from a parameter dict.

    Recognized params: tree -> max_depth, min_leaf, use_gain_ratio;
    mlp -> hidden, lr, momentum, epochs. nb takes none. The seed only
    affects the perceptron.
    """
    params = dict(params or {})
    if kind == "nb":
        model: Union[GnbModel, TreeModel, MlpModel] = train_gnb(data)
    elif kind == "tree":
        model = train_tree(data, TreeParams(**params))
    elif kind == "mlp":
        model = train_mlp(data, MlpParams(seed=seed, **params))
    else:
        raise ValueError(f"unknown classifier kind {kind!r}")
    return TrainedModel(
        kind=kind,
        model=model,
        feature_names=data.feature_names,
        num_classes=data.num_classes,
        class_names=class_names,
    )


def predict(trained: TrainedModel, features: np.ndarray) -> tuple[int, np.ndarray]:
    """Label index and posterior for one feature vector."""
    x = np.asarray(features, dtype=np.float64)
    if x.shape != (len(trained.feature_names),):
        raise DimensionMismatchError(
            f"model expects {len(trained.feature_names)} features, got {x.shape}"
        )
    if trained.kind == "nb":
        posterior = gnb_posterior(trained.model, x)
    elif trained.kind == "tree":
        posterior = tree_posterior(trained.model, x)
    else:
        posterior = mlp_posterior(trained.model, x)
    posterior = posterior / posterior.sum()
    return int(np.argmax(posterior)), posterior
