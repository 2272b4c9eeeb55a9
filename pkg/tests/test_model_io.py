import numpy as np
import pytest

from ectshape.classifiers import predict, train_model
from ectshape.classifiers.serialize import load_model, save_model
from ectshape.dataset import LabeledDataset
from ectshape.errors import ModelFormatError
from ectshape.rng import SplitMix64


def training_data(seed=13):
    g = SplitMix64(seed)
    rows, labels = [], []
    for c, (cx, cy, cz) in enumerate(
        ((0.0, 0.0, 1.0), (3.0, 1.0, 2.0), (1.0, 4.0, 0.0))
    ):
        for _ in range(8):
            rows.append([cx + 0.3 * g.normal(), cy + 0.3 * g.normal(), cz])
            labels.append(c)
    return LabeledDataset(
        features=np.array(rows),
        labels=np.array(labels),
        num_classes=3,
        feature_names=("L", "W", "alpha_deg"),
    )


def params_of(trained):
    m = trained.model
    if trained.kind == "nb":
        return (m.priors, m.means, m.variances)
    if trained.kind == "mlp":
        return (m.w1, m.b1, m.w2, m.b2, m.scaler_min, m.scaler_max)
    return ()


@pytest.mark.parametrize("kind,params", [
    ("nb", None),
    ("tree", {"min_leaf": 1}),
    ("mlp", {"epochs": 30}),
])
def test_round_trip_preserves_everything(kind, params):
    data = training_data()
    trained = train_model(kind, data, params, seed=5, class_names=("a", "b", "c"))
    text = save_model(trained)
    loaded = load_model(text)
    assert loaded.kind == kind
    assert loaded.feature_names == trained.feature_names
    assert loaded.num_classes == 3
    assert loaded.class_names == ("a", "b", "c")
    for orig, back in zip(params_of(trained), params_of(loaded)):
        assert np.array_equal(orig, back)  # bit-exact, not approx
    g = SplitMix64(77)
    for _ in range(20):
        x = np.array([g.uniform_in(-1, 4) for _ in range(3)])
        l0, p0 = predict(trained, x)
        l1, p1 = predict(loaded, x)
        assert l0 == l1
        assert np.array_equal(p0, p1)


@pytest.mark.parametrize("kind,params", [
    ("nb", None),
    ("tree", None),
    ("mlp", {"epochs": 10}),
])
def test_resave_is_byte_stable(kind, params):
    trained = train_model(kind, training_data(), params)
    text = save_model(trained)
    assert save_model(load_model(text)) == text


def test_tree_structure_survives_round_trip():
    trained = train_model("tree", training_data(), {"min_leaf": 1})
    assert save_model(load_model(save_model(trained))) == save_model(trained)
    # same routing on every training row
    data = training_data()
    loaded = load_model(save_model(trained))
    for i in range(data.n_rows):
        l0, p0 = predict(trained, data.features[i])
        l1, p1 = predict(loaded, data.features[i])
        assert l0 == l1
        assert np.array_equal(p0, p1)


def test_load_ignores_comments_and_blank_lines():
    trained = train_model("nb", training_data())
    text = save_model(trained)
    decorated = "# provenance header\n\n# another comment\n" + text.replace(
        "num_classes", "# inline note\nnum_classes", 1
    )
    loaded = load_model(decorated)
    assert np.array_equal(loaded.model.means, trained.model.means)


def test_class_names_optional():
    trained = train_model("nb", training_data())  # no class names
    loaded = load_model(save_model(trained))
    assert loaded.class_names is None
    assert loaded.label_name(2) == "2"


def test_magic_line_checked():
    trained = train_model("nb", training_data())
    text = save_model(trained)
    with pytest.raises(ModelFormatError):
        load_model(text.replace("ectshape-model v1", "ectshape-model v2", 1))
    with pytest.raises(ModelFormatError):
        load_model("some random file\n")
    with pytest.raises(ModelFormatError):
        load_model(text.replace("ectshape-model v1 nb", "ectshape-model v1 svm", 1))


def test_truncated_file_rejected():
    text = save_model(train_model("mlp", training_data(), {"epochs": 5}))
    lines = text.splitlines()
    with pytest.raises(ModelFormatError):
        load_model("\n".join(lines[: len(lines) // 2]) + "\n")
    with pytest.raises(ModelFormatError):
        load_model("\n".join(lines[:-1]) + "\n")  # missing 'end'


def test_metadata_required():
    text = save_model(train_model("nb", training_data()))
    without = "\n".join(
        line for line in text.splitlines() if not line.startswith("feature_names")
    )
    with pytest.raises(ModelFormatError):
        load_model(without + "\n")


def test_wrong_block_rejected():
    text = save_model(train_model("nb", training_data()))
    with pytest.raises(ModelFormatError):
        load_model(text.replace("priors", "weights", 1))


def test_vector_length_mismatch_rejected():
    text = save_model(train_model("nb", training_data()))
    with pytest.raises(ModelFormatError):
        load_model(text.replace("priors 3", "priors 4", 1))


def test_unknown_tree_node_rejected():
    text = save_model(train_model("tree", training_data()))
    with pytest.raises(ModelFormatError):
        load_model(text.replace("split", "branch", 1))
