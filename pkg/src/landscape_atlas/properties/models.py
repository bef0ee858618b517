"""Training, prediction and grouped cross-validation for the eight
high-level landscape properties."""
from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from ..ela.features import FEATURE_NAMES, FeatureVector
from ..errors import ManifestMismatch, SingleClass, TooFewGroups, TooFewRows
from .forest import Tree, forest_votes, grow_forest

MODEL_SCHEMA_VERSION = 1
DEFAULT_TREES = 200

#: The eight property names with their fixed label vocabularies.  The
#: vocabulary order is the tie-breaking order for predictions.
PROPERTY_VOCABULARIES: dict[str, tuple[str, ...]] = {
    "multimodality": ("none", "low", "medium", "high"),
    "global_structure": ("none", "weak", "strong"),
    "separability": ("none", "partial", "full"),
    "variable_scaling": ("none", "low", "medium", "high"),
    "search_space_homogeneity": ("low", "medium", "high"),
    "basin_size_homogeneity": ("none", "low", "medium", "high"),
    "global_local_contrast": ("none", "low", "medium", "high"),
    "funnel": ("yes", "no"),
}

PROPERTY_NAMES: tuple[str, ...] = tuple(PROPERTY_VOCABULARIES)


@dataclass(frozen=True)
class LabelledRow:
    features: FeatureVector
    label: str
    group: str


@dataclass(frozen=True)
class PropertyModel:
    property_name: str
    vocabulary: tuple[str, ...]
    manifest: tuple[str, ...]
    train_seed: int
    trees: tuple[Tree, ...]
    training_accuracy: float

    def to_json(self, metadata: dict | None = None) -> str:
        doc = {
            "schema_version": MODEL_SCHEMA_VERSION,
            "property": self.property_name,
            "vocabulary": list(self.vocabulary),
            "manifest": list(self.manifest),
            "train_seed": self.train_seed,
            "n_trees": len(self.trees),
            "training_accuracy": self.training_accuracy,
            "trees": [t.to_dict() for t in self.trees],
        }
        if metadata:
            doc["metadata"] = metadata
        return json.dumps(doc, sort_keys=True, separators=(",", ":"))

    @staticmethod
    def from_json(text: str) -> "PropertyModel":
        doc = json.loads(text)
        if doc.get("schema_version") != MODEL_SCHEMA_VERSION:
            raise ValueError(
                f"unsupported model schema {doc.get('schema_version')!r}")
        return PropertyModel(
            property_name=doc["property"],
            vocabulary=tuple(doc["vocabulary"]),
            manifest=tuple(doc["manifest"]),
            train_seed=doc["train_seed"],
            trees=tuple(Tree.from_dict(t) for t in doc["trees"]),
            training_accuracy=doc["training_accuracy"],
        )


@dataclass(frozen=True)
class Prediction:
    label: str
    vote_shares: dict[str, float]


@dataclass(frozen=True)
class FoldResult:
    group: str
    n_test: int
    accuracy: float


@dataclass(frozen=True)
class CVResult:
    property_name: str
    folds: tuple[FoldResult, ...]
    mean_accuracy: float


def vocabulary_for(property_name: str,
                   labels: Sequence[str]) -> tuple[str, ...]:
    """Fixed vocabulary for known properties; sorted distinct labels for
    ad-hoc ones (e.g. permutation-baseline experiments)."""
    vocab = PROPERTY_VOCABULARIES.get(property_name)
    if vocab is None:
        return tuple(sorted(set(labels)))
    unknown = set(labels) - set(vocab)
    if unknown:
        raise ValueError(
            f"labels {sorted(unknown)} outside the {property_name} vocabulary")
    return vocab


def _canonical_order(rows: Sequence[LabelledRow]) -> list[LabelledRow]:
    # Sorting before training makes the model independent of row order.
    return sorted(rows, key=lambda r: (r.group, r.label,
                                       tuple(r.features.values.values())))


def train(rows: Sequence[LabelledRow], property_name: str, train_seed: int,
          n_trees: int = DEFAULT_TREES) -> PropertyModel:
    if len(rows) < 10:
        raise TooFewRows(f"need >= 10 training rows, got {len(rows)}")
    labels = [r.label for r in rows]
    if len(set(labels)) < 2:
        raise SingleClass("training labels contain a single distinct value")
    vocab = vocabulary_for(property_name, labels)
    ordered = _canonical_order(rows)
    X = np.stack([r.features.as_array() for r in ordered])
    y = np.array([vocab.index(r.label) for r in ordered])
    trees = grow_forest(X, y, len(vocab), train_seed, n_trees)
    hits = sum(
        _vote_label(trees, X[i], vocab) == ordered[i].label
        for i in range(len(ordered))
    )
    return PropertyModel(
        property_name=property_name,
        vocabulary=vocab,
        manifest=FEATURE_NAMES,
        train_seed=train_seed,
        trees=trees,
        training_accuracy=hits / len(ordered),
    )


def _vote_label(trees: tuple[Tree, ...], x: np.ndarray,
                vocab: tuple[str, ...]) -> str:
    shares = forest_votes(trees, x, len(vocab))
    best = max(range(len(vocab)), key=lambda j: (shares[j], -j))
    return vocab[best]


def _feature_array(model: PropertyModel,
                   fv: FeatureVector | Mapping[str, float]) -> np.ndarray:
    values = fv.values if isinstance(fv, FeatureVector) else fv
    if tuple(values.keys()) != model.manifest:
        raise ManifestMismatch("feature names do not match the model manifest")
    return np.array([float(values[n]) for n in model.manifest])


def predict(model: PropertyModel,
            fv: FeatureVector | Mapping[str, float]) -> Prediction:
    x = _feature_array(model, fv)
    shares = forest_votes(model.trees, x, len(model.vocabulary))
    best = max(range(len(model.vocabulary)), key=lambda j: (shares[j], -j))
    return Prediction(
        label=model.vocabulary[best],
        vote_shares={v: float(s) for v, s in zip(model.vocabulary, shares)},
    )


def lofo_cv(rows: Sequence[LabelledRow], property_name: str,
            train_seed: int = 0, n_trees: int = DEFAULT_TREES) -> CVResult:
    """Leave-one-group-out cross-validation: every fold withholds all
    rows of one source group, so a group never predicts itself."""
    groups = sorted({r.group for r in rows})
    if len(groups) < 3:
        raise TooFewGroups(f"need >= 3 source groups, got {len(groups)}")
    folds = []
    for g in groups:
        test = [r for r in rows if r.group == g]
        rest = [r for r in rows if r.group != g]
        model = train(rest, property_name, train_seed, n_trees)
        hits = sum(predict(model, r.features).label == r.label for r in test)
        folds.append(FoldResult(group=g, n_test=len(test),
                                accuracy=hits / len(test)))
    mean = sum(f.accuracy for f in folds) / len(folds)
    return CVResult(property_name=property_name, folds=tuple(folds),
                    mean_accuracy=mean)
