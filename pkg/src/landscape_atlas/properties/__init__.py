from .corpus import (
    CORPUS_INSTANCE_SEEDS,
    build_labelled_rows,
    labelled_functions,
    load_labels,
)
from .models import (
    DEFAULT_TREES,
    PROPERTY_NAMES,
    PROPERTY_VOCABULARIES,
    CVResult,
    FoldResult,
    LabelledRow,
    Prediction,
    PropertyModel,
    lofo_cv,
    predict,
    train,
    vocabulary_for,
)

__all__ = [
    "CORPUS_INSTANCE_SEEDS",
    "CVResult",
    "DEFAULT_TREES",
    "FoldResult",
    "LabelledRow",
    "PROPERTY_NAMES",
    "PROPERTY_VOCABULARIES",
    "Prediction",
    "PropertyModel",
    "build_labelled_rows",
    "labelled_functions",
    "load_labels",
    "lofo_cv",
    "predict",
    "train",
    "vocabulary_for",
]
