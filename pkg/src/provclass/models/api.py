"""Uniform train/predict contract over the twelve classifier families."""

from __future__ import annotations

import json
import warnings
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from ..errors import MissingValuesError, SchemaError, UnsupportedError
from ..tabular import (
    ColumnKind,
    DataTable,
    EncodingRecipe,
    apply_encoder,
    fit_encoder,
)
from . import ensemble, linear, neural, rules, simple
from .spec import ClassifierSpec
from .tree import Tree, build_tree, predict_tree

MODEL_FORMAT_VERSION = 1

# How each family sees its inputs: standardized one-hot, plain one-hot, the
# raw table, or nothing at all.
_INPUT_MODE = {
    "constant": "none",
    "naive_bayes": "table",
    "cn2": "table",
    "knn": "standardized",
    "logistic_regression": "standardized",
    "sgd_linear": "standardized",
    "linear_svm": "standardized",
    "neural_net": "standardized",
    "decision_tree": "plain",
    "random_forest": "plain",
    "gradient_boosting": "plain",
    "adaboost": "plain",
}


@dataclass(frozen=True)
class DecisionTreeState:
    tree: Tree

    def predict_positive(self, X: np.ndarray) -> np.ndarray:
        return predict_tree(self.tree, X)

    def to_dict(self) -> dict:
        return {"tree": self.tree.to_dict()}

    @classmethod
    def from_dict(cls, d: dict) -> "DecisionTreeState":
        return cls(Tree.from_dict(d["tree"]))


_STATE_CLASSES = {
    "constant": simple.ConstantState,
    "naive_bayes": simple.NaiveBayesState,
    "knn": simple.KNNState,
    "decision_tree": DecisionTreeState,
    "logistic_regression": linear.LinearState,
    "sgd_linear": linear.LinearState,
    "linear_svm": linear.LinearState,
    "random_forest": ensemble.RandomForestState,
    "gradient_boosting": ensemble.GradientBoostingState,
    "adaboost": ensemble.AdaBoostState,
    "cn2": rules.CN2State,
    "neural_net": neural.NeuralNetState,
}


@dataclass(frozen=True)
class TrainedModel:
    """Immutable fitted classifier plus the encoding recipe it was trained with."""

    spec: ClassifierSpec
    state: object
    state_family: str  # family of `state` ("constant" when training degenerated)
    recipe: EncodingRecipe | None
    feature_kinds: tuple[tuple[str, str], ...]  # (name, kind) at training time
    positive_label: str
    negative_label: str | None
    target: str


def _check_schema(model: TrainedModel, table: DataTable) -> None:
    for name, kind in model.feature_kinds:
        try:
            col = table.column(name)
        except KeyError:
            raise SchemaError(f"input is missing column {name!r}") from None
        if col.kind.value != kind:
            raise SchemaError(
                f"column {name!r} has kind {col.kind.value}, model expects {kind}"
            )
        if col.n_missing:
            raise MissingValuesError(f"column {name!r} has missing cells; impute first")


def train(spec: ClassifierSpec, table: DataTable) -> TrainedModel:
    """Fit one classifier; deterministic given ``spec.seed``.

    Training tables containing a single target class yield a constant
    predictor for that class, whatever the family.
    """
    if table.has_missing_features():
        raise MissingValuesError("training table must be imputed")
    if table.row_count == 0:
        raise UnsupportedError("cannot train on an empty table")
    labels = sorted(set(table.target_column.values.tolist()))
    if len(labels) > 2:
        raise UnsupportedError(f"only binary targets are supported, got {labels}")
    feature_kinds = tuple(
        (n, table.column(n).kind.value) for n in table.feature_names
    )
    negative = next((l for l in labels if l != table.positive_label), None)

    y01 = table.positive_mask().astype(float)
    family = spec.family
    single_class = len(labels) == 1
    if single_class and family != "constant":
        warnings.warn(
            f"{family}: training data has a single class {labels[0]!r}; "
            "falling back to a constant predictor",
            stacklevel=2,
        )
    if single_class or family == "constant":
        state: object = simple.fit_constant(y01)
        state_family = "constant"
        recipe = None
    else:
        mode = _INPUT_MODE[family]
        recipe = None
        X = None
        if mode in ("standardized", "plain"):
            recipe = fit_encoder(table, standardize=(mode == "standardized"))
            X = apply_encoder(recipe, table).data
        rng = np.random.default_rng(spec.seed)
        p = spec.params
        if family == "naive_bayes":
            state = simple.fit_naive_bayes(table, p)
        elif family == "cn2":
            state = rules.fit_cn2(table, p)
        elif family == "knn":
            state = simple.fit_knn(X, y01, p)
        elif family == "decision_tree":
            state = DecisionTreeState(
                build_tree(X, y01, task="gini", max_depth=p["max_depth"], min_leaf=p["min_leaf"])
            )
        elif family == "logistic_regression":
            state = linear.fit_logistic_regression(X, y01, p)
        elif family == "sgd_linear":
            state = linear.fit_sgd_linear(X, y01, p, rng)
        elif family == "linear_svm":
            state = linear.fit_linear_svm(X, y01, p, rng)
        elif family == "random_forest":
            state = ensemble.fit_random_forest(X, y01, p, spec.seed)
        elif family == "gradient_boosting":
            state = ensemble.fit_gradient_boosting(X, y01, p)
        elif family == "adaboost":
            state = ensemble.fit_adaboost(X, y01, p)
        elif family == "neural_net":
            state = neural.fit_neural_net(X, y01, p, rng)
        else:  # pragma: no cover
            raise UnsupportedError(family)
        state_family = family

    return TrainedModel(
        spec=spec,
        state=state,
        state_family=state_family,
        recipe=recipe,
        feature_kinds=feature_kinds,
        positive_label=table.positive_label,
        negative_label=negative,
        target=table.target,
    )


def predict_proba(model: TrainedModel, rows: DataTable) -> np.ndarray:
    """Per-row probability of the positive class, clipped to [0, 1]."""
    _check_schema(model, rows)
    mode = _INPUT_MODE[model.state_family]
    if mode == "none":
        p = model.state.predict_positive(rows)
    elif mode == "table":
        p = model.state.predict_positive(rows)
    else:
        X = apply_encoder(model.recipe, rows).data
        p = model.state.predict_positive(X)
    return np.clip(np.asarray(p, dtype=float), 0.0, 1.0)


def predict_labels(model: TrainedModel, rows: DataTable) -> list[str]:
    """Positive iff probability >= 0.5 (ties go to the positive class)."""
    p = predict_proba(model, rows)
    out = []
    for prob in p:
        if prob >= 0.5:
            out.append(model.positive_label)
        else:
            if model.negative_label is None:
                raise UnsupportedError(
                    "model was trained on a single class; no negative label is known"
                )
            out.append(model.negative_label)
    return out


def model_to_dict(model: TrainedModel) -> dict:
    return {
        "format_version": MODEL_FORMAT_VERSION,
        "family": model.spec.family,
        "params": {
            k: (list(v) if isinstance(v, tuple) else v) for k, v in model.spec.params.items()
        },
        "seed": model.spec.seed,
        "state_family": model.state_family,
        "state": model.state.to_dict(),
        "recipe": model.recipe.to_dict() if model.recipe else None,
        "feature_kinds": [[n, k] for n, k in model.feature_kinds],
        "positive_label": model.positive_label,
        "negative_label": model.negative_label,
        "target": model.target,
    }


def model_from_dict(doc: dict) -> TrainedModel:
    version = doc.get("format_version")
    if version != MODEL_FORMAT_VERSION:
        raise SchemaError(
            f"model format version {version!r} not supported (expected {MODEL_FORMAT_VERSION})"
        )
    params = {
        k: (tuple(v) if k == "hidden" else v) for k, v in doc["params"].items()
    }
    spec = ClassifierSpec(doc["family"], params, int(doc["seed"]))
    state_cls = _STATE_CLASSES[doc["state_family"]]
    return TrainedModel(
        spec=spec,
        state=state_cls.from_dict(doc["state"]),
        state_family=doc["state_family"],
        recipe=EncodingRecipe.from_dict(doc["recipe"]) if doc["recipe"] else None,
        feature_kinds=tuple((n, k) for n, k in doc["feature_kinds"]),
        positive_label=doc["positive_label"],
        negative_label=doc["negative_label"],
        target=doc["target"],
    )


def save_model(model: TrainedModel, path: str | Path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(model_to_dict(model), fh)


def load_model(path: str | Path) -> TrainedModel:
    with open(path, encoding="utf-8") as fh:
        return model_from_dict(json.load(fh))
