"""Classifier families, default hyperparameters, and spec validation."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from ..errors import ConfigError

FAMILIES = (
    "constant",
    "naive_bayes",
    "knn",
    "decision_tree",
    "logistic_regression",
    "sgd_linear",
    "linear_svm",
    "random_forest",
    "gradient_boosting",
    "adaboost",
    "cn2",
    "neural_net",
)

# Column order used for accuracy-matrix reports.
DEFAULT_FAMILY_ORDER = (
    "knn",
    "decision_tree",
    "linear_svm",
    "sgd_linear",
    "random_forest",
    "neural_net",
    "naive_bayes",
    "logistic_regression",
    "gradient_boosting",
    "constant",
    "cn2",
    "adaboost",
)

DISPLAY_NAMES = {
    "knn": "kNN",
    "decision_tree": "Tree",
    "linear_svm": "SVM",
    "sgd_linear": "SGD",
    "random_forest": "Random Forest",
    "neural_net": "Neural Network",
    "naive_bayes": "Naive Bayes",
    "logistic_regression": "Logistic Regression",
    "gradient_boosting": "Gradient Boosting",
    "constant": "Constant",
    "cn2": "CN2 rule inducer",
    "adaboost": "AdaBoost",
}

DEFAULT_PARAMS: dict[str, dict[str, Any]] = {
    "constant": {},
    "naive_bayes": {"alpha": 1.0, "var_floor": 1e-9},
    "knn": {"k": 5},
    "decision_tree": {"max_depth": 12, "min_leaf": 2},
    "logistic_regression": {"l2": 1e-4, "max_epochs": 500, "tol": 1e-6},
    "sgd_linear": {"l2": 1e-4, "learning_rate": 0.01, "epochs": 50},
    "linear_svm": {"l2": 1e-4, "epochs": 100},
    "random_forest": {
        "n_trees": 200,
        "max_depth": 15,
        "min_leaf": 1,
        "bootstrap": True,
        "features_per_split": "sqrt",
    },
    "gradient_boosting": {
        "n_rounds": 100,
        "max_depth": 3,
        "min_leaf": 1,
        "learning_rate": 0.1,
    },
    "adaboost": {"n_rounds": 100},
    "cn2": {"beam_width": 5, "min_coverage": 5, "max_conditions": 5},
    "neural_net": {
        "hidden": (64, 32, 16),
        "learning_rate": 1e-3,
        "batch_size": 64,
        "epochs": 200,
        "beta1": 0.9,
        "beta2": 0.999,
        "adam_eps": 1e-8,
    },
}

_POSITIVE_INT = {
    "k",
    "max_epochs",
    "epochs",
    "n_trees",
    "min_leaf",
    "n_rounds",
    "beam_width",
    "min_coverage",
    "max_conditions",
    "batch_size",
}
_POSITIVE_REAL = {"alpha", "learning_rate", "tol", "var_floor", "adam_eps"}
_NONNEGATIVE_REAL = {"l2"}


def _validate_params(family: str, params: dict[str, Any]) -> dict[str, Any]:
    defaults = DEFAULT_PARAMS[family]
    unknown = set(params) - set(defaults)
    if unknown:
        raise ConfigError(f"{family}: unknown hyperparameters {sorted(unknown)}")
    merged = {**defaults, **params}
    for key, val in merged.items():
        if key in _POSITIVE_INT:
            if not isinstance(val, int) or val < 1:
                raise ConfigError(f"{family}: {key} must be a positive integer, got {val!r}")
        elif key in _POSITIVE_REAL:
            if not isinstance(val, (int, float)) or val <= 0:
                raise ConfigError(f"{family}: {key} must be positive, got {val!r}")
        elif key in _NONNEGATIVE_REAL:
            if not isinstance(val, (int, float)) or val < 0:
                raise ConfigError(f"{family}: {key} must be nonnegative, got {val!r}")
        elif key == "max_depth":
            if val is not None and (not isinstance(val, int) or val < 1):
                raise ConfigError(f"{family}: max_depth must be None or >= 1, got {val!r}")
        elif key == "hidden":
            sizes = tuple(val)
            if not sizes or any(not isinstance(s, int) or s < 1 for s in sizes):
                raise ConfigError(f"{family}: hidden layer sizes must be positive ints")
            merged[key] = sizes
        elif key == "features_per_split":
            if not (val in (None, "sqrt") or (isinstance(val, int) and val >= 1)):
                raise ConfigError(f"{family}: features_per_split must be None, 'sqrt' or >= 1")
        elif key == "beta1" or key == "beta2":
            if not 0 < val < 1:
                raise ConfigError(f"{family}: {key} must be in (0, 1)")
        elif key == "bootstrap":
            if not isinstance(val, bool):
                raise ConfigError(f"{family}: bootstrap must be a bool")
    return merged


@dataclass(frozen=True)
class ClassifierSpec:
    """One model family plus validated hyperparameters and a seed."""

    family: str
    params: dict[str, Any] = field(default_factory=dict)
    seed: int = 0

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ConfigError(f"unknown model family {self.family!r}; valid: {list(FAMILIES)}")
        object.__setattr__(self, "params", _validate_params(self.family, dict(self.params)))

    @property
    def display_name(self) -> str:
        return DISPLAY_NAMES[self.family]


def default_specs(seed: int = 0, families=DEFAULT_FAMILY_ORDER) -> list[ClassifierSpec]:
    return [ClassifierSpec(f, {}, seed) for f in families]
