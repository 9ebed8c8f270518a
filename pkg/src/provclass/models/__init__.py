from .api import (
    TrainedModel,
    load_model,
    model_from_dict,
    model_to_dict,
    predict_labels,
    predict_proba,
    save_model,
    train,
)
from .gradcheck import DIFFERENTIABLE_FAMILIES, numeric_gradient_check
from .spec import (
    DEFAULT_FAMILY_ORDER,
    DEFAULT_PARAMS,
    DISPLAY_NAMES,
    FAMILIES,
    ClassifierSpec,
    default_specs,
)

__all__ = [
    "TrainedModel",
    "train",
    "predict_proba",
    "predict_labels",
    "model_to_dict",
    "model_from_dict",
    "save_model",
    "load_model",
    "numeric_gradient_check",
    "DIFFERENTIABLE_FAMILIES",
    "ClassifierSpec",
    "default_specs",
    "FAMILIES",
    "DEFAULT_FAMILY_ORDER",
    "DEFAULT_PARAMS",
    "DISPLAY_NAMES",
]
